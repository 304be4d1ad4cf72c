#pragma once

// JSON views of library results. Keys keep insertion order so reports are
// byte-stable; doubles print as shortest round-trip decimals.

#include "pspankit/bounds.hpp"
#include "pspankit/cosine.hpp"
#include "pspankit/oracle.hpp"
#include "pspankit/spanning.hpp"

#include <json.hpp>

namespace pspankit::cli {

using Json = nlohmann::ordered_json;

Json to_json(const Vector& v);
Json rows_json(const Matrix& columns);  // one row per column
Json to_json(const IndexList& idx);
Json to_json(const SpanningCertificate& c);
Json to_json(const IndependenceReport& r);
Json to_json(const Tolerances& t, std::size_t rows, std::size_t cols);

/// all_vectors=false keeps only the first cosine vector and basis.
Json to_json(const CosineReport& r, bool all_vectors);
Json to_json(const FailedPollAdvice& a);
Json to_json(const oracle::SampledCosine& s);
Json to_json(const oracle::KktMinNorm& k);

}  // namespace pspankit::cli
