#pragma once

// Input documents for the command-line tool.
//
// JSON:  {"vectors": [[...], ...], "subspace": [[...], ...],
//         "tolerances": {"rank_tol": .., "zero_tol": .., "active_tol": ..,
//                        "feas_tol": .., "gap_tol": ..},
//         "budget": {"max_bases": N}}
// CSV:   one vector per line, comma separated; blank lines and '#' comments skipped.
//
// Format is chosen by extension (.json / .csv); stdin ("-") is sniffed.

#include "pspankit/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pspankit::cli {

/// Malformed input; what() carries a source:line:column prefix when known.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Overrides {
  std::optional<double> rank_tol;
  std::optional<double> zero_tol;
  std::optional<double> active_tol;
  std::optional<double> feas_tol;
  std::optional<double> gap_tol;
  std::optional<std::uint64_t> max_bases;

  void apply_to(Tolerances& tol, EnumerationBudget& budget) const;
};

using Rows = std::vector<std::vector<double>>;

struct InputDocument {
  std::string source;
  Rows vectors;
  std::vector<std::string> where;  // location of each vector, for diagnostics
  std::optional<Rows> subspace;
  Overrides overrides;
};

InputDocument read_input(const std::string& path, std::istream& stdin_stream);

/// Rows of a bare matrix file (JSON array, JSON object with "subspace" or
/// "vectors", or CSV), used for --subspace.
Rows read_rows(const std::string& path, std::istream& stdin_stream);

/// PSPANKIT_RANK_TOL, PSPANKIT_ZERO_TOL, PSPANKIT_ACTIVE_TOL, PSPANKIT_FEAS_TOL,
/// PSPANKIT_GAP_TOL, PSPANKIT_MAX_BASES.
Overrides environment_overrides();

/// Builds the direction set, rejecting short or near-zero rows by location.
DirectionSet to_directions(const InputDocument& doc, const Tolerances& tol);

/// Subspace spanned by the given rows (orthonormalized).
Subspace to_subspace(const Rows& rows, std::size_t n, const Tolerances& tol);

}  // namespace pspankit::cli
