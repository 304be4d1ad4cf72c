#pragma once

// Positive-spanning certificates for finite direction sets.
//
// D positively spans span(D) exactly when some gamma >= 0 satisfies
// D gamma = -D 1, i.e. the all-ones combination can be cancelled by a
// nonnegative one. The check runs as a nonnegative least-squares problem,
// which hands back either the witness gamma or the infeasibility residual.

#include "pspankit/types.hpp"

#include <optional>

namespace pspankit {

struct SpanningCertificate {
  bool is_positive_spanning = false;
  Vector gamma;             // present (size q) iff is_positive_spanning
  double residual = 0.0;    // ||D gamma + D 1|| at the NNLS optimum
  double threshold = 0.0;   // feas_tol * (||D 1|| + 1)
  std::size_t span_dim = 0;
};

SpanningCertificate is_positive_spanning(const DirectionSet& d, const Tolerances& tol = {});

struct Membership {
  bool member = false;
  Vector lambda;  // NNLS minimizer of ||D lambda - v||
  double residual = 0.0;
};

/// v in pspan(D) within feas_tol * (||v|| + 1).
Membership pspan_membership(const DirectionSet& d, const Vector& v, const Tolerances& tol = {});

struct IndependenceReport {
  bool positively_independent = true;
  IndexList redundant;  // i with d_i in pspan(D \ {d_i})
};

IndependenceReport is_positively_independent(const DirectionSet& d, const Tolerances& tol = {});

enum class ExtendMode { single_vector, mirror_basis };

/// Appends w = -(sum of a span basis) or the negated span basis.
DirectionSet extend_to_positive_spanning(const DirectionSet& d, ExtendMode mode, const Tolerances& tol = {});

/// First index with v^T d_i > active_tol.
std::optional<std::size_t> find_ascent_direction(const DirectionSet& d, const Vector& v, const Tolerances& tol = {});

/// Delta_D = max_j ||d_j||.
double radius(const DirectionSet& d);

}  // namespace pspankit
