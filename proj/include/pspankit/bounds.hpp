#pragma once

// Gradient error bounds after a failed poll step of a directional direct
// search, and the two ways of completing a set that does not positively span.

#include "pspankit/cosine.hpp"
#include "pspankit/spanning.hpp"
#include "pspankit/types.hpp"

#include <optional>
#include <span>
#include <vector>

namespace pspankit {

struct BoundInputs {
  double cm_value = 0.0;  // CM_D(D)
  double delta = 0.0;     // Delta_D
  std::optional<double> lip_grad;
  std::optional<double> lip_hess;
  std::optional<double> alpha_max;
};

struct BoundReport {
  BoundInputs inputs;
  std::optional<double> first_order_bound;
  std::optional<double> second_order_bound;
};

/// L_grad * delta / (2 cm).
double first_order_bound(const BoundInputs& in);

/// alpha_d for every d, where -alpha_d d is in D (cosine within 1e-10 of -1).
/// Picks the smallest ratio when several partners exist. Throws asymmetric_set.
std::vector<double> symmetry_factors(const DirectionSet& d);

/// alpha_max * L_hess * delta^2 / (3 cm). alpha_max is taken from `alpha` when
/// nonempty, otherwise from in.alpha_max.
double second_order_bound(const BoundInputs& in, std::span<const double> alpha = {});

/// Evaluates whichever bounds the supplied constants allow.
BoundReport evaluate_bounds(const BoundInputs& in, std::span<const double> alpha = {});

struct FailedPollAdvice {
  Vector w;  // -Delta_D * sum(b) / |sum(b)| over a span basis b of D
  Matrix single;  // D with w appended
  SpanningCertificate single_certificate;
  CosineReport single_cosine;
  Matrix mirrored;  // D with -D appended
  SpanningCertificate mirrored_certificate;
  CosineReport mirrored_cosine;
};

/// Requires that D does not positively span span(D) (precondition_violated otherwise).
FailedPollAdvice failed_poll_advice(const DirectionSet& d, const Tolerances& tol = {},
                                    const EnumerationBudget& budget = {});

}  // namespace pspankit
