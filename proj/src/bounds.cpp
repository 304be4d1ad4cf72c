#include "pspankit/bounds.hpp"

#include "pspankit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace pspankit {

namespace {

constexpr double kAntipodalTol = 1e-10;

void check_common(const BoundInputs& in) {
  if (!(in.cm_value > 0.0)) {
    throw Error(ErrorCode::nonpositive_cosine_measure, "cosine measure is not positive; the bound is undefined");
  }
  if (!(in.delta > 0.0) || !std::isfinite(in.delta)) throw Error(ErrorCode::invalid_input, "delta must be positive");
}

}  // namespace

double first_order_bound(const BoundInputs& in) {
  check_common(in);
  if (!in.lip_grad) throw Error(ErrorCode::invalid_input, "first-order bound needs the gradient Lipschitz constant");
  if (*in.lip_grad < 0.0) throw Error(ErrorCode::invalid_input, "Lipschitz constants must be nonnegative");
  return 0.5 * *in.lip_grad * in.delta / in.cm_value;
}

std::vector<double> symmetry_factors(const DirectionSet& d) {
  const Matrix dn = d.normalized();
  const Vector norms = d.matrix().colwise().norm();
  std::vector<double> alpha(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < d.size(); ++j) {
      const auto ii = static_cast<Eigen::Index>(i);
      const auto jj = static_cast<Eigen::Index>(j);
      if (std::abs(dn.col(ii).dot(dn.col(jj)) + 1.0) <= kAntipodalTol) best = std::min(best, norms(jj) / norms(ii));
    }
    if (!std::isfinite(best)) {
      throw Error(ErrorCode::asymmetric_set, "direction " + std::to_string(i) + " has no antipodal partner");
    }
    alpha[i] = best;
  }
  return alpha;
}

double second_order_bound(const BoundInputs& in, std::span<const double> alpha) {
  check_common(in);
  if (!in.lip_hess) throw Error(ErrorCode::invalid_input, "second-order bound needs the Hessian Lipschitz constant");
  if (*in.lip_hess < 0.0) throw Error(ErrorCode::invalid_input, "Lipschitz constants must be nonnegative");
  double amax = 0.0;
  if (!alpha.empty()) {
    amax = *std::max_element(alpha.begin(), alpha.end());
  } else if (in.alpha_max) {
    amax = *in.alpha_max;
  } else {
    throw Error(ErrorCode::invalid_input, "second-order bound needs the symmetry factors");
  }
  if (!(amax > 0.0)) throw Error(ErrorCode::invalid_input, "alpha_max must be positive");
  return amax * *in.lip_hess * in.delta * in.delta / (3.0 * in.cm_value);
}

BoundReport evaluate_bounds(const BoundInputs& in, std::span<const double> alpha) {
  BoundReport rep;
  rep.inputs = in;
  if (!alpha.empty()) rep.inputs.alpha_max = *std::max_element(alpha.begin(), alpha.end());
  if (in.lip_grad) rep.first_order_bound = first_order_bound(in);
  if (in.lip_hess) rep.second_order_bound = second_order_bound(in, alpha);
  return rep;
}

FailedPollAdvice failed_poll_advice(const DirectionSet& d, const Tolerances& tol, const EnumerationBudget& budget) {
  if (is_positive_spanning(d, tol).is_positive_spanning) {
    throw Error(ErrorCode::precondition_violated, "the set already positively spans its span");
  }
  const IndexList basis = linalg::span_basis(d, tol);
  Vector sum = Vector::Zero(static_cast<Eigen::Index>(d.dim()));
  for (std::size_t j : basis) sum += d.column(j);

  FailedPollAdvice adv;
  adv.w = -radius(d) * sum / sum.norm();

  const DirectionSet single = d.appended(adv.w);
  adv.single = single.matrix();
  adv.single_certificate = is_positive_spanning(single, tol);
  adv.single_cosine = compute_cosine_measure_span(single, tol, budget);

  const DirectionSet mirrored = d.appended(-d.matrix());
  adv.mirrored = mirrored.matrix();
  adv.mirrored_certificate = is_positive_spanning(mirrored, tol);
  adv.mirrored_cosine = compute_cosine_measure_span(mirrored, tol, budget);
  return adv;
}

}  // namespace pspankit
