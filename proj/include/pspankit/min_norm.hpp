#pragma once

#include "pspankit/types.hpp"

namespace pspankit {

struct MinNormResult {
  Vector point;         // p* = P * weights
  Vector weights;       // barycentric coordinates over all columns, >= 0, sum 1
  double norm = 0.0;    // ||p*||
  double gap = 0.0;     // ||p*||^2 - min_j p*^T P_j   (>= 0 at optimality)
  IndexList support;    // columns with positive weight
  int iterations = 0;
  bool converged = false;
};

/// Wolfe's minimum-norm-point algorithm over conv{columns of P}.
///
/// With gap = ||x||^2 - min_j x^T p_j, the distance error is at most
/// gap / ||x||; iteration stops once that bound is <= gap_tol * max(1, max_j ||p_j||)
/// or x sits at the origin to roundoff.
MinNormResult min_norm_point(const Matrix& points, double gap_tol = 1e-12, int max_iterations = 0);

}  // namespace pspankit
