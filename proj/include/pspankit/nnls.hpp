#pragma once

#include "pspankit/types.hpp"

namespace pspankit {

struct NnlsResult {
  Vector x;               // minimizer, x >= 0
  double residual = 0.0;  // ||A x - b||
  int iterations = 0;
  bool converged = false;
};

/// Lawson-Hanson active-set solver for min ||A x - b|| subject to x >= 0.
NnlsResult nnls(const Matrix& a, const Vector& b, int max_iterations = 0);

}  // namespace pspankit
