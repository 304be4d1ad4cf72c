#include "pspankit/nnls.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace pspankit {

namespace {

// Unconstrained least squares restricted to the passive columns.
Vector passive_solve(const Matrix& a, const Vector& b, const std::vector<bool>& passive) {
  std::vector<Eigen::Index> cols;
  for (std::size_t j = 0; j < passive.size(); ++j) {
    if (passive[j]) cols.push_back(static_cast<Eigen::Index>(j));
  }
  Vector z = Vector::Zero(a.cols());
  if (cols.empty()) return z;
  Matrix ap(a.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) ap.col(static_cast<Eigen::Index>(k)) = a.col(cols[k]);
  const Vector s = ap.completeOrthogonalDecomposition().solve(b);
  for (std::size_t k = 0; k < cols.size(); ++k) z(cols[k]) = s(static_cast<Eigen::Index>(k));
  return z;
}

}  // namespace

NnlsResult nnls(const Matrix& a, const Vector& b, int max_iterations) {
  const Eigen::Index n = a.cols();
  if (a.rows() != b.size()) throw Error(ErrorCode::invalid_input, "nnls: dimension mismatch");
  if (max_iterations <= 0) max_iterations = static_cast<int>(3 * n + 30);

  NnlsResult res;
  res.x = Vector::Zero(n);
  if (n == 0) {
    res.residual = b.norm();
    res.converged = true;
    return res;
  }

  const double anorm = a.cwiseAbs().colwise().sum().maxCoeff();
  const double tol = 10.0 * std::numeric_limits<double>::epsilon() * anorm *
                     static_cast<double>(std::max(a.rows(), n));

  std::vector<bool> passive(static_cast<std::size_t>(n), false);
  std::vector<bool> banned(static_cast<std::size_t>(n), false);
  Vector& x = res.x;
  Vector w = a.transpose() * (b - a * x);

  for (int iter = 0; iter < max_iterations; ++iter) {
    res.iterations = iter + 1;
    Eigen::Index t = -1;
    double wmax = tol;
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto ju = static_cast<std::size_t>(j);
      if (!passive[ju] && !banned[ju] && w(j) > wmax) {
        wmax = w(j);
        t = j;
      }
    }
    if (t < 0) {
      res.converged = true;
      break;
    }
    passive[static_cast<std::size_t>(t)] = true;

    // Inner loop: step back toward feasibility until the passive solution is positive.
    Vector z = passive_solve(a, b, passive);
    if (z(t) <= 0.0) {
      // Column t cannot enter with a positive weight; numerically degenerate.
      passive[static_cast<std::size_t>(t)] = false;
      banned[static_cast<std::size_t>(t)] = true;
      continue;
    }
    for (int inner = 0; inner < 3 * n + 3; ++inner) {
      bool feasible = true;
      double alpha = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && z(j) <= 0.0) {
          feasible = false;
          alpha = std::min(alpha, x(j) / (x(j) - z(j)));
        }
      }
      if (feasible) break;
      x += alpha * (z - x);
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && x(j) <= tol) {
          passive[static_cast<std::size_t>(j)] = false;
          x(j) = 0.0;
        }
      }
      z = passive_solve(a, b, passive);
    }
    x = z.cwiseMax(0.0);
    std::fill(banned.begin(), banned.end(), false);
    w = a.transpose() * (b - a * x);
  }

  res.residual = (a * x - b).norm();
  return res;
}

}  // namespace pspankit
