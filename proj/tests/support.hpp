#pragma once

// Shared generators and brute-force references for the test programs.

#include "pspankit/oracle.hpp"
#include "pspankit/types.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace testsupport {

using pspankit::DirectionSet;
using pspankit::IndexList;
using pspankit::Matrix;
using pspankit::Vector;

inline Matrix uniform_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols, double lo = -1.0,
                             double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    do {
      for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = u(rng);
    } while (m.col(j).norm() <= 1e-6);
  }
  return m;
}

inline Vector gaussian_unit(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  Vector v(n);
  do {
    for (Eigen::Index i = 0; i < n; ++i) v(i) = g(rng);
  } while (v.norm() < 1e-8);
  return v.normalized();
}

inline Matrix random_orthonormal(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  Matrix a(n, n);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = g(rng);
  Eigen::HouseholderQR<Matrix> qr(a);
  return qr.householderQ() * Matrix::Identity(n, n);
}

inline DirectionSet rows(std::initializer_list<std::initializer_list<double>> r) {
  std::vector<std::vector<double>> v;
  for (auto& row : r) v.emplace_back(row);
  return DirectionSet::from_rows(v);
}

inline Matrix maximal_basis(Eigen::Index n) {
  Matrix m = Matrix::Zero(n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m(i, 2 * i) = 1.0;
    m(i, 2 * i + 1) = -1.0;
  }
  return m;
}

/// Exact cosine measure for unit-normalizable columns spanning R^2: the
/// bisector of the widest angular gap between consecutive directions.
inline double circle_gap_measure(const Matrix& d) {
  std::vector<double> ang;
  for (Eigen::Index j = 0; j < d.cols(); ++j) ang.push_back(std::atan2(d(1, j), d(0, j)));
  std::sort(ang.begin(), ang.end());
  double gap = ang.front() + 2.0 * std::numbers::pi - ang.back();
  for (std::size_t i = 1; i < ang.size(); ++i) gap = std::max(gap, ang[i] - ang[i - 1]);
  return std::cos(gap / 2.0);
}

/// Dense evaluation of the minimax over a fine grid of the unit circle.
inline double circle_grid_measure(const Matrix& d, int points) {
  const Matrix dn = d.colwise().normalized();
  double best = 2.0;
  for (int t = 0; t < points; ++t) {
    const double a = 2.0 * std::numbers::pi * t / points;
    const Vector u = (Vector(2) << std::cos(a), std::sin(a)).finished();
    best = std::min(best, (dn.transpose() * u).maxCoeff());
  }
  return best;
}

template <typename F>
void for_each_subset(std::size_t q, std::size_t k, F&& f) {
  IndexList idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > q) return;
  while (true) {
    f(idx);
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == q - k + pos - 1) --pos;
    if (pos == 0) return;
    ++idx[pos - 1];
    for (std::size_t a = pos; a < k; ++a) idx[a] = idx[a - 1] + 1;
  }
}

/// For unit columns positively spanning R^k: distance from the origin to
/// the boundary of their convex hull, found as the smallest min-norm point
/// over every k-subset whose affine hyperplane supports the whole hull.
inline double facet_distance_measure(const Matrix& w) {
  const auto k = static_cast<std::size_t>(w.rows());
  const auto q = static_cast<std::size_t>(w.cols());
  double best = 2.0;
  for_each_subset(q, k, [&](const IndexList& idx) {
    Matrix f(w.rows(), static_cast<Eigen::Index>(k));
    for (std::size_t a = 0; a < k; ++a) f.col(static_cast<Eigen::Index>(a)) = w.col(static_cast<Eigen::Index>(idx[a]));
    // hyperplane a^T x = 1 through the subset
    Eigen::FullPivLU<Matrix> lu(f.transpose());
    if (!lu.isInvertible()) return;
    const Vector a = lu.solve(Vector::Ones(static_cast<Eigen::Index>(k)));
    if ((w.transpose() * a).maxCoeff() > 1.0 + 1e-9) return;
    best = std::min(best, pspankit::oracle::kkt_min_norm_oracle(f).norm);
  });
  return best;
}

}  // namespace testsupport
