#include "pspankit/oracle.hpp"

#include "pspankit/kernels.hpp"
#include "pspankit/spanning.hpp"

#include <Eigen/LU>
#include <Eigen/QR>

#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace pspankit::oracle {

namespace {

constexpr double kWeightSlack = 1e-12;

struct Probe {
  const Matrix& w;  // k x q reduced coordinates of the normalized directions
  kernels::PointPanel panel;
  double best = std::numeric_limits<double>::infinity();
  Vector best_v;
  std::size_t evaluated = 0;

  explicit Probe(const Matrix& coords) : w(coords), panel(coords) {}

  kernels::ArgMax eval(const Vector& v) {
    const kernels::ArgMax hit = kernels::max_project(panel, v);
    ++evaluated;
    if (hit.value < best) {
      best = hit.value;
      best_v = v;
    }
    return hit;
  }
};

}  // namespace

SampledCosine sampled_cosine_measure(const DirectionSet& d, const Subspace& l, std::size_t n, std::uint64_t seed,
                                     bool refine) {
  if (n == 0) throw Error(ErrorCode::invalid_input, "sample count must be at least 1");
  if (l.ambient_dim() != d.dim()) throw Error(ErrorCode::invalid_input, "subspace and directions differ in dimension");
  const Matrix& q = l.basis();
  const auto k = q.cols();
  const Matrix w = q.transpose() * d.normalized();
  Probe probe(w);

  for (Eigen::Index i = 0; i < k; ++i) {
    probe.eval(Vector::Unit(k, i));
    probe.eval(-Vector::Unit(k, i));
  }
  for (Eigen::Index j = 0; j < w.cols(); ++j) {
    const double nrm = w.col(j).norm();
    if (nrm > 0.0) probe.eval(-w.col(j) / nrm);
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Vector g(k);
  for (std::size_t s = 0; s < n; ++s) {
    double nrm = 0.0;
    while (nrm == 0.0) {
      for (Eigen::Index i = 0; i < k; ++i) g(i) = gauss(rng);
      nrm = g.norm();
    }
    probe.eval(g / nrm);
  }

  if (refine) {
    Vector v = probe.best_v;
    double step = 0.1;
    for (int it = 0; it < 2000; ++it) {
      const kernels::ArgMax hit = kernels::max_project(probe.panel, v);
      Vector gsub = w.col(static_cast<Eigen::Index>(hit.index));
      gsub -= gsub.dot(v) * v;
      const double gn = gsub.norm();
      if (gn == 0.0) break;
      Vector next = v - step * gsub / gn;
      const double nn = next.norm();
      if (nn == 0.0) break;
      v = next / nn;
      probe.eval(v);
      step *= 0.995;
    }
    // Polish: equal-dot-product direction over the near-maximal columns.
    for (double eps : {1e-2, 1e-3, 1e-4, 1e-6, 1e-8}) {
      const Vector dots = w.transpose() * probe.best_v;
      const double top = dots.maxCoeff();
      IndexList act;
      for (Eigen::Index j = 0; j < dots.size(); ++j) {
        if (dots(j) >= top - eps) act.push_back(static_cast<std::size_t>(j));
      }
      Matrix at(static_cast<Eigen::Index>(act.size()), k);
      for (std::size_t a = 0; a < act.size(); ++a) at.row(static_cast<Eigen::Index>(a)) = w.col(static_cast<Eigen::Index>(act[a])).transpose();
      const Vector u = at.completeOrthogonalDecomposition().solve(Vector::Ones(static_cast<Eigen::Index>(act.size())));
      const double un = u.norm();
      if (un > 0.0 && std::isfinite(un)) probe.eval(u / un);
    }
  }

  SampledCosine out;
  out.value = probe.best;
  out.argmin = q * probe.best_v;
  out.evaluated = probe.evaluated;
  return out;
}

KktMinNorm kkt_min_norm_oracle(const Matrix& points) {
  const auto q = static_cast<std::size_t>(points.cols());
  const auto k = static_cast<std::size_t>(points.rows());
  if (q == 0) throw Error(ErrorCode::invalid_input, "no points");
  if (q > kKktMaxPoints) {
    throw Error(ErrorCode::too_many_points, "KKT enumeration is limited to " + std::to_string(kKktMaxPoints) + " points");
  }
  const Matrix g_all = points.transpose() * points;
  const std::size_t max_size = std::min(q, k + 1);

  KktMinNorm best;
  best.norm = std::numeric_limits<double>::infinity();

  for (std::uint32_t mask = 1; mask < (1u << q); ++mask) {
    const auto s = static_cast<std::size_t>(__builtin_popcount(mask));
    if (s > max_size) continue;
    ++best.subsets;
    IndexList idx;
    for (std::size_t j = 0; j < q; ++j) {
      if (mask & (1u << j)) idx.push_back(j);
    }
    const auto ss = static_cast<Eigen::Index>(s);
    Matrix kkt = Matrix::Zero(ss + 1, ss + 1);
    for (Eigen::Index a = 0; a < ss; ++a) {
      for (Eigen::Index b = 0; b < ss; ++b) {
        kkt(a, b) = g_all(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(a)]),
                          static_cast<Eigen::Index>(idx[static_cast<std::size_t>(b)]));
      }
      kkt(a, ss) = 1.0;
      kkt(ss, a) = 1.0;
    }
    Eigen::FullPivLU<Matrix> lu(kkt);
    if (!lu.isInvertible()) continue;
    Vector rhs = Vector::Zero(ss + 1);
    rhs(ss) = 1.0;
    const Vector sol = lu.solve(rhs);
    if (sol.head(ss).minCoeff() < -kWeightSlack) continue;

    Vector lam = sol.head(ss).cwiseMax(0.0);
    lam /= lam.sum();
    Vector x = Vector::Zero(static_cast<Eigen::Index>(k));
    for (Eigen::Index a = 0; a < ss; ++a) x += lam(a) * points.col(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(a)]));
    const double nrm = x.norm();
    if (nrm < best.norm) {
      best.norm = nrm;
      best.point = x;
      best.weights = Vector::Zero(static_cast<Eigen::Index>(q));
      best.support.clear();
      for (Eigen::Index a = 0; a < ss; ++a) {
        best.weights(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(a)])) = lam(a);
        if (lam(a) > 0.0) best.support.push_back(idx[static_cast<std::size_t>(a)]);
      }
    }
  }
  const Vector dots = points.transpose() * best.point;
  best.kkt_violation = std::max(0.0, best.point.squaredNorm() - dots.minCoeff());
  return best;
}

std::vector<IndexList> exhaustive_pspan_subset_check(const DirectionSet& d, const Tolerances& tol) {
  const std::size_t q = d.size();
  if (q > kSubsetMaxPoints) {
    throw Error(ErrorCode::too_many_points,
                "exhaustive subset search is limited to " + std::to_string(kSubsetMaxPoints) + " directions");
  }
  std::vector<IndexList> out;
  for (std::uint32_t mask = 1; mask < (1u << q); ++mask) {
    IndexList idx;
    for (std::size_t j = 0; j < q; ++j) {
      if (mask & (1u << j)) idx.push_back(j);
    }
    if (is_positive_spanning(d.subset(idx), tol).is_positive_spanning) out.push_back(std::move(idx));
  }
  return out;
}

}  // namespace pspankit::oracle
