#include "pspankit/min_norm.hpp"

#include "pspankit/kernels.hpp"

#include <Eigen/LU>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>

namespace pspankit {

namespace {

constexpr double kWeightFloor = 1e-15;
constexpr double kOriginTol = 1e-14;

Matrix gather(const Matrix& p, const IndexList& s) {
  Matrix out(p.rows(), static_cast<Eigen::Index>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = p.col(static_cast<Eigen::Index>(s[i]));
  return out;
}

// argmin ||Q a|| subject to sum(a) = 1, through the KKT system.
Vector affine_minimizer(const Matrix& q) {
  const Eigen::Index s = q.cols();
  Matrix kkt = Matrix::Zero(s + 1, s + 1);
  kkt.topLeftCorner(s, s) = q.transpose() * q;
  kkt.topRightCorner(s, 1).setOnes();
  kkt.bottomLeftCorner(1, s).setOnes();
  Vector rhs = Vector::Zero(s + 1);
  rhs(s) = 1.0;
  Eigen::FullPivLU<Matrix> lu(kkt);
  Vector sol = lu.isInvertible() ? Vector(lu.solve(rhs)) : Vector(kkt.completeOrthogonalDecomposition().solve(rhs));
  Vector a = sol.head(s);
  const double sum = a.sum();
  if (std::abs(sum) > 0.0) a /= sum;
  return a;
}

}  // namespace

MinNormResult min_norm_point(const Matrix& points, double gap_tol, int max_iterations) {
  const Eigen::Index q = points.cols();
  if (q == 0) throw Error(ErrorCode::invalid_input, "min_norm_point: empty point set");
  if (max_iterations <= 0) max_iterations = static_cast<int>(50 * (q + points.rows()) + 100);

  const kernels::PointPanel panel(points);
  const double scale = std::sqrt(std::max(1.0, points.colwise().squaredNorm().maxCoeff()));

  Eigen::Index j0 = 0;
  points.colwise().squaredNorm().minCoeff(&j0);
  IndexList s{static_cast<std::size_t>(j0)};
  Vector lam = Vector::Ones(1);
  Vector x = points.col(j0);

  MinNormResult res;
  double gap = 0.0;
  for (int iter = 0; iter < max_iterations; ++iter) {
    res.iterations = iter + 1;
    const Vector neg = -x;
    const kernels::ArgMax hit = kernels::max_project(panel, neg);
    gap = x.squaredNorm() + hit.value;
    const double xn = x.norm();
    if (xn <= kOriginTol * scale || gap <= gap_tol * scale * xn) {
      res.converged = true;
      break;
    }
    if (std::find(s.begin(), s.end(), hit.index) != s.end()) {
      // Already in the corral: no further descent is representable.
      break;
    }
    s.push_back(hit.index);
    lam.conservativeResize(static_cast<Eigen::Index>(s.size()));
    lam(lam.size() - 1) = 0.0;

    for (std::size_t minor = 0; minor <= s.size() + 1; ++minor) {
      const Matrix ps = gather(points, s);
      const Vector alpha = affine_minimizer(ps);
      if (alpha.minCoeff() > kWeightFloor) {
        lam = alpha;
        x = ps * lam;
        break;
      }
      double theta = 1.0;
      Eigen::Index drop = -1;
      for (Eigen::Index i = 0; i < alpha.size(); ++i) {
        if (alpha(i) <= kWeightFloor) {
          const double denom = lam(i) - alpha(i);
          const double t = denom > 0.0 ? lam(i) / denom : 0.0;
          if (drop < 0 || t < theta) {
            theta = t;
            drop = i;
          }
        }
      }
      lam = theta * alpha + (1.0 - theta) * lam;
      lam(drop) = 0.0;
      IndexList keep_s;
      std::vector<double> keep_l;
      for (Eigen::Index i = 0; i < lam.size(); ++i) {
        if (lam(i) > kWeightFloor) {
          keep_s.push_back(s[static_cast<std::size_t>(i)]);
          keep_l.push_back(lam(i));
        }
      }
      s = std::move(keep_s);
      lam = Eigen::Map<Vector>(keep_l.data(), static_cast<Eigen::Index>(keep_l.size()));
      lam /= lam.sum();
      x = gather(points, s) * lam;
    }
  }

  res.weights = Vector::Zero(q);
  for (std::size_t i = 0; i < s.size(); ++i) res.weights(static_cast<Eigen::Index>(s[i])) = lam(static_cast<Eigen::Index>(i));
  res.point = points * res.weights;
  res.norm = res.point.norm();
  const Vector dots = points.transpose() * res.point;
  res.gap = std::max(0.0, res.point.squaredNorm() - dots.minCoeff());
  for (Eigen::Index j = 0; j < q; ++j) {
    if (res.weights(j) > 0.0) res.support.push_back(static_cast<std::size_t>(j));
  }
  if (!res.converged) res.converged = res.norm <= kOriginTol * scale || res.gap <= gap_tol * scale * res.norm;
  return res;
}

}  // namespace pspankit
