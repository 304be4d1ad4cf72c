#include "pspankit/linalg.hpp"

#include <Eigen/SVD>

#include <algorithm>

namespace pspankit::linalg {

namespace {

double rank_cutoff(const Eigen::VectorXd& sigma, const Tolerances& tol, Eigen::Index rows, Eigen::Index cols) {
  const double smax = sigma.size() > 0 ? sigma(0) : 0.0;
  return tol.rank_tol_for(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols)) * smax;
}

std::size_t count_above(const Eigen::VectorXd& sigma, double cutoff) {
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > cutoff) ++r;
  }
  return r;
}

}  // namespace

std::size_t matrix_rank(const Matrix& m, const Tolerances& tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sigma = svd.singularValues();
  if (sigma.size() == 0 || sigma(0) == 0.0) return 0;
  return count_above(sigma, rank_cutoff(sigma, tol, m.rows(), m.cols()));
}

std::size_t matrix_rank_abs(const Matrix& m, double cutoff) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return count_above(svd.singularValues(), cutoff);
}

std::size_t span_dimension(const DirectionSet& d, const Tolerances& tol) {
  return std::max<std::size_t>(1, matrix_rank(d.matrix(), tol));
}

IndexList span_basis(const DirectionSet& d, const Tolerances& tol) {
  const Matrix& a = d.matrix();
  Eigen::JacobiSVD<Matrix> svd(a);
  const auto& sigma = svd.singularValues();
  const double cutoff = rank_cutoff(sigma, tol, a.rows(), a.cols());
  const std::size_t m = std::max<std::size_t>(1, count_above(sigma, cutoff));

  // Greedy in column order: keep a column when it raises the rank of the
  // selection, judged against the same absolute cutoff as span_dimension.
  IndexList chosen;
  Matrix sel(a.rows(), 0);
  for (std::size_t j = 0; j < d.size() && chosen.size() < m; ++j) {
    Matrix trial(a.rows(), sel.cols() + 1);
    trial << sel, a.col(static_cast<Eigen::Index>(j));
    if (matrix_rank_abs(trial, cutoff) == chosen.size() + 1) {
      chosen.push_back(j);
      sel = std::move(trial);
    }
  }
  return chosen;
}

Vector project_onto_span(const DirectionSet& d, const Vector& v, const Tolerances& tol) {
  const Matrix q = orthonormal_range(d.matrix(), tol);
  return q * (q.transpose() * v);
}

Matrix gram(const Matrix& b) { return b.transpose() * b; }

Matrix orthonormal_range(const Matrix& m, const Tolerances& tol) {
  if (m.size() == 0) return Matrix(m.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
  const auto& sigma = svd.singularValues();
  if (sigma.size() == 0 || sigma(0) == 0.0) return Matrix(m.rows(), 0);
  const std::size_t r = count_above(sigma, rank_cutoff(sigma, tol, m.rows(), m.cols()));
  return svd.matrixU().leftCols(static_cast<Eigen::Index>(r));
}

Matrix null_space_matrix(const Matrix& m, const Tolerances& tol) {
  const Eigen::Index cols = m.cols();
  if (cols == 0) return Matrix(0, 0);
  if (m.rows() == 0 || m.isZero(0.0)) return Matrix::Identity(cols, cols);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const std::size_t r = count_above(sigma, rank_cutoff(sigma, tol, m.rows(), m.cols()));
  return svd.matrixV().rightCols(cols - static_cast<Eigen::Index>(r));
}

std::optional<Subspace> orthonormal_null_space(const Matrix& m, const Tolerances& tol) {
  Matrix ns = null_space_matrix(m, tol);
  if (ns.cols() == 0) return std::nullopt;
  return Subspace::from_orthonormal(std::move(ns));
}

}  // namespace pspankit::linalg
