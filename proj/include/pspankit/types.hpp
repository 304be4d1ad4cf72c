#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pspankit {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using IndexList = std::vector<std::size_t>;

enum class ErrorCode {
  invalid_input,
  budget_exceeded,
  degenerate_subspace,
  nonpositive_cosine_measure,
  asymmetric_set,
  precondition_violated,
  too_many_points,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised when an exhaustive enumeration would examine more subsets than allowed.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::uint64_t required, std::uint64_t allowed);
  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t allowed() const noexcept { return allowed_; }

 private:
  std::uint64_t required_;
  std::uint64_t allowed_;
};

/// Numerical thresholds shared by every solver in the library.
///
/// `rank_tol` is relative to the largest singular value; when unset it
/// resolves to max(rows, cols) * machine epsilon for the matrix at hand.
struct Tolerances {
  std::optional<double> rank_tol;
  double zero_tol = 1e-12;
  double active_tol = 1e-9;
  double feas_tol = 1e-9;
  double gap_tol = 1e-12;
  /// Minimum-norm distance at or below which the cosine measure is declared 0.
  double zero_value_tol = 1e-8;

  double rank_tol_for(std::size_t rows, std::size_t cols) const;
  void validate() const;
};

struct EnumerationBudget {
  std::uint64_t max_bases = 2'000'000;
};

/// Ordered finite list of nonzero n-vectors, stored as the columns of an n x q matrix.
class DirectionSet {
 public:
  DirectionSet(Matrix columns, double zero_tol = Tolerances{}.zero_tol);

  static DirectionSet from_rows(const std::vector<std::vector<double>>& rows,
                                double zero_tol = Tolerances{}.zero_tol);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(columns_.rows()); }
  std::size_t size() const noexcept { return static_cast<std::size_t>(columns_.cols()); }

  const Matrix& matrix() const noexcept { return columns_; }
  Eigen::Ref<const Vector> column(std::size_t j) const { return columns_.col(static_cast<Eigen::Index>(j)); }

  /// Columns scaled to unit Euclidean norm.
  Matrix normalized() const;

  DirectionSet subset(std::span<const std::size_t> indices) const;
  DirectionSet appended(const Matrix& extra) const;

 private:
  Matrix columns_;
  double zero_tol_;
};

/// Nontrivial linear subspace represented by an orthonormal basis (n x k, k >= 1).
class Subspace {
 public:
  /// Orthonormalizes the columns of `spanning` (SVD, rank_tol cutoff).
  /// Throws degenerate_subspace when the columns span only {0}.
  static Subspace from_spanning_columns(const Matrix& spanning, const Tolerances& tol = {});
  static Subspace full(std::size_t n);
  static Subspace span_of(const DirectionSet& d, const Tolerances& tol = {});

  /// Wraps columns that are already orthonormal; verifies orthonormality to 1e-10.
  static Subspace from_orthonormal(Matrix basis);

  std::size_t ambient_dim() const noexcept { return static_cast<std::size_t>(basis_.rows()); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(basis_.cols()); }
  const Matrix& basis() const noexcept { return basis_; }

  Vector project(const Vector& v) const { return basis_ * (basis_.transpose() * v); }
  Vector coordinates(const Vector& v) const { return basis_.transpose() * v; }

 private:
  explicit Subspace(Matrix basis) : basis_(std::move(basis)) {}
  Matrix basis_;
};

}  // namespace pspankit
