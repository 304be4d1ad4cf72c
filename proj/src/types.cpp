#include "pspankit/types.hpp"

#include "pspankit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace pspankit {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_input: return "invalid_input";
    case ErrorCode::budget_exceeded: return "budget_exceeded";
    case ErrorCode::degenerate_subspace: return "degenerate_subspace";
    case ErrorCode::nonpositive_cosine_measure: return "nonpositive_cosine_measure";
    case ErrorCode::asymmetric_set: return "asymmetric_set";
    case ErrorCode::precondition_violated: return "precondition_violated";
    case ErrorCode::too_many_points: return "too_many_points";
  }
  return "unknown";
}

namespace {

std::string budget_message(std::uint64_t required, std::uint64_t allowed) {
  std::ostringstream os;
  os << "basis enumeration needs " << required << " subsets, budget is " << allowed;
  return os.str();
}

}  // namespace

BudgetExceeded::BudgetExceeded(std::uint64_t required, std::uint64_t allowed)
    : Error(ErrorCode::budget_exceeded, budget_message(required, allowed)),
      required_(required),
      allowed_(allowed) {}

double Tolerances::rank_tol_for(std::size_t rows, std::size_t cols) const {
  if (rank_tol) return *rank_tol;
  return static_cast<double>(std::max<std::size_t>({rows, cols, 1})) *
         std::numeric_limits<double>::epsilon();
}

void Tolerances::validate() const {
  auto check = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::invalid_input, std::string("tolerance ") + name + " must be finite and > 0");
    }
  };
  if (rank_tol) check(*rank_tol, "rank_tol");
  check(zero_tol, "zero_tol");
  check(active_tol, "active_tol");
  check(feas_tol, "feas_tol");
  check(gap_tol, "gap_tol");
  check(zero_value_tol, "zero_value_tol");
}

DirectionSet::DirectionSet(Matrix columns, double zero_tol) : columns_(std::move(columns)), zero_tol_(zero_tol) {
  if (columns_.cols() < 1 || columns_.rows() < 1) {
    throw Error(ErrorCode::invalid_input, "direction set must contain at least one vector of dimension >= 1");
  }
  if (!columns_.allFinite()) {
    throw Error(ErrorCode::invalid_input, "direction set contains non-finite entries");
  }
  for (Eigen::Index j = 0; j < columns_.cols(); ++j) {
    if (columns_.col(j).norm() <= zero_tol_) {
      std::ostringstream os;
      os << "vector " << j << " has norm " << columns_.col(j).norm() << " <= zero_tol " << zero_tol_;
      throw Error(ErrorCode::invalid_input, os.str());
    }
  }
}

DirectionSet DirectionSet::from_rows(const std::vector<std::vector<double>>& rows, double zero_tol) {
  if (rows.empty()) throw Error(ErrorCode::invalid_input, "direction set must contain at least one vector");
  const std::size_t n = rows.front().size();
  Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(rows.size()));
  for (std::size_t j = 0; j < rows.size(); ++j) {
    if (rows[j].size() != n) {
      std::ostringstream os;
      os << "vector " << j << " has " << rows[j].size() << " entries, expected " << n;
      throw Error(ErrorCode::invalid_input, os.str());
    }
    for (std::size_t i = 0; i < n; ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[j][i];
  }
  return DirectionSet(std::move(m), zero_tol);
}

Matrix DirectionSet::normalized() const {
  Matrix out = columns_;
  for (Eigen::Index j = 0; j < out.cols(); ++j) out.col(j) /= out.col(j).norm();
  return out;
}

DirectionSet DirectionSet::subset(std::span<const std::size_t> indices) const {
  Matrix m(columns_.rows(), static_cast<Eigen::Index>(indices.size()));
  for (std::size_t j = 0; j < indices.size(); ++j) {
    if (indices[j] >= size()) throw Error(ErrorCode::invalid_input, "subset index out of range");
    m.col(static_cast<Eigen::Index>(j)) = columns_.col(static_cast<Eigen::Index>(indices[j]));
  }
  return DirectionSet(std::move(m), zero_tol_);
}

DirectionSet DirectionSet::appended(const Matrix& extra) const {
  if (extra.cols() == 0) return *this;
  if (extra.rows() != columns_.rows()) throw Error(ErrorCode::invalid_input, "appended vectors have wrong dimension");
  Matrix m(columns_.rows(), columns_.cols() + extra.cols());
  m << columns_, extra;
  return DirectionSet(std::move(m), zero_tol_);
}

Subspace Subspace::from_spanning_columns(const Matrix& spanning, const Tolerances& tol) {
  if (spanning.rows() < 1) throw Error(ErrorCode::degenerate_subspace, "subspace has ambient dimension 0");
  Matrix q = linalg::orthonormal_range(spanning, tol);
  if (q.cols() == 0) throw Error(ErrorCode::degenerate_subspace, "subspace basis spans only the zero vector");
  return Subspace(std::move(q));
}

Subspace Subspace::full(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::degenerate_subspace, "subspace has ambient dimension 0");
  return Subspace(Matrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)));
}

Subspace Subspace::span_of(const DirectionSet& d, const Tolerances& tol) {
  return from_spanning_columns(d.matrix(), tol);
}

Subspace Subspace::from_orthonormal(Matrix basis) {
  if (basis.cols() == 0 || basis.rows() == 0) throw Error(ErrorCode::degenerate_subspace, "empty subspace basis");
  const Matrix g = basis.transpose() * basis;
  const Matrix id = Matrix::Identity(g.rows(), g.cols());
  if ((g - id).cwiseAbs().maxCoeff() > 1e-10) {
    throw Error(ErrorCode::invalid_input, "subspace basis is not orthonormal");
  }
  return Subspace(std::move(basis));
}

}  // namespace pspankit
