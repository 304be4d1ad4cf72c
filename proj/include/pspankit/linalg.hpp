#pragma once

// Small dense linear algebra used by every solver: ranks and span bases with
// explicit cutoffs, orthogonal projection, Gram matrices, null spaces.

#include "pspankit/types.hpp"

#include <optional>

namespace pspankit::linalg {

/// Number of singular values above rank_tol * sigma_max.
std::size_t matrix_rank(const Matrix& m, const Tolerances& tol = {});

/// Rank counted against an absolute singular-value cutoff.
std::size_t matrix_rank_abs(const Matrix& m, double cutoff);

/// m = dim span(D).
std::size_t span_dimension(const DirectionSet& d, const Tolerances& tol = {});

/// Indices of the first linearly independent columns of D, greedy in input order.
IndexList span_basis(const DirectionSet& d, const Tolerances& tol = {});

/// Orthogonal projection of v onto span(D), computed as D D^+ v.
Vector project_onto_span(const DirectionSet& d, const Vector& v, const Tolerances& tol = {});

/// G(B) = B^T B.
Matrix gram(const Matrix& b);

/// Orthonormal basis of {x : M x = 0}; nullopt when the null space is trivial.
std::optional<Subspace> orthonormal_null_space(const Matrix& m, const Tolerances& tol = {});

/// Orthonormal basis (n x rank) of the column space of M; may have zero columns.
Matrix orthonormal_range(const Matrix& m, const Tolerances& tol = {});

/// Orthonormal basis of the null space as a raw matrix (cols() == 0 when trivial).
Matrix null_space_matrix(const Matrix& m, const Tolerances& tol = {});

}  // namespace pspankit::linalg
