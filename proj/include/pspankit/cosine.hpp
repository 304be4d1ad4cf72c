#pragma once

// Cosine measure of a finite direction set relative to a subspace L:
//
//   CM_L(D) = min_{u in L, |u| = 1} max_{d in D} u^T d / |d|
//
// Two regimes. When D positively spans the reference space the minimum is
// attained at the equal-dot-product vector u_B of some basis B drawn from D,
// so it is found by enumerating bases. Otherwise the measure is <= 0 and
// equals -dist(0, conv{d / |d|}), computed as a minimum-norm point.

#include "pspankit/spanning.hpp"
#include "pspankit/types.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace pspankit {

enum class CosineCase { positive, zero, negative };

const char* to_string(CosineCase c);

struct BasisWitness {
  IndexList indices;     // columns of D forming the basis
  double gamma = 0.0;    // 1 / sqrt(1^T G(B)^{-1} 1)
  double max_dot = 0.0;  // max_j u_B^T d_j / |d_j|
};

struct CosineReport {
  double value = 0.0;
  CosineCase kind = CosineCase::zero;

  std::vector<Vector> cosine_vectors;  // unit n-vectors in the reference subspace
  std::vector<IndexList> active_sets;  // per cosine vector
  std::vector<bool> active_set_spans;  // per cosine vector: active columns span the reference space
  bool may_be_non_isolated = false;    // the cosine vector set may be a continuum

  std::vector<BasisWitness> bases;    // positive: every minimizing basis, lexicographic
  Vector hull_weights;                // negative: lambda >= 0, sum 1, value = -|D^ lambda|
  double kkt_residual = 0.0;          // negative: duality gap of the min-norm solve
  std::optional<Vector> null_witness; // zero: unit u with u^T d <= active_tol for every d

  IndexList zero_projection;             // relative: columns whose projection onto L vanished
  std::optional<double> projected_value; // relative with zero projections: measure over the rest
  std::optional<SpanningCertificate> certificate;  // span mode only

  std::size_t reference_dim = 0;
  std::size_t span_dim = 0;
  std::uint64_t bases_examined = 0;
  std::uint64_t bases_skipped = 0;
};

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// CM_D(D), with L = span(D). Throws BudgetExceeded when C(q, m) > budget.max_bases.
CosineReport compute_cosine_measure_span(const DirectionSet& d, const Tolerances& tol = {},
                                         const EnumerationBudget& budget = {});

/// CM_L(D) for an arbitrary nontrivial subspace L.
CosineReport compute_cosine_measure_relative(const DirectionSet& d, const Subspace& l, const Tolerances& tol = {},
                                             const EnumerationBudget& budget = {});

/// Indices i with |u^T d_i / |d_i| - value| <= active_tol. u must be a unit vector of L.
IndexList active_set(const DirectionSet& d, const Subspace& l, const Vector& u, double value,
                     const Tolerances& tol = {});

/// Subset V of D with pspan(V) = span(V), found by repeatedly restricting to the
/// directions orthogonal to a cosine vector. All of D when D is already positively
/// spanning; nullopt when CM_D(D) != 0 and D is not positively spanning.
std::optional<IndexList> find_positive_spanning_subset(const DirectionSet& d, const Tolerances& tol = {},
                                                       const EnumerationBudget& budget = {});

}  // namespace pspankit
