#pragma once

// Brute-force cross-checks for the solvers: direct sampling of the minimax,
// exhaustive KKT enumeration of the min-norm point, and exhaustive subset search.

#include "pspankit/types.hpp"

#include <cstdint>
#include <vector>

namespace pspankit::oracle {

inline constexpr std::uint64_t kDefaultSeed = 0x5eed'c05e'0001ULL;

struct SampledCosine {
  double value = 0.0;  // max_j u^T d_j / |d_j| at the best unit u found; >= CM_L(D)
  Vector argmin;       // that u, an n-vector in L
  std::size_t evaluated = 0;
};

/// min over unit u in L of max_j u^T d_j / |d_j|, evaluated at N Gaussian
/// samples plus the points +-Q e_i and -P_L d_j / |P_L d_j|. With `refine`,
/// a projected subgradient descent starts from the best sample.
SampledCosine sampled_cosine_measure(const DirectionSet& d, const Subspace& l, std::size_t n,
                                     std::uint64_t seed = kDefaultSeed, bool refine = false);

struct KktMinNorm {
  Vector point;
  Vector weights;  // over all input points
  double norm = 0.0;
  IndexList support;
  double kkt_violation = 0.0;  // max(0, |x|^2 - min_j x^T p_j)
  std::uint64_t subsets = 0;
};

inline constexpr std::size_t kKktMaxPoints = 20;
inline constexpr std::size_t kSubsetMaxPoints = 12;

/// Closest point of conv{columns of P} to the origin by solving the affine
/// least-norm KKT system on every affinely independent subset.
KktMinNorm kkt_min_norm_oracle(const Matrix& points);

/// Every nonempty subset V (in bitmask order) with pspan(V) = span(V).
std::vector<IndexList> exhaustive_pspan_subset_check(const DirectionSet& d, const Tolerances& tol = {});

}  // namespace pspankit::oracle
