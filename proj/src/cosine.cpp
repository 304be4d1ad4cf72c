#include "pspankit/cosine.hpp"

#include "pspankit/kernels.hpp"
#include "pspankit/linalg.hpp"
#include "pspankit/min_norm.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace pspankit {

const char* to_string(CosineCase c) {
  switch (c) {
    case CosineCase::positive: return "POSITIVE";
    case CosineCase::zero: return "ZERO";
    case CosineCase::negative: return "NEGATIVE";
  }
  return "UNKNOWN";
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 c = 1;
  constexpr auto cap = static_cast<unsigned __int128>(std::numeric_limits<std::uint64_t>::max());
  for (std::uint64_t i = 0; i < k; ++i) {
    c = c * (n - i) / (i + 1);
    if (c > cap) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(c);
}

namespace {

constexpr double kDedupDistance = 1e-8;

// Outcome of min_{|v| = 1, v in R^k} max_j v^T w_j over the columns of W.
struct CoreResult {
  double value = 0.0;
  std::vector<Vector> vectors;       // unit k-vectors
  std::vector<BasisWitness> bases;   // indices local to W
  Vector weights;                    // over W columns (negative branch)
  double gap = 0.0;
  std::optional<Vector> null_witness;
  bool non_isolated = false;
  std::uint64_t examined = 0;
  std::uint64_t skipped = 0;
};

void push_unique(std::vector<Vector>& out, const Vector& v) {
  for (const Vector& e : out) {
    if ((e - v).norm() <= kDedupDistance) return;
  }
  out.push_back(v);
}

Matrix gather_cols(const Matrix& m, const IndexList& idx) {
  Matrix out(m.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = m.col(static_cast<Eigen::Index>(idx[j]));
  return out;
}

// Enumerate all k-subsets of the r columns in lexicographic order; for each
// numerically independent subset form the unit vector with equal dot products
// against its members and record the largest dot product over all of W.
void enumerate_bases(const Matrix& w, const Tolerances& tol, double gram_rank_tol, const EnumerationBudget& budget,
                     CoreResult& out) {
  const auto k = static_cast<std::size_t>(w.rows());
  const auto r = static_cast<std::size_t>(w.cols());
  const std::uint64_t count = binomial(r, k);
  if (count > budget.max_bases) throw BudgetExceeded(count, budget.max_bases);

  const Matrix g_all = w.transpose() * w;
  const kernels::PointPanel panel(w);

  struct Candidate {
    double max_dot;
    Vector u;
    BasisWitness basis;
  };
  std::vector<Candidate> cands;
  double best = std::numeric_limits<double>::infinity();

  IndexList idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  Matrix gs(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
  const Vector ones = Vector::Ones(static_cast<Eigen::Index>(k));
  Eigen::SelfAdjointEigenSolver<Matrix> eig;

  while (true) {
    ++out.examined;
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) {
        gs(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
            g_all(static_cast<Eigen::Index>(idx[a]), static_cast<Eigen::Index>(idx[b]));
      }
    }
    eig.compute(gs, Eigen::EigenvaluesOnly);
    const double lmin = eig.eigenvalues()(0);
    const double lmax = eig.eigenvalues()(static_cast<Eigen::Index>(k) - 1);
    bool usable = lmax > 0.0 && lmin > gram_rank_tol * lmax;
    if (usable) {
      const Vector x = gs.llt().solve(ones);
      const double s = ones.dot(x);
      usable = s > 0.0 && std::isfinite(s);
      if (usable) {
        Vector y = Vector::Zero(static_cast<Eigen::Index>(k));
        for (std::size_t a = 0; a < k; ++a) y += x(static_cast<Eigen::Index>(a)) * w.col(static_cast<Eigen::Index>(idx[a]));
        const double yn = y.norm();
        usable = yn > 0.0;
        if (usable) {
          Vector u = y / yn;
          const kernels::ArgMax hit = kernels::max_project(panel, u);
          if (hit.value <= best + tol.active_tol) {
            cands.push_back({hit.value, std::move(u), BasisWitness{idx, 1.0 / std::sqrt(s), hit.value}});
          }
          best = std::min(best, hit.value);
        }
      }
    }
    if (!usable) ++out.skipped;

    // next combination
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == r - k + (pos - 1)) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t a = pos; a < k; ++a) idx[a] = idx[a - 1] + 1;
  }

  if (!std::isfinite(best)) {
    throw Error(ErrorCode::precondition_violated, "no numerically independent basis found among the directions");
  }
  out.value = best;
  for (Candidate& c : cands) {
    if (c.max_dot <= best + tol.active_tol) {
      push_unique(out.vectors, c.u);
      out.bases.push_back(std::move(c.basis));
    }
  }
}

// cV when the measure is 0: unit v with v^T w_j <= 0 for every column.
void zero_witness(const Matrix& w, const Tolerances& tol, CoreResult& out) {
  const auto k = w.rows();
  const kernels::PointPanel panel(w);
  const DirectionSet ws(w, 0.0);

  // Columns whose negative is also reachable generate the largest linear
  // subspace inside pspan(W); cosine vectors are orthogonal to it.
  IndexList lineality;
  IndexList rest;
  for (Eigen::Index j = 0; j < w.cols(); ++j) {
    if (pspan_membership(ws, -w.col(j), tol).member) {
      lineality.push_back(static_cast<std::size_t>(j));
    } else {
      rest.push_back(static_cast<std::size_t>(j));
    }
  }
  Matrix ns = lineality.empty() ? Matrix(Matrix::Identity(k, k))
                                : linalg::null_space_matrix(gather_cols(w, lineality).transpose(), tol);
  if (ns.cols() == 0) {
    throw Error(ErrorCode::precondition_violated, "zero cosine measure but the directions positively span");
  }

  for (Eigen::Index c = 0; c < ns.cols(); ++c) {
    for (double sgn : {1.0, -1.0}) {
      const Vector v = sgn * ns.col(c);
      if (kernels::max_project(panel, v).value <= tol.active_tol) push_unique(out.vectors, v);
    }
  }

  if (out.vectors.empty()) {
    Matrix r = ns.transpose() * gather_cols(w, rest);
    IndexList keep;
    for (Eigen::Index j = 0; j < r.cols(); ++j) {
      const double nrm = r.col(j).norm();
      if (nrm > tol.zero_tol) {
        r.col(j) /= nrm;
        keep.push_back(static_cast<std::size_t>(j));
      }
    }
    Vector v = ns.col(0);
    if (!keep.empty()) {
      const MinNormResult mn = min_norm_point(gather_cols(r, keep), tol.gap_tol);
      if (mn.norm > 0.0) v = -(ns * mn.point) / mn.norm;
    }
    out.vectors.push_back(v.normalized());
  }
  out.null_witness = out.vectors.front();
  out.non_isolated = ns.cols() >= 2;
}

CoreResult minimax_core(const Matrix& w, bool positive_spanning, const Tolerances& tol, double gram_rank_tol,
                        const EnumerationBudget& budget) {
  CoreResult out;
  if (positive_spanning) {
    enumerate_bases(w, tol, gram_rank_tol, budget, out);
    return out;
  }
  const MinNormResult mn = min_norm_point(w, tol.gap_tol);
  out.weights = mn.weights;
  out.gap = mn.gap;
  if (mn.norm > tol.zero_value_tol) {
    out.value = -mn.norm;
    out.vectors.push_back(-mn.point / mn.norm);
    return out;
  }
  out.value = 0.0;
  zero_witness(w, tol, out);
  return out;
}

CosineCase classify(double value, const Tolerances& tol) {
  if (value > tol.active_tol) return CosineCase::positive;
  if (value < -tol.active_tol) return CosineCase::negative;
  return CosineCase::zero;
}

IndexList active_indices(const Matrix& w_all, const Vector& v, double value, const Tolerances& tol) {
  IndexList out;
  const Vector dots = w_all.transpose() * v;
  for (Eigen::Index j = 0; j < dots.size(); ++j) {
    if (std::abs(dots(j) - value) <= tol.active_tol) out.push_back(static_cast<std::size_t>(j));
  }
  return out;
}

// Map reduced-coordinate results back to R^n and attach active sets.
// w_all holds the reduced coordinates of every column of D (zero ones included),
// ids maps core column indices to D indices.
void finish_report(CosineReport& rep, const Matrix& q, const Matrix& w_all, const IndexList& ids,
                   CoreResult&& core, const Tolerances& tol) {
  rep.value = std::clamp(core.value, -1.0, 1.0);
  rep.kind = classify(core.value, tol);
  rep.reference_dim = static_cast<std::size_t>(q.cols());
  rep.bases_examined = core.examined;
  rep.bases_skipped = core.skipped;
  rep.may_be_non_isolated = core.non_isolated;
  rep.kkt_residual = core.gap;

  for (const Vector& v : core.vectors) {
    rep.cosine_vectors.push_back(q * v);
    IndexList act = active_indices(w_all, v, rep.value, tol);
    const std::size_t rank = act.empty() ? 0 : linalg::matrix_rank(gather_cols(w_all, act), tol);
    rep.active_set_spans.push_back(rank == static_cast<std::size_t>(q.cols()));
    rep.active_sets.push_back(std::move(act));
  }
  for (BasisWitness& b : core.bases) {
    for (std::size_t& i : b.indices) i = ids[i];
    rep.bases.push_back(std::move(b));
  }
  if (core.weights.size() > 0) {
    rep.hull_weights = Vector::Zero(w_all.cols());
    for (std::size_t j = 0; j < ids.size(); ++j) rep.hull_weights(static_cast<Eigen::Index>(ids[j])) = core.weights(static_cast<Eigen::Index>(j));
  }
  if (core.null_witness) rep.null_witness = q * *core.null_witness;
}

}  // namespace

CosineReport compute_cosine_measure_span(const DirectionSet& d, const Tolerances& tol,
                                         const EnumerationBudget& budget) {
  tol.validate();
  const Matrix q = linalg::orthonormal_range(d.matrix(), tol);
  const Matrix w = q.transpose() * d.normalized();

  CosineReport rep;
  rep.certificate = is_positive_spanning(d, tol);
  rep.span_dim = static_cast<std::size_t>(q.cols());

  IndexList ids(d.size());
  std::iota(ids.begin(), ids.end(), std::size_t{0});
  CoreResult core = minimax_core(w, rep.certificate->is_positive_spanning, tol, tol.rank_tol_for(d.dim(), d.size()),
                                 budget);
  finish_report(rep, q, w, ids, std::move(core), tol);
  return rep;
}

CosineReport compute_cosine_measure_relative(const DirectionSet& d, const Subspace& l, const Tolerances& tol,
                                             const EnumerationBudget& budget) {
  tol.validate();
  if (l.ambient_dim() != d.dim()) throw Error(ErrorCode::invalid_input, "subspace and directions differ in dimension");
  if (l.dim() == 0) throw Error(ErrorCode::degenerate_subspace, "subspace has dimension 0");

  const Matrix& q = l.basis();
  const auto k = static_cast<Eigen::Index>(l.dim());
  const Matrix w_all = q.transpose() * d.normalized();

  CosineReport rep;
  rep.span_dim = linalg::span_dimension(d, tol);
  IndexList ids;
  for (Eigen::Index j = 0; j < w_all.cols(); ++j) {
    if (w_all.col(j).norm() <= tol.zero_tol) {
      rep.zero_projection.push_back(static_cast<std::size_t>(j));
    } else {
      ids.push_back(static_cast<std::size_t>(j));
    }
  }

  if (ids.empty()) {
    // Every direction is orthogonal to L: each unit u in L scores exactly 0.
    CoreResult core;
    core.value = 0.0;
    core.vectors.push_back(Vector::Unit(k, 0));
    core.vectors.push_back(-Vector::Unit(k, 0));
    core.null_witness = core.vectors.front();
    core.non_isolated = k >= 2;
    finish_report(rep, q, w_all, ids, std::move(core), tol);
    return rep;
  }

  const Matrix w = gather_cols(w_all, ids);
  const bool spans_reference = linalg::matrix_rank(w, tol) == static_cast<std::size_t>(k);
  const bool positive = spans_reference && is_positive_spanning(DirectionSet(w, 0.0), tol).is_positive_spanning;
  CoreResult core = minimax_core(w, positive, tol, tol.rank_tol_for(d.dim(), d.size()), budget);

  if (!rep.zero_projection.empty() && core.value <= 0.0) {
    // The vanished projections contribute u^T 0 = 0 to every max.
    rep.projected_value = core.value;
    if (core.value < 0.0) {
      core.null_witness = core.vectors.front();
      core.non_isolated = k >= 2;
      core.bases.clear();
      core.weights = Vector();
      core.gap = 0.0;
    }
    core.value = 0.0;
  }
  finish_report(rep, q, w_all, ids, std::move(core), tol);
  return rep;
}

IndexList active_set(const DirectionSet& d, const Subspace& l, const Vector& u, double value, const Tolerances& tol) {
  if (static_cast<std::size_t>(u.size()) != d.dim() || l.ambient_dim() != d.dim()) {
    throw Error(ErrorCode::invalid_input, "active_set: dimension mismatch");
  }
  if (std::abs(u.norm() - 1.0) > 1e-8 || (u - l.project(u)).norm() > 1e-8) {
    throw Error(ErrorCode::invalid_input, "active_set: u must be a unit vector of the subspace");
  }
  const Vector dots = d.normalized().transpose() * u;
  IndexList out;
  for (Eigen::Index j = 0; j < dots.size(); ++j) {
    if (std::abs(dots(j) - value) <= tol.active_tol) out.push_back(static_cast<std::size_t>(j));
  }
  return out;
}

std::optional<IndexList> find_positive_spanning_subset(const DirectionSet& d, const Tolerances& tol,
                                                       const EnumerationBudget& budget) {
  IndexList current(d.size());
  std::iota(current.begin(), current.end(), std::size_t{0});
  if (is_positive_spanning(d, tol).is_positive_spanning) return current;

  CosineReport rep = compute_cosine_measure_span(d, tol, budget);
  while (rep.kind == CosineCase::zero && !rep.cosine_vectors.empty()) {
    const Vector& u = rep.cosine_vectors.front();
    const DirectionSet cur = d.subset(current);
    const Vector dots = cur.normalized().transpose() * u;
    IndexList next;
    for (Eigen::Index j = 0; j < dots.size(); ++j) {
      if (std::abs(dots(j)) <= tol.active_tol) next.push_back(current[static_cast<std::size_t>(j)]);
    }
    if (next.size() < 2 || next.size() >= current.size()) return std::nullopt;
    current = std::move(next);
    const DirectionSet sub = d.subset(current);
    if (is_positive_spanning(sub, tol).is_positive_spanning) return current;
    rep = compute_cosine_measure_span(sub, tol, budget);
  }
  return std::nullopt;
}

}  // namespace pspankit
