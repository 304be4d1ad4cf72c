#include "pspankit/spanning.hpp"

#include "pspankit/linalg.hpp"
#include "pspankit/nnls.hpp"

namespace pspankit {

SpanningCertificate is_positive_spanning(const DirectionSet& d, const Tolerances& tol) {
  const Matrix& a = d.matrix();
  const Vector ones_sum = a.rowwise().sum();
  const NnlsResult sol = nnls(a, -ones_sum);

  SpanningCertificate cert;
  cert.residual = sol.residual;
  cert.threshold = tol.feas_tol * (ones_sum.norm() + 1.0);
  cert.is_positive_spanning = sol.residual <= cert.threshold;
  cert.span_dim = linalg::span_dimension(d, tol);
  if (cert.is_positive_spanning) cert.gamma = sol.x;
  return cert;
}

Membership pspan_membership(const DirectionSet& d, const Vector& v, const Tolerances& tol) {
  if (static_cast<std::size_t>(v.size()) != d.dim()) {
    throw Error(ErrorCode::invalid_input, "pspan_membership: vector dimension mismatch");
  }
  const NnlsResult sol = nnls(d.matrix(), v);
  Membership m;
  m.lambda = sol.x;
  m.residual = sol.residual;
  m.member = sol.residual <= tol.feas_tol * (v.norm() + 1.0);
  return m;
}

IndependenceReport is_positively_independent(const DirectionSet& d, const Tolerances& tol) {
  IndependenceReport rep;
  const std::size_t q = d.size();
  if (q == 1) return rep;
  for (std::size_t i = 0; i < q; ++i) {
    IndexList others;
    others.reserve(q - 1);
    for (std::size_t j = 0; j < q; ++j) {
      if (j != i) others.push_back(j);
    }
    if (pspan_membership(d.subset(others), d.column(i), tol).member) rep.redundant.push_back(i);
  }
  rep.positively_independent = rep.redundant.empty();
  return rep;
}

DirectionSet extend_to_positive_spanning(const DirectionSet& d, ExtendMode mode, const Tolerances& tol) {
  const IndexList basis = linalg::span_basis(d, tol);
  Matrix b(static_cast<Eigen::Index>(d.dim()), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) b.col(static_cast<Eigen::Index>(j)) = d.column(basis[j]);

  if (mode == ExtendMode::mirror_basis) return d.appended(-b);

  const Vector w = -b.rowwise().sum();
  if (w.norm() <= tol.zero_tol) return d;
  return d.appended(w);
}

std::optional<std::size_t> find_ascent_direction(const DirectionSet& d, const Vector& v, const Tolerances& tol) {
  if (static_cast<std::size_t>(v.size()) != d.dim()) {
    throw Error(ErrorCode::invalid_input, "find_ascent_direction: vector dimension mismatch");
  }
  const Vector dots = d.matrix().transpose() * v;
  for (Eigen::Index j = 0; j < dots.size(); ++j) {
    if (dots(j) > tol.active_tol) return static_cast<std::size_t>(j);
  }
  return std::nullopt;
}

double radius(const DirectionSet& d) { return d.matrix().colwise().norm().maxCoeff(); }

}  // namespace pspankit
