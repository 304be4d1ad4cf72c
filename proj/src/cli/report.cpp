#include "pspankit/cli/report.hpp"

namespace pspankit::cli {

Json to_json(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i) == 0.0 ? 0.0 : v(i));
  return a;
}

Json rows_json(const Matrix& columns) {
  Json a = Json::array();
  for (Eigen::Index j = 0; j < columns.cols(); ++j) a.push_back(to_json(Vector(columns.col(j))));
  return a;
}

Json to_json(const IndexList& idx) {
  Json a = Json::array();
  for (std::size_t i : idx) a.push_back(i);
  return a;
}

Json to_json(const SpanningCertificate& c) {
  Json j;
  j["positive_spanning"] = c.is_positive_spanning;
  j["span_dim"] = c.span_dim;
  j["residual"] = c.residual;
  j["threshold"] = c.threshold;
  j["gamma"] = c.is_positive_spanning ? to_json(c.gamma) : Json(nullptr);
  return j;
}

Json to_json(const IndependenceReport& r) {
  Json j;
  j["positively_independent"] = r.positively_independent;
  j["redundant"] = to_json(r.redundant);
  return j;
}

Json to_json(const Tolerances& t, std::size_t rows, std::size_t cols) {
  Json j;
  j["rank_tol"] = t.rank_tol_for(rows, cols);
  j["zero_tol"] = t.zero_tol;
  j["active_tol"] = t.active_tol;
  j["feas_tol"] = t.feas_tol;
  j["gap_tol"] = t.gap_tol;
  return j;
}

Json to_json(const CosineReport& r, bool all_vectors) {
  Json j;
  j["value"] = r.value;
  j["case"] = to_string(r.kind);
  j["reference_dim"] = r.reference_dim;
  j["span_dim"] = r.span_dim;
  const std::size_t shown = all_vectors ? r.cosine_vectors.size() : std::min<std::size_t>(1, r.cosine_vectors.size());
  j["cosine_vector_count"] = r.cosine_vectors.size();
  Json vecs = Json::array(), acts = Json::array(), spans = Json::array();
  for (std::size_t i = 0; i < shown; ++i) {
    vecs.push_back(to_json(r.cosine_vectors[i]));
    acts.push_back(to_json(r.active_sets[i]));
    spans.push_back(static_cast<bool>(r.active_set_spans[i]));
  }
  j["cosine_vectors"] = vecs;
  j["active_sets"] = acts;
  j["active_set_spans"] = spans;
  j["may_be_non_isolated"] = r.may_be_non_isolated;

  Json w;
  switch (r.kind) {
    case CosineCase::positive: {
      Json bases = Json::array();
      const std::size_t nb = all_vectors ? r.bases.size() : std::min<std::size_t>(1, r.bases.size());
      for (std::size_t i = 0; i < nb; ++i) {
        Json b;
        b["indices"] = to_json(r.bases[i].indices);
        b["gamma"] = r.bases[i].gamma;
        bases.push_back(b);
      }
      w["bases"] = bases;
      break;
    }
    case CosineCase::negative:
      w["hull_weights"] = to_json(r.hull_weights);
      w["kkt_residual"] = r.kkt_residual;
      break;
    case CosineCase::zero:
      w["null_witness"] = r.null_witness ? to_json(*r.null_witness) : Json(nullptr);
      break;
  }
  j["witness"] = w;
  if (!r.zero_projection.empty()) j["zero_projection"] = to_json(r.zero_projection);
  if (r.projected_value) j["projected_value"] = *r.projected_value;
  j["bases_examined"] = r.bases_examined;
  j["bases_skipped"] = r.bases_skipped;
  return j;
}

Json to_json(const FailedPollAdvice& a) {
  Json j;
  j["w"] = to_json(a.w);
  Json s;
  s["vectors"] = rows_json(a.single);
  s["certificate"] = to_json(a.single_certificate);
  s["cosine_measure"] = a.single_cosine.value;
  j["single"] = s;
  Json m;
  m["vectors"] = rows_json(a.mirrored);
  m["certificate"] = to_json(a.mirrored_certificate);
  m["cosine_measure"] = a.mirrored_cosine.value;
  j["mirrored"] = m;
  return j;
}

Json to_json(const oracle::SampledCosine& s) {
  Json j;
  j["value"] = s.value;
  j["argmin"] = to_json(s.argmin);
  j["evaluated"] = s.evaluated;
  return j;
}

Json to_json(const oracle::KktMinNorm& k) {
  Json j;
  j["norm"] = k.norm;
  j["point"] = to_json(k.point);
  j["weights"] = to_json(k.weights);
  j["support"] = to_json(k.support);
  j["kkt_violation"] = k.kkt_violation;
  j["subsets"] = k.subsets;
  return j;
}

}  // namespace pspankit::cli
