#include "pspankit/cli/commands.hpp"

#include "pspankit/bounds.hpp"
#include "pspankit/cli/io.hpp"
#include "pspankit/cli/report.hpp"
#include "pspankit/cosine.hpp"
#include "pspankit/linalg.hpp"
#include "pspankit/oracle.hpp"
#include "pspankit/spanning.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>

namespace pspankit::cli {

namespace {

constexpr double kOracleSlack = 1e-6;

struct Common {
  std::string input;
  Overrides flags;
  bool timing = false;
};

struct Reference {
  std::string subspace_file;
  bool span = false;
  bool full = false;
};

struct Context {
  InputDocument doc;
  DirectionSet d;
  Tolerances tol;
  EnumerationBudget budget;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("input", c.input, "direction set file (.json or .csv), '-' for stdin")->required();
  sub->add_option("--rank-tol", c.flags.rank_tol, "relative singular-value cutoff");
  sub->add_option("--zero-tol", c.flags.zero_tol, "norm below which a vector counts as zero");
  sub->add_option("--active-tol", c.flags.active_tol, "tolerance for active sets and ties");
  sub->add_option("--feas-tol", c.flags.feas_tol, "relative NNLS residual accepted as feasible");
  sub->add_option("--gap-tol", c.flags.gap_tol, "min-norm duality gap tolerance");
  sub->add_option("--max-bases", c.flags.max_bases, "cap on enumerated bases");
  sub->add_flag("--timing", c.timing, "append wall-clock timing to the report");
}

void add_reference(CLI::App* sub, Reference& r) {
  auto* s = sub->add_option("--subspace", r.subspace_file, "file with rows spanning the reference subspace");
  auto* sp = sub->add_flag("--span", r.span, "reference subspace span(D)");
  auto* fs = sub->add_flag("--full-space", r.full, "reference subspace R^n");
  s->excludes(sp)->excludes(fs);
  sp->excludes(fs);
}

Context load(const Common& c, std::istream& in) {
  InputDocument doc = read_input(c.input, in);
  Tolerances tol;
  EnumerationBudget budget;
  doc.overrides.apply_to(tol, budget);
  environment_overrides().apply_to(tol, budget);
  c.flags.apply_to(tol, budget);
  tol.validate();
  if (budget.max_bases == 0) throw InputError("max_bases must be positive");
  DirectionSet d = to_directions(doc, tol);
  return Context{std::move(doc), std::move(d), tol, budget};
}

Json header(const char* command, const Context& ctx) {
  Json j;
  j["command"] = command;
  j["dimension"] = ctx.d.dim();
  j["count"] = ctx.d.size();
  j["tolerances"] = to_json(ctx.tol, ctx.d.dim(), ctx.d.size());
  j["max_bases"] = ctx.budget.max_bases;
  return j;
}

struct ResolvedReference {
  std::string name;
  std::optional<Subspace> subspace;  // empty: span(D)
};

ResolvedReference resolve(const Reference& r, const Context& ctx, std::istream& in) {
  if (r.full) return {"full_space", Subspace::full(ctx.d.dim())};
  if (!r.subspace_file.empty()) return {"subspace", to_subspace(read_rows(r.subspace_file, in), ctx.d.dim(), ctx.tol)};
  if (!r.span && ctx.doc.subspace) return {"subspace", to_subspace(*ctx.doc.subspace, ctx.d.dim(), ctx.tol)};
  return {"span", std::nullopt};
}

CosineReport compute(const ResolvedReference& ref, const Context& ctx) {
  if (ref.subspace) return compute_cosine_measure_relative(ctx.d, *ref.subspace, ctx.tol, ctx.budget);
  return compute_cosine_measure_span(ctx.d, ctx.tol, ctx.budget);
}

Subspace reference_subspace(const ResolvedReference& ref, const Context& ctx) {
  return ref.subspace ? *ref.subspace : Subspace::span_of(ctx.d, ctx.tol);
}

Json budget_json(const BudgetExceeded& e) {
  Json j;
  j["error"] = "budget_exceeded";
  j["required"] = e.required();
  j["allowed"] = e.allowed();
  return j;
}

int cmd_pspan(const Common& c, std::istream& in, std::ostream& out, Json& rep) {
  (void)out;
  const Context ctx = load(c, in);
  rep = header("pspan", ctx);
  const SpanningCertificate cert = is_positive_spanning(ctx.d, ctx.tol);
  rep["certificate"] = to_json(cert);
  return cert.is_positive_spanning ? exit_ok : exit_not_spanning;
}

struct CosineFlags {
  Reference ref;
  std::size_t oracle_samples = 0;
  std::uint64_t seed = oracle::kDefaultSeed;
  bool all_vectors = false;
};

int cmd_cosine(const Common& c, const CosineFlags& f, std::istream& in, std::ostream& err, Json& rep) {
  const Context ctx = load(c, in);
  rep = header("cosine", ctx);
  const ResolvedReference ref = resolve(f.ref, ctx, in);
  rep["reference"] = ref.name;
  if (ref.subspace) rep["subspace_basis"] = rows_json(ref.subspace->basis());
  CosineReport cm;
  try {
    cm = compute(ref, ctx);
  } catch (const BudgetExceeded& e) {
    rep["cosine"] = budget_json(e);
    err << "pspankit: " << e.what() << "\n";
    return exit_budget;
  }
  rep["cosine"] = to_json(cm, f.all_vectors);
  if (cm.certificate) rep["certificate"] = to_json(*cm.certificate);

  if (f.oracle_samples > 0) {
    const oracle::SampledCosine s =
        oracle::sampled_cosine_measure(ctx.d, reference_subspace(ref, ctx), f.oracle_samples, f.seed, true);
    Json o = to_json(s);
    o["samples"] = f.oracle_samples;
    o["seed"] = f.seed;
    o["gap"] = s.value - cm.value;
    o["consistent"] = s.value >= cm.value - kOracleSlack;
    if (s.value < cm.value - kOracleSlack) {
      err << "pspankit: diagnostic: sampled value " << s.value << " is below the computed value " << cm.value
          << "; the computed cosine measure is not trustworthy for this input\n";
    }
    rep["oracle"] = o;
  }
  return exit_ok;
}

int cmd_extend(const Common& c, const std::string& mode, std::istream& in, Json& rep) {
  const Context ctx = load(c, in);
  rep = header("extend", ctx);
  rep["mode"] = mode;
  const DirectionSet ext =
      extend_to_positive_spanning(ctx.d, mode == "mirror" ? ExtendMode::mirror_basis : ExtendMode::single_vector, ctx.tol);
  const Matrix& m = ext.matrix();
  rep["appended"] = rows_json(m.rightCols(m.cols() - static_cast<Eigen::Index>(ctx.d.size())));
  rep["vectors"] = rows_json(m);
  rep["certificate"] = to_json(is_positive_spanning(ext, ctx.tol));
  return exit_ok;
}

struct BoundFlags {
  std::optional<double> lip_grad;
  std::optional<double> lip_hess;
  std::optional<double> delta;
  int order = 1;
};

int cmd_bound(const Common& c, const BoundFlags& f, std::istream& in, std::ostream& err, Json& rep) {
  const Context ctx = load(c, in);
  rep = header("bound", ctx);
  rep["order"] = f.order;
  if (f.order == 1 && !f.lip_grad) throw InputError("--lip-grad is required with --order 1");
  if (f.order == 2 && !f.lip_hess) throw InputError("--lip-hess is required with --order 2");

  BoundInputs bi;
  bi.delta = f.delta ? *f.delta : radius(ctx.d);
  bi.lip_grad = f.lip_grad;
  bi.lip_hess = f.lip_hess;

  CosineReport cm;
  try {
    cm = compute_cosine_measure_span(ctx.d, ctx.tol, ctx.budget);
  } catch (const BudgetExceeded& e) {
    rep["cosine"] = budget_json(e);
    err << "pspankit: " << e.what() << "\n";
    return exit_budget;
  }
  bi.cm_value = cm.value;
  rep["cosine_measure"] = cm.value;
  rep["case"] = to_string(cm.kind);
  rep["delta"] = bi.delta;
  if (bi.lip_grad) rep["lip_grad"] = *bi.lip_grad;
  if (bi.lip_hess) rep["lip_hess"] = *bi.lip_hess;

  if (cm.kind != CosineCase::positive) {
    rep["bound"] = nullptr;
    err << "pspankit: cosine measure " << cm.value << " is not positive; no bound, see advice\n";
    try {
      rep["advice"] = to_json(failed_poll_advice(ctx.d, ctx.tol, ctx.budget));
    } catch (const Error& e) {
      rep["advice"] = nullptr;
      err << "pspankit: " << e.what() << "\n";
    }
    return exit_bound_unavailable;
  }

  if (f.order == 1) {
    rep["bound"] = first_order_bound(bi);
    return exit_ok;
  }
  std::vector<double> alpha;
  try {
    alpha = symmetry_factors(ctx.d);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::asymmetric_set) throw;
    rep["bound"] = nullptr;
    rep["error"] = "asymmetric_set";
    rep["message"] = e.what();
    err << "pspankit: " << e.what() << "\n";
    return exit_asymmetric;
  }
  rep["symmetry_factors"] = to_json(Vector(Eigen::Map<const Vector>(alpha.data(), static_cast<Eigen::Index>(alpha.size()))));
  rep["alpha_max"] = *std::max_element(alpha.begin(), alpha.end());
  rep["bound"] = second_order_bound(bi, alpha);
  return exit_ok;
}

int cmd_analyze(const Common& c, std::istream& in, std::ostream& err, Json& rep) {
  const Context ctx = load(c, in);
  rep = header("analyze", ctx);
  rep["radius"] = radius(ctx.d);
  rep["span_dim"] = linalg::span_dimension(ctx.d, ctx.tol);
  const SpanningCertificate cert = is_positive_spanning(ctx.d, ctx.tol);
  rep["spanning"] = to_json(cert);
  rep["independence"] = to_json(is_positively_independent(ctx.d, ctx.tol));

  int code = exit_ok;
  try {
    const CosineReport cm = compute_cosine_measure_span(ctx.d, ctx.tol, ctx.budget);
    rep["cosine"] = to_json(cm, true);
    if (cm.kind == CosineCase::zero) {
      const auto sub = find_positive_spanning_subset(ctx.d, ctx.tol, ctx.budget);
      rep["subset"] = sub ? to_json(*sub) : Json(nullptr);
    } else {
      rep["subset"] = nullptr;
    }
    Json checks;
    if (cm.kind == CosineCase::positive) {
      checks["active_set_spans"] = std::all_of(cm.active_set_spans.begin(), cm.active_set_spans.end(), [](bool b) { return b; });
    } else {
      checks["active_set_spans"] = nullptr;
    }
    checks["sign_consistent"] = (cm.kind == CosineCase::positive) == cert.is_positive_spanning;
    rep["checks"] = checks;
  } catch (const BudgetExceeded& e) {
    rep["cosine"] = budget_json(e);
    err << "pspankit: " << e.what() << "\n";
    code = exit_budget;
  }
  return code;
}

struct OracleFlags {
  Reference ref;
  std::size_t samples = 10000;
  std::uint64_t seed = oracle::kDefaultSeed;
  bool refine = false;
  bool kkt = false;
  bool subsets = false;
};

int cmd_oracle(const Common& c, const OracleFlags& f, std::istream& in, Json& rep) {
  const Context ctx = load(c, in);
  rep = header("oracle", ctx);
  const ResolvedReference ref = resolve(f.ref, ctx, in);
  rep["reference"] = ref.name;
  const Subspace l = reference_subspace(ref, ctx);
  if (f.samples == 0) throw InputError("--samples must be at least 1");
  Json s = to_json(oracle::sampled_cosine_measure(ctx.d, l, f.samples, f.seed, f.refine));
  s["samples"] = f.samples;
  s["seed"] = f.seed;
  s["refined"] = f.refine;
  rep["sampled"] = s;
  if (f.kkt) {
    const oracle::KktMinNorm k = oracle::kkt_min_norm_oracle(l.basis().transpose() * ctx.d.normalized());
    Json kj = to_json(k);
    kj["value"] = -k.norm;
    rep["kkt"] = kj;
  }
  if (f.subsets) {
    Json a = Json::array();
    for (const IndexList& v : oracle::exhaustive_pspan_subset_check(ctx.d, ctx.tol)) a.push_back(to_json(v));
    rep["subsets"] = a;
  }
  return exit_ok;
}

int exit_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::invalid_input:
    case ErrorCode::degenerate_subspace:
    case ErrorCode::too_many_points: return exit_input;
    case ErrorCode::budget_exceeded: return exit_budget;
    case ErrorCode::nonpositive_cosine_measure: return exit_bound_unavailable;
    case ErrorCode::asymmetric_set: return exit_asymmetric;
    case ErrorCode::precondition_violated: return exit_internal;
  }
  return exit_internal;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Positive spanning sets and cosine measures", "pspankit"};
  app.require_subcommand(1);

  Common common;
  CosineFlags cf;
  std::string extend_mode = "single";
  BoundFlags bf;
  OracleFlags of;

  auto* pspan = app.add_subcommand("pspan", "certify that the vectors positively span their span");
  add_common(pspan, common);

  auto* cosine = app.add_subcommand("cosine", "cosine measure relative to a subspace");
  add_common(cosine, common);
  add_reference(cosine, cf.ref);
  cosine->add_option("--oracle", cf.oracle_samples, "cross-check with N sampled unit vectors");
  cosine->add_option("--seed", cf.seed, "sampling seed");
  cosine->add_flag("--all-vectors", cf.all_vectors, "report every cosine vector and minimizing basis");

  auto* extend = app.add_subcommand("extend", "complete the set to a positive spanning set");
  add_common(extend, common);
  extend->add_option("--mode", extend_mode, "single or mirror")->check(CLI::IsMember({"single", "mirror"}));

  auto* bound = app.add_subcommand("bound", "gradient error bound after a failed poll");
  add_common(bound, common);
  bound->add_option("--lip-grad", bf.lip_grad, "Lipschitz constant of the gradient");
  bound->add_option("--lip-hess", bf.lip_hess, "Lipschitz constant of the Hessian");
  bound->add_option("--delta", bf.delta, "poll radius (default: largest vector norm)");
  bound->add_option("--order", bf.order, "1 or 2")->check(CLI::IsMember({1, 2}));

  auto* analyze = app.add_subcommand("analyze", "composite report");
  add_common(analyze, common);

  auto* orc = app.add_subcommand("oracle", "brute-force verifiers");
  add_common(orc, common);
  add_reference(orc, of.ref);
  orc->add_option("--samples", of.samples, "number of sampled unit vectors");
  orc->add_option("--seed", of.seed, "sampling seed");
  orc->add_flag("--refine", of.refine, "refine the best sample by projected subgradient descent");
  orc->add_flag("--kkt", of.kkt, "exhaustive KKT min-norm point of the normalized directions");
  orc->add_flag("--subsets", of.subsets, "every subset that positively spans its own span");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_input;
  }

  const auto t0 = std::chrono::steady_clock::now();
  Json rep;
  int code = exit_ok;
  try {
    if (pspan->parsed()) code = cmd_pspan(common, in, out, rep);
    else if (cosine->parsed()) code = cmd_cosine(common, cf, in, err, rep);
    else if (extend->parsed()) code = cmd_extend(common, extend_mode, in, rep);
    else if (bound->parsed()) code = cmd_bound(common, bf, in, err, rep);
    else if (analyze->parsed()) code = cmd_analyze(common, in, err, rep);
    else code = cmd_oracle(common, of, in, rep);
  } catch (const InputError& e) {
    err << "pspankit: " << e.what() << "\n";
    return exit_input;
  } catch (const BudgetExceeded& e) {
    err << "pspankit: " << e.what() << "\n";
    return exit_budget;
  } catch (const Error& e) {
    err << "pspankit: " << to_string(e.code()) << ": " << e.what() << "\n";
    return exit_for(e);
  } catch (const std::exception& e) {
    err << "pspankit: internal error: " << e.what() << "\n";
    return exit_internal;
  }
  if (common.timing) {
    rep["timing_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  }
  rep["exit_code"] = code;
  out << rep.dump(2) << "\n";
  return code;
}

}  // namespace pspankit::cli
