#include "reports.hpp"

#include <json.hpp>

#include "acceptance.hpp"
#include "criterion.hpp"
#include "green.hpp"
#include "harnack.hpp"
#include "solver.hpp"

namespace greenforge::reports {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, const std::string& what,
                         std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) {
    throw Error::parse(what + " must be a JSON object");
  }
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || it.key() == k;
    if (!ok) throw Error::parse("unknown key '" + it.key() + "' in " + what);
  }
}

json parse_params(const std::string& s, const std::string& what) {
  json j = json::parse(s, nullptr, false);
  if (j.is_discarded()) throw Error::parse("malformed JSON in " + what);
  return j;
}

double need_number(const json& obj, const char* key, const std::string& what) {
  if (!obj.contains(key) || !obj[key].is_number()) {
    throw Error::parse(what + " needs numeric '" + std::string(key) + "'");
  }
  return obj[key].get<double>();
}

std::shared_ptr<const PolarGrid> grid_from(const json& g) {
  reject_unknown_keys(g, "grid", {"M", "N", "r0", "R"});
  return PolarGrid::log_spaced(need_number(g, "r0", "grid"),
                               need_number(g, "R", "grid"),
                               static_cast<int>(need_number(g, "M", "grid")),
                               static_cast<int>(need_number(g, "N", "grid")));
}

json trace_json(const CriterionTrace& tr) {
  json rows = json::array();
  for (std::size_t i = 0; i < tr.radii.size(); ++i) {
    rows.push_back({{"r", tr.radii[i]}, {"F", tr.factors[i]}});
  }
  return rows;
}

json checks_json(const std::vector<WitnessCheck>& checks) {
  json arr = json::array();
  for (const auto& ch : checks) {
    arr.push_back({{"name", ch.name},
                   {"value", ch.value},
                   {"bound", ch.bound},
                   {"pass", ch.pass}});
  }
  return arr;
}

json witness_json(const WitnessReport& rep) {
  return {{"accepted", rep.accepted},
          {"checks", checks_json(rep.checks)},
          {"distinctness", rep.distinctness},
          {"message", rep.message}};
}

LipschitzProfile profile_from(const json& params, const char* key, int n) {
  if (params.contains("samples") && std::string(key) == "profile") {
    if (!params["samples"].is_array()) {
      throw Error::parse("'samples' must be an array");
    }
    return LipschitzProfile::from_samples(
        params["samples"].get<std::vector<double>>());
  }
  std::string name =
      params.contains(key) ? params[key].get<std::string>() : "zero";
  return LipschitzProfile::named(name, n);
}

}  // namespace

std::string criterion_report(const std::string& weight_spec, double p) {
  MeasureProfile prof(WeightModel::parse(weight_spec));
  auto tr = classify_uniqueness(prof, p);
  json out{{"weight", weight_spec},
           {"p", p},
           {"classification", to_string(tr.classification)},
           {"rule", tr.rule},
           {"window",
            {{"q_lower_sup", tr.window.q_lower_sup},
             {"q_upper_inf", tr.window.q_upper_inf}}},
           {"trace", trace_json(tr)}};
  if (tr.probe_classification) {
    out["probe_classification"] = to_string(*tr.probe_classification);
  }
  return out.dump();
}

std::string capacity_report(const std::string& weight_spec, double p, double r,
                            double R) {
  MeasureProfile prof(WeightModel::parse(weight_spec));
  auto cap = ring_capacity_radial(prof, p, r, R);
  json out{{"weight", weight_spec},
           {"p", p},
           {"r", r},
           {"R", R},
           {"value", cap.value},
           {"method", to_string(cap.method)},
           {"error_estimate", cap.error_estimate}};
  return out.dump();
}

std::string profile_csv(const std::string& weight_spec) {
  MeasureProfile prof(WeightModel::parse(weight_spec));
  return prof.table_csv();
}

std::string solve_report(const std::string& params_json,
                         std::string* field_csv_out) {
  json params = parse_params(params_json, "solve spec");
  reject_unknown_keys(params, "solve spec",
                      {"weight", "p", "norm", "grid", "bc", "schedule",
                       "stop_tol", "max_iters", "threads"});
  MeasureProfile prof(
      WeightModel::parse(params.at("weight").get<std::string>()));
  SolveSpec spec;
  spec.profile = &prof;
  spec.p = need_number(params, "p", "solve spec");
  spec.kind = grad_norm_kind_from(params.at("norm").get<std::string>());
  spec.grid = grid_from(params.at("grid"));
  if (params.contains("schedule")) {
    spec.opts.schedule = params["schedule"].get<std::vector<double>>();
  }
  if (params.contains("stop_tol")) {
    spec.opts.stop_tol = params["stop_tol"].get<double>();
  }
  if (params.contains("max_iters")) {
    spec.opts.max_iters = params["max_iters"].get<long>();
  }
  if (params.contains("threads")) {
    spec.opts.n_threads = params["threads"].get<int>();
  }

  const json& bc = params.at("bc");
  std::string kind = bc.at("kind").get<std::string>();
  const int N = spec.grid->N();
  auto circle_values = [&](const json& v) {
    if (v.is_number()) return std::vector<double>(N, v.get<double>());
    auto vec = v.get<std::vector<double>>();
    if (static_cast<int>(vec.size()) != N) {
      throw Error::parse("dirichlet boundary array must have N entries");
    }
    return vec;
  };
  if (kind == "capacitary_ring") {
    reject_unknown_keys(bc, "bc", {"kind", "inner", "outer"});
    spec.bc = BoundaryCondition::capacitary_ring(
        bc.value("inner", 1.0), bc.value("outer", 0.0));
  } else if (kind == "dirichlet") {
    reject_unknown_keys(bc, "bc", {"kind", "inner", "outer"});
    spec.bc = BoundaryCondition::dirichlet(circle_values(bc.at("inner")),
                                           circle_values(bc.at("outer")));
  } else if (kind == "superlevel") {
    reject_unknown_keys(bc, "bc", {"kind", "field_csv", "level"});
    auto src = ScalarField::from_csv(bc.at("field_csv").get<std::string>());
    double level = need_number(bc, "level", "bc");
    auto sl = superlevel_capacity(src, level, spec.p, spec.kind, prof,
                                  spec.opts);
    if (field_csv_out) *field_csv_out = sl.solve.field.to_csv();
    json out{{"energy", sl.cap.value},
             {"error_estimate", sl.cap.error_estimate},
             {"iterations", sl.solve.iterations},
             {"effective_level", sl.effective_level},
             {"marked_count", sl.marked_count},
             {"stage_energies", sl.solve.stage_energies}};
    return out.dump();
  } else {
    throw Error::parse("unknown bc kind '" + kind + "'");
  }

  auto res = minimize_p_energy(spec);
  if (field_csv_out) *field_csv_out = res.field.to_csv();
  json out{{"energy", res.energy.value},
           {"error_estimate", res.energy.error_estimate},
           {"iterations", res.iterations},
           {"stage_energies", res.stage_energies},
           {"max_norm_energy", res.max_norm_energy}};
  return out.dump();
}

std::string green_report(const std::string& params_json) {
  json params = parse_params(params_json, "green params");
  reject_unknown_keys(params, "green params",
                      {"p", "alpha", "R", "unbounded", "profile", "samples",
                       "normalize", "levels", "grid", "eval", "trace"});
  double p = need_number(params, "p", "green params");
  double alpha = need_number(params, "alpha", "green params");
  int n = 96;
  if (params.contains("grid")) {
    n = static_cast<int>(need_number(params["grid"], "N", "grid"));
  }
  auto profile = profile_from(params, "profile", n);
  bool unbounded = params.value("unbounded", false);
  GreenCandidate cand =
      unbounded ? GreenCandidate::unbounded(p, alpha, profile)
                : GreenCandidate::bounded(
                      p, alpha, params.value("R", 1.0), profile);

  json out{{"p", p},
           {"alpha", alpha},
           {"a_p", cand.a_p},
           {"profile", profile.name()},
           {"bounded", cand.is_bounded()}};
  if (cand.is_bounded()) out["R"] = cand.R;

  if (params.value("normalize", false)) {
    if (!cand.is_bounded()) {
      throw Error::domain("normalization needs a bounded domain");
    }
    NormalizeOptions nopts;
    if (params.contains("levels")) {
      nopts.levels = params["levels"].get<std::vector<double>>();
    }
    if (params.contains("grid")) {
      const json& g = params["grid"];
      reject_unknown_keys(g, "grid", {"M", "N"});
      nopts.grid_m = static_cast<int>(need_number(g, "M", "grid"));
      nopts.grid_n = static_cast<int>(need_number(g, "N", "grid"));
    }
    auto rep = normalize_to_green(cand, nopts);
    json probes = json::array();
    for (const auto& pr : rep.probes) {
      probes.push_back({{"level", pr.level},
                        {"effective_level", pr.effective_level},
                        {"capacity", pr.capacity},
                        {"A_estimate", pr.a_estimate}});
    }
    out["normalization"] = {{"A", rep.A},
                            {"spread", rep.spread},
                            {"probes", probes}};
  }

  if (params.contains("eval")) {
    json evals = json::array();
    for (const auto& pt : params["eval"]) {
      double r = pt.at(0).get<double>();
      double th = pt.at(1).get<double>();
      evals.push_back({{"r", r},
                       {"theta", th},
                       {"value", cand.value(r, th)},
                       {"minimal_gradient", cand.minimal_gradient(r, th)}});
    }
    out["eval"] = evals;
  }

  if (params.contains("trace")) {
    const json& tr = params["trace"];
    reject_unknown_keys(tr, "trace", {"radii", "R_cap"});
    auto radii = tr.at("radii").get<std::vector<double>>();
    double rcap = need_number(tr, "R_cap", "trace");
    MeasureProfile prof(WeightModel::power(alpha));
    json rows = json::array();
    for (const auto& row : ratio_trace(cand, radii, rcap, prof)) {
      rows.push_back({{"r", row.r},
                      {"m", row.m},
                      {"M", row.M},
                      {"cap_pow", row.cap_pow}});
    }
    out["trace"] = rows;
  }
  return out.dump();
}

std::string witness_nonuniqueness_report(const std::string& params_json) {
  json params = parse_params(params_json, "witness params");
  reject_unknown_keys(params, "witness params",
                      {"p", "alpha", "R", "f1", "f2", "levels", "grid"});
  double p = need_number(params, "p", "witness params");
  double alpha = need_number(params, "alpha", "witness params");
  double R = params.value("R", 1.0);
  NonuniquenessOptions opts;
  opts.normalize.levels = {4.0, 8.0, 16.0};
  if (params.contains("levels")) {
    opts.normalize.levels = params["levels"].get<std::vector<double>>();
  }
  if (params.contains("grid")) {
    const json& g = params["grid"];
    reject_unknown_keys(g, "grid", {"M", "N"});
    opts.normalize.grid_m = static_cast<int>(need_number(g, "M", "grid"));
    opts.normalize.grid_n = static_cast<int>(need_number(g, "N", "grid"));
  }
  int n = opts.normalize.grid_n;
  auto f1 = LipschitzProfile::named(params.value("f1", "zero"), n);
  auto f2 = LipschitzProfile::named(params.value("f2", "triangle"), n);
  auto rep = nonuniqueness_witness(p, alpha, R, f1, f2, opts);
  json out = witness_json(rep);
  out["kind"] = "nonuniqueness";
  out["p"] = p;
  out["alpha"] = alpha;
  out["R"] = R;
  return out.dump();
}

std::string witness_comparison_report(const std::string& params_json) {
  json params = parse_params(params_json, "witness params");
  reject_unknown_keys(params, "witness params",
                      {"p", "alpha", "second_profile", "grid"});
  double p = need_number(params, "p", "witness params");
  double alpha = need_number(params, "alpha", "witness params");
  ComparisonOptions opts;
  if (params.contains("second_profile")) {
    opts.second_profile = params["second_profile"].get<std::string>();
  }
  if (params.contains("grid")) {
    const json& g = params["grid"];
    reject_unknown_keys(g, "grid", {"M", "N"});
    opts.grid_m = static_cast<int>(need_number(g, "M", "grid"));
    opts.grid_n = static_cast<int>(need_number(g, "N", "grid"));
  }
  auto rep = comparison_witness(p, alpha, opts);
  json out = witness_json(rep);
  out["kind"] = "comparison";
  out["p"] = p;
  out["alpha"] = alpha;
  return out.dump();
}

std::string harnack_constants_report(double A, double lambda) {
  auto h = iteration_constants(A, lambda);
  json out{{"A", h.A},
           {"lambda", h.lambda},
           {"alpha_exp", h.alpha_exp},
           {"C0", h.C0}};
  return out.dump();
}

std::string harnack_decay_report(const std::string& field_csv, double cx,
                                 double cy, double radius,
                                 const std::vector<double>& deltas,
                                 double lambda) {
  auto field = ScalarField::from_csv(field_csv);
  auto trace = oscillation_decay(field, cx, cy, radius, deltas, lambda);
  json pts = json::array();
  for (const auto& pt : trace.points) {
    pts.push_back({{"delta", pt.delta},
                   {"ratio", pt.ratio},
                   {"within_hypothesis", pt.within_hypothesis}});
  }
  json out{{"center", {cx, cy}},
           {"radius", radius},
           {"lambda", lambda},
           {"points", pts}};
  if (trace.fitted_exponent) {
    out["fitted_exponent"] = *trace.fitted_exponent;
  }
  return out.dump();
}

std::string acceptance_report(const std::vector<int>& only) {
  auto outcomes = acceptance::run(only);
  json arr = json::array();
  bool all = true;
  for (const auto& oc : outcomes) {
    json checks = json::array();
    for (const auto& ch : oc.checks) {
      checks.push_back({{"name", ch.name},
                        {"value", ch.value},
                        {"bound", ch.bound},
                        {"relation", ch.relation},
                        {"pass", ch.pass}});
    }
    arr.push_back({{"id", oc.id},
                   {"description", oc.description},
                   {"pass", oc.pass},
                   {"seconds", oc.seconds},
                   {"checks", checks}});
    all = all && oc.pass;
  }
  json out{{"criteria", arr}, {"all_pass", all}};
  return out.dump();
}

}  // namespace greenforge::reports
