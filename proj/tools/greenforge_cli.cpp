// greenforge command line: criterion / capacity / solve / green / witness /
// harnack / report.  All numerics live behind the shared-library C API; this
// binary only parses arguments, shuttles JSON and reads/writes files.

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "greenforge.h"

namespace {

using nlohmann::json;

int exit_code_for(gf_status st) {
  switch (st) {
    case GF_OK:
      return 0;
    case GF_ERR_SOLVER:
    case GF_ERR_NORMALIZATION:
    case GF_ERR_WITNESS:
      return 3;
    default:
      return 2;  // argument/domain/range/parse/io
  }
}

int fail(gf_status st) {
  json err{{"error",
            {{"status", gf_status_name(st)}, {"message", gf_last_error()}}}};
  std::cout << err.dump() << "\n";
  return exit_code_for(st);
}

std::string take(char* s) {
  std::string out = s ? s : "";
  gf_string_free(s);
  return out;
}

std::string iso_timestamp() {
  char buf[32];
  std::time_t now = std::time(nullptr);
  std::tm tm_utc;
  gmtime_r(&now, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

// every report leaves through here: one JSON object on stdout with a
// timestamp field (excluded from determinism comparisons), optionally
// duplicated to a file
int emit(const std::string& payload, const std::string& out_path) {
  json doc = json::parse(payload);
  doc["timestamp"] = iso_timestamp();
  std::string text = doc.dump();
  std::cout << text << "\n";
  if (!out_path.empty()) {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
      std::cerr << "cannot write " << out_path << "\n";
      return 2;
    }
    f << text << "\n";
  }
  return 0;
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return false;
  std::ostringstream ss;
  ss << f.rdbuf();
  out = ss.str();
  return true;
}

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) return false;
  f << content;
  return true;
}

int env_threads() {
  const char* v = std::getenv("GREENFORGE_THREADS");
  if (!v) return 1;
  int n = std::atoi(v);
  return n > 0 ? n : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-harmonic Green functions and capacities on weighted "
               "planar domains"};
  app.require_subcommand(1);

  std::string out_path;
  app.add_option("--out", out_path, "write the JSON report here as well");

  // criterion
  auto* cmd_criterion =
      app.add_subcommand("criterion", "uniqueness criterion classification");
  std::string weight = "power:0";
  double p = 2.0;
  cmd_criterion->add_option("--weight", weight, "power:<a> | osc:<a,b,c,d>")
      ->required();
  cmd_criterion->add_option("--p", p, "exponent p > 1")->required();

  // capacity
  auto* cmd_capacity =
      app.add_subcommand("capacity", "radial ring capacity, closed form");
  double cap_r = 0.1, cap_R = 1.0;
  cmd_capacity->add_option("--weight", weight)->required();
  cmd_capacity->add_option("--p", p)->required();
  cmd_capacity->add_option("--r", cap_r, "inner radius")->required();
  cmd_capacity->add_option("--R", cap_R, "outer radius")->required();

  // profile export
  auto* cmd_profile =
      app.add_subcommand("profile", "export the measure profile as CSV");
  std::string csv_out;
  cmd_profile->add_option("--weight", weight)->required();
  cmd_profile->add_option("--csv-out", csv_out, "CSV destination")->required();

  // solve
  auto* cmd_solve = app.add_subcommand("solve", "variational p-energy solve");
  std::string spec_path, field_out;
  cmd_solve->add_option("--spec", spec_path, "JSON solve spec file")
      ->required();
  cmd_solve->add_option("--field-out", field_out, "solved field CSV path");

  // green
  auto* cmd_green =
      app.add_subcommand("green", "evaluate / normalize a Green candidate");
  double g_alpha = 0.0, g_R = 1.0;
  std::string g_profile = "zero";
  bool g_unbounded = false, g_normalize = false;
  std::vector<double> g_levels;
  std::vector<std::string> g_eval;
  std::vector<double> g_trace_radii;
  double g_trace_rcap = 1.0;
  std::vector<int> g_grid;
  int g_m = 160, g_n = 96;
  cmd_green->add_option("--p", p)->required();
  cmd_green->add_option("--alpha", g_alpha)->required();
  cmd_green->add_option("--R", g_R, "outer radius of the bounded domain");
  cmd_green->add_flag("--unbounded", g_unbounded, "whole-plane variant");
  cmd_green->add_option("--profile", g_profile, "zero | triangle");
  cmd_green->add_flag("--normalize", g_normalize,
                      "variational normalization to a Green function");
  cmd_green->add_option("--levels", g_levels,
                        "raw-scale levels for normalization");
  cmd_green->add_option("--grid", g_grid, "normalization grid M N")
      ->expected(2);
  cmd_green
      ->add_option("--eval", g_eval, "evaluation points r,theta (repeatable)")
      ->take_all();
  cmd_green->add_option("--trace-radii", g_trace_radii,
                        "circle radii for the ratio trace");
  cmd_green->add_option("--trace-Rcap", g_trace_rcap,
                        "capacity reference radius");

  // witness
  auto* cmd_witness = app.add_subcommand("witness", "uniqueness witnesses");
  cmd_witness->require_subcommand(1);
  auto* cmd_nonuniq = cmd_witness->add_subcommand(
      "nonuniqueness", "two distinct normalized Green candidates");
  std::string f1 = "zero", f2 = "triangle";
  double w_R = 1.0;
  std::vector<double> w_levels;
  cmd_nonuniq->add_option("--p", p)->required();
  cmd_nonuniq->add_option("--alpha", g_alpha)->required();
  cmd_nonuniq->add_option("--R", w_R);
  cmd_nonuniq->add_option("--f1", f1, "first profile");
  cmd_nonuniq->add_option("--f2", f2, "second profile");
  cmd_nonuniq->add_option("--levels", w_levels, "normalization levels");
  auto* cmd_compare = cmd_witness->add_subcommand(
      "comparison", "strong comparison principle failure");
  std::string second = "triangle";
  cmd_compare->add_option("--p", p)->required();
  cmd_compare->add_option("--alpha", g_alpha)->required();
  cmd_compare->add_option("--f2", second, "second profile");

  // harnack
  auto* cmd_harnack =
      app.add_subcommand("harnack", "iteration constants / decay probe");
  double h_A = 2.0, h_lambda = 1.0, h_radius = 0.3;
  std::string probe_path;
  std::vector<double> h_center{0.45, 0.15};
  std::vector<double> h_deltas{0.2, 0.1, 0.05};
  cmd_harnack->add_option("--A", h_A, "Harnack constant A > 1");
  cmd_harnack->add_option("--lambda", h_lambda, "Poincare dilation >= 1");
  cmd_harnack->add_option("--probe", probe_path, "field CSV to probe");
  cmd_harnack->add_option("--center", h_center, "probe ball centre x y")
      ->expected(2);
  cmd_harnack->add_option("--radius", h_radius, "probe ball radius");
  cmd_harnack->add_option("--deltas", h_deltas, "dilation fractions");

  // report
  auto* cmd_report =
      app.add_subcommand("report", "full acceptance-suite run as JSON");
  std::vector<int> only;
  cmd_report->add_option("--only", only, "criteria ids to run (default all)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_criterion) {
      gf_weight* w = nullptr;
      gf_status st = gf_weight_create(weight.c_str(), &w);
      if (st != GF_OK) return fail(st);
      char* out = nullptr;
      st = gf_classify_uniqueness(w, p, &out);
      gf_weight_destroy(w);
      if (st != GF_OK) return fail(st);
      return emit(take(out), out_path);
    }

    if (*cmd_capacity) {
      gf_weight* w = nullptr;
      gf_status st = gf_weight_create(weight.c_str(), &w);
      if (st != GF_OK) return fail(st);
      double value = 0.0, err = 0.0;
      int closed = 0;
      st = gf_ring_capacity(w, p, cap_r, cap_R, &value, &err, &closed);
      gf_weight_destroy(w);
      if (st != GF_OK) return fail(st);
      json doc{{"weight", weight}, {"p", p},           {"r", cap_r},
               {"R", cap_R},       {"value", value},   {"error_estimate", err},
               {"method", closed ? "closed_form" : "variational"}};
      return emit(doc.dump(), out_path);
    }

    if (*cmd_profile) {
      gf_weight* w = nullptr;
      gf_status st = gf_weight_create(weight.c_str(), &w);
      if (st != GF_OK) return fail(st);
      char* csv = nullptr;
      st = gf_profile_csv(w, &csv);
      gf_weight_destroy(w);
      if (st != GF_OK) return fail(st);
      std::string content = take(csv);
      if (!write_file(csv_out, content)) {
        std::cerr << "cannot write " << csv_out << "\n";
        return 2;
      }
      json doc{{"weight", weight}, {"csv", csv_out},
               {"rows", std::count(content.begin(), content.end(), '\n') - 1}};
      return emit(doc.dump(), out_path);
    }

    if (*cmd_solve) {
      std::string spec;
      if (!read_file(spec_path, spec)) {
        std::cerr << "cannot read " << spec_path << "\n";
        return 2;
      }
      json sj = json::parse(spec, nullptr, false);
      if (sj.is_discarded()) return fail(GF_ERR_PARSE);
      if (!sj.contains("threads")) sj["threads"] = env_threads();
      // a superlevel bc may reference a field file; inline it for the library
      if (sj.contains("bc") && sj["bc"].value("kind", "") == "superlevel" &&
          sj["bc"].contains("field")) {
        std::string fcsv;
        if (!read_file(sj["bc"]["field"], fcsv)) {
          std::cerr << "cannot read " << sj["bc"]["field"] << "\n";
          return 2;
        }
        sj["bc"].erase("field");
        sj["bc"]["field_csv"] = fcsv;
      }
      char* result = nullptr;
      char* field = nullptr;
      gf_status st = gf_solve(sj.dump().c_str(), &result,
                              field_out.empty() ? nullptr : &field);
      if (st != GF_OK) return fail(st);
      std::string payload = take(result);
      if (!field_out.empty()) {
        if (!write_file(field_out, take(field))) {
          std::cerr << "cannot write " << field_out << "\n";
          return 2;
        }
      }
      return emit(payload, out_path);
    }

    if (*cmd_green) {
      json params{{"p", p}, {"alpha", g_alpha}, {"profile", g_profile}};
      if (g_unbounded) {
        params["unbounded"] = true;
      } else {
        params["R"] = g_R;
      }
      if (g_normalize) params["normalize"] = true;
      if (!g_levels.empty()) params["levels"] = g_levels;
      if (g_grid.size() == 2) {
        g_m = g_grid[0];
        g_n = g_grid[1];
      }
      if (g_normalize) params["grid"] = {{"M", g_m}, {"N", g_n}};
      if (!g_eval.empty()) {
        json pts = json::array();
        for (const auto& s : g_eval) {
          double r, th;
          if (std::sscanf(s.c_str(), "%lf,%lf", &r, &th) != 2) {
            std::cerr << "bad --eval point '" << s << "' (want r,theta)\n";
            return 2;
          }
          pts.push_back({r, th});
        }
        params["eval"] = pts;
      }
      if (!g_trace_radii.empty()) {
        params["trace"] = {{"radii", g_trace_radii}, {"R_cap", g_trace_rcap}};
      }
      char* out = nullptr;
      gf_status st = gf_green(params.dump().c_str(), &out);
      if (st != GF_OK) return fail(st);
      return emit(take(out), out_path);
    }

    if (*cmd_nonuniq) {
      json params{{"p", p}, {"alpha", g_alpha}, {"R", w_R},
                  {"f1", f1}, {"f2", f2}};
      if (!w_levels.empty()) params["levels"] = w_levels;
      char* out = nullptr;
      gf_status st = gf_witness_nonuniqueness(params.dump().c_str(), &out);
      if (st != GF_OK) return fail(st);
      std::string payload = take(out);
      int rc = emit(payload, out_path);
      if (rc != 0) return rc;
      return json::parse(payload).value("accepted", false) ? 0 : 3;
    }

    if (*cmd_compare) {
      json params{{"p", p}, {"alpha", g_alpha}, {"second_profile", second}};
      char* out = nullptr;
      gf_status st = gf_witness_comparison(params.dump().c_str(), &out);
      if (st != GF_OK) return fail(st);
      std::string payload = take(out);
      int rc = emit(payload, out_path);
      if (rc != 0) return rc;
      return json::parse(payload).value("accepted", false) ? 0 : 3;
    }

    if (*cmd_harnack) {
      if (!probe_path.empty()) {
        std::string fcsv;
        if (!read_file(probe_path, fcsv)) {
          std::cerr << "cannot read " << probe_path << "\n";
          return 2;
        }
        char* out = nullptr;
        gf_status st = gf_harnack_decay(
            fcsv.c_str(), h_center[0], h_center[1], h_radius, h_deltas.data(),
            static_cast<int>(h_deltas.size()), h_lambda, &out);
        if (st != GF_OK) return fail(st);
        return emit(take(out), out_path);
      }
      double alpha_exp = 0.0, c0 = 0.0;
      gf_status st = gf_harnack_constants(h_A, h_lambda, &alpha_exp, &c0);
      if (st != GF_OK) return fail(st);
      json doc{{"A", h_A},
               {"lambda", h_lambda},
               {"alpha_exp", alpha_exp},
               {"C0", c0}};
      return emit(doc.dump(), out_path);
    }

    if (*cmd_report) {
      char* out = nullptr;
      gf_status st = gf_acceptance_report(only.empty() ? nullptr : only.data(),
                                          static_cast<int>(only.size()), &out);
      if (st != GF_OK) return fail(st);
      return emit(take(out), out_path);
    }
  } catch (const std::exception& e) {
    json err{{"error", {{"status", "internal"}, {"message", e.what()}}}};
    std::cout << err.dump() << "\n";
    return 2;
  }
  return 2;
}
