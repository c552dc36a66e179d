#include "greenforge.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "capacity.hpp"
#include "criterion.hpp"
#include "harnack.hpp"
#include "reports.hpp"
#include "weights.hpp"

namespace {

thread_local std::string g_last_error;

gf_status status_of(greenforge::ErrorKind k) {
  using greenforge::ErrorKind;
  switch (k) {
    case ErrorKind::Domain: return GF_ERR_DOMAIN;
    case ErrorKind::Range: return GF_ERR_RANGE;
    case ErrorKind::Parse: return GF_ERR_PARSE;
    case ErrorKind::Solver: return GF_ERR_SOLVER;
    case ErrorKind::Inconclusive: return GF_ERR_INCONCLUSIVE;
    case ErrorKind::Normalization: return GF_ERR_NORMALIZATION;
    case ErrorKind::Witness: return GF_ERR_WITNESS;
    case ErrorKind::Io: return GF_ERR_IO;
    case ErrorKind::Internal: return GF_ERR_INTERNAL;
  }
  return GF_ERR_INTERNAL;
}

template <typename Fn>
gf_status guarded(Fn&& fn) {
  try {
    fn();
    return GF_OK;
  } catch (const greenforge::Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return GF_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return GF_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

gf_status require(bool ok, const char* msg) {
  if (!ok) {
    g_last_error = msg;
    return GF_ERR_DOMAIN;
  }
  return GF_OK;
}

}  // namespace

struct gf_weight {
  greenforge::WeightModel model;
  greenforge::MeasureProfile profile;
};

extern "C" {

const char* gf_status_name(gf_status s) {
  switch (s) {
    case GF_OK: return "ok";
    case GF_ERR_DOMAIN: return "domain";
    case GF_ERR_RANGE: return "range";
    case GF_ERR_PARSE: return "parse";
    case GF_ERR_SOLVER: return "solver";
    case GF_ERR_INCONCLUSIVE: return "inconclusive";
    case GF_ERR_NORMALIZATION: return "normalization";
    case GF_ERR_WITNESS: return "witness";
    case GF_ERR_IO: return "io";
    case GF_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* gf_last_error(void) { return g_last_error.c_str(); }

void gf_string_free(char* s) { std::free(s); }

gf_status gf_weight_create(const char* spec, gf_weight** out) {
  if (auto rc = require(spec && out, "null argument")) return rc;
  return guarded([&] {
    auto model = greenforge::WeightModel::parse(spec);
    auto profile = greenforge::MeasureProfile(model);
    *out = new gf_weight{std::move(model), std::move(profile)};
  });
}

void gf_weight_destroy(gf_weight* w) { delete w; }

gf_status gf_weight_at(const gf_weight* w, double rho, double* out) {
  if (auto rc = require(w && out, "null argument")) return rc;
  return guarded([&] { *out = w->model.weight_at(rho); });
}

gf_status gf_mu_ball(const gf_weight* w, double r, double* out) {
  if (auto rc = require(w && out, "null argument")) return rc;
  return guarded([&] { *out = w->profile.mu_ball(r); });
}

gf_status gf_exponent_window(const gf_weight* w, double r_lo, double r_hi,
                             double* q_lower_sup, double* q_upper_inf) {
  if (auto rc = require(w && q_lower_sup && q_upper_inf, "null argument")) {
    return rc;
  }
  return guarded([&] {
    if (!(r_lo > 0.0 && r_hi > r_lo)) {
      throw greenforge::Error::domain("need 0 < r_lo < r_hi");
    }
    auto win = w->profile.exponent_window(std::log2(r_lo), std::log2(r_hi));
    *q_lower_sup = win.q_lower_sup;
    *q_upper_inf = win.q_upper_inf;
  });
}

gf_status gf_profile_csv(const gf_weight* w, char** csv_out) {
  if (auto rc = require(w && csv_out, "null argument")) return rc;
  return guarded([&] { *csv_out = dup_string(w->profile.table_csv()); });
}

gf_status gf_wiener_tail(const gf_weight* w, double p, double r, double upper,
                         double* out) {
  if (auto rc = require(w && out, "null argument")) return rc;
  return guarded([&] { *out = greenforge::wiener_tail(w->profile, p, r, upper); });
}

gf_status gf_criterion_factor(const gf_weight* w, double p, double r,
                              double* out) {
  if (auto rc = require(w && out, "null argument")) return rc;
  return guarded(
      [&] { *out = greenforge::criterion_factor(w->profile, p, r); });
}

gf_status gf_singleton_capacity_sign(const gf_weight* w, double p, int* sign) {
  if (auto rc = require(w && sign, "null argument")) return rc;
  return guarded([&] {
    auto rep = greenforge::singleton_capacity_sign(w->profile, p);
    *sign = rep.sign == greenforge::SingletonSign::Zero ? 0 : 1;
  });
}

gf_status gf_classify_uniqueness(const gf_weight* w, double p,
                                 char** json_out) {
  if (auto rc = require(w && json_out, "null argument")) return rc;
  return guarded([&] {
    *json_out = dup_string(
        greenforge::reports::criterion_report(w->model.spec_string(), p));
  });
}

gf_status gf_ring_capacity(const gf_weight* w, double p, double r, double R,
                           double* value, double* error_estimate,
                           int* is_closed_form) {
  if (auto rc = require(w && value, "null argument")) return rc;
  return guarded([&] {
    auto cap = greenforge::ring_capacity_radial(w->profile, p, r, R);
    *value = cap.value;
    if (error_estimate) *error_estimate = cap.error_estimate;
    if (is_closed_form) {
      *is_closed_form =
          cap.method == greenforge::CapacityResult::Method::ClosedForm ? 1 : 0;
    }
  });
}

gf_status gf_radial_green_constant(double alpha, double p, double* out) {
  if (auto rc = require(out != nullptr, "null argument")) return rc;
  return guarded([&] { *out = greenforge::radial_green_constant(alpha, p); });
}

gf_status gf_a_exponent(double p, double alpha, double* out) {
  if (auto rc = require(out != nullptr, "null argument")) return rc;
  return guarded([&] { *out = greenforge::a_exponent(p, alpha); });
}

gf_status gf_solve(const char* spec_json, char** result_json,
                   char** field_csv_out) {
  if (auto rc = require(spec_json && result_json, "null argument")) return rc;
  return guarded([&] {
    std::string field;
    std::string result = greenforge::reports::solve_report(
        spec_json, field_csv_out ? &field : nullptr);
    *result_json = dup_string(result);
    if (field_csv_out) *field_csv_out = dup_string(field);
  });
}

gf_status gf_green(const char* params_json, char** json_out) {
  if (auto rc = require(params_json && json_out, "null argument")) return rc;
  return guarded([&] {
    *json_out = dup_string(greenforge::reports::green_report(params_json));
  });
}

gf_status gf_witness_nonuniqueness(const char* params_json, char** json_out) {
  if (auto rc = require(params_json && json_out, "null argument")) return rc;
  return guarded([&] {
    *json_out = dup_string(
        greenforge::reports::witness_nonuniqueness_report(params_json));
  });
}

gf_status gf_witness_comparison(const char* params_json, char** json_out) {
  if (auto rc = require(params_json && json_out, "null argument")) return rc;
  return guarded([&] {
    *json_out = dup_string(
        greenforge::reports::witness_comparison_report(params_json));
  });
}

gf_status gf_harnack_constants(double A, double lambda, double* alpha_exp,
                               double* C0) {
  if (auto rc = require(alpha_exp && C0, "null argument")) return rc;
  return guarded([&] {
    auto h = greenforge::iteration_constants(A, lambda);
    *alpha_exp = h.alpha_exp;
    *C0 = h.C0;
  });
}

gf_status gf_harnack_decay(const char* field_csv, double cx, double cy,
                           double radius, const double* deltas, int n_deltas,
                           double lambda, char** json_out) {
  if (auto rc = require(field_csv && deltas && n_deltas > 0 && json_out,
                        "null argument")) {
    return rc;
  }
  return guarded([&] {
    std::vector<double> d(deltas, deltas + n_deltas);
    *json_out = dup_string(greenforge::reports::harnack_decay_report(
        field_csv, cx, cy, radius, d, lambda));
  });
}

gf_status gf_acceptance_report(const int* only, int n_only, char** json_out) {
  if (auto rc = require(json_out != nullptr, "null argument")) return rc;
  return guarded([&] {
    std::vector<int> ids;
    for (int i = 0; i < n_only; ++i) ids.push_back(only[i]);
    *json_out = dup_string(greenforge::reports::acceptance_report(ids));
  });
}

}  // extern "C"
