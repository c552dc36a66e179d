#include "greenforge.h"

#include <cmath>
#include <cstring>
#include <string>

#include <json.hpp>

#include "doctest.h"

using nlohmann::json;

namespace {
constexpr double kPi = 3.14159265358979323846;

std::string take(char* s) {
  std::string out = s ? s : "";
  gf_string_free(s);
  return out;
}
}  // namespace

TEST_CASE("weight handles: create, evaluate, destroy") {
  gf_weight* w = nullptr;
  REQUIRE(gf_weight_create("power:1", &w) == GF_OK);
  double v = 0.0;
  CHECK(gf_weight_at(w, 0.5, &v) == GF_OK);
  CHECK(v == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(gf_mu_ball(w, 1.0, &v) == GF_OK);
  CHECK(v == doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-12));
  CHECK(gf_weight_at(w, -1.0, &v) == GF_ERR_DOMAIN);
  CHECK(std::strlen(gf_last_error()) > 0);
  double qlo = 0.0, qhi = 0.0;
  CHECK(gf_exponent_window(w, 1e-6, 1.0, &qlo, &qhi) == GF_OK);
  CHECK(qlo == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(qhi == doctest::Approx(3.0).epsilon(1e-10));
  gf_weight_destroy(w);

  gf_weight* bad = nullptr;
  CHECK(gf_weight_create("gauss:1", &bad) == GF_ERR_PARSE);
  CHECK(bad == nullptr);
  CHECK(gf_weight_create(nullptr, &bad) == GF_ERR_DOMAIN);
}

TEST_CASE("criterion surface") {
  gf_weight* w = nullptr;
  REQUIRE(gf_weight_create("power:0", &w) == GF_OK);
  double v = 0.0;
  CHECK(gf_wiener_tail(w, 2.0, std::exp(-1.0), 1.0, &v) == GF_OK);
  CHECK(v == doctest::Approx(1.0 / kPi).epsilon(1e-10));
  CHECK(gf_criterion_factor(w, 1.5, 0.25, &v) == GF_OK);
  CHECK(v == doctest::Approx(0.75).epsilon(1e-10));
  int sign = -1;
  CHECK(gf_singleton_capacity_sign(w, 3.0, &sign) == GF_OK);
  CHECK(sign == 1);
  CHECK(gf_singleton_capacity_sign(w, 2.0, &sign) == GF_OK);
  CHECK(sign == 0);
  CHECK(gf_singleton_capacity_sign(w, 2.0309, &sign) == GF_ERR_INCONCLUSIVE);

  char* out = nullptr;
  REQUIRE(gf_classify_uniqueness(w, 1.5, &out) == GF_OK);
  json doc = json::parse(take(out));
  CHECK(doc["classification"] == "fails");
  CHECK(doc["trace"].size() == 40);
  CHECK(doc["weight"] == "power:0");
  gf_weight_destroy(w);
}

TEST_CASE("capacity surface") {
  gf_weight* w = nullptr;
  REQUIRE(gf_weight_create("power:0", &w) == GF_OK);
  double value = 0.0, err = -1.0;
  int closed = 0;
  CHECK(gf_ring_capacity(w, 2.0, 0.1, 1.0, &value, &err, &closed) == GF_OK);
  CHECK(value == doctest::Approx(2.0 * kPi / std::log(10.0)).epsilon(1e-12));
  CHECK(err == 0.0);
  CHECK(closed == 1);
  CHECK(gf_ring_capacity(w, 2.0, 1.0, 0.1, &value, &err, &closed) ==
        GF_ERR_DOMAIN);
  gf_weight_destroy(w);

  double kappa = 0.0;
  CHECK(gf_radial_green_constant(0.0, 1.5, &kappa) == GF_OK);
  CHECK(kappa == doctest::Approx(std::pow(2.0 * kPi, -2.0)).epsilon(1e-13));
  CHECK(gf_radial_green_constant(0.0, 2.5, &kappa) == GF_ERR_DOMAIN);
  double ap = 0.0;
  CHECK(gf_a_exponent(2.5, 1.0, &ap) == GF_OK);
  CHECK(ap == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("solve through the wire format") {
  json spec{{"weight", "power:0"},
            {"p", 2.0},
            {"norm", "euclid"},
            {"grid", {{"M", 48}, {"N", 16}, {"r0", 0.1}, {"R", 1.0}}},
            {"bc", {{"kind", "capacitary_ring"}}}};
  char* result = nullptr;
  char* field = nullptr;
  REQUIRE(gf_solve(spec.dump().c_str(), &result, &field) == GF_OK);
  json doc = json::parse(take(result));
  CHECK(doc["energy"].get<double>() ==
        doctest::Approx(2.0 * kPi / std::log(10.0)).epsilon(0.02));
  std::string csv = take(field);
  CHECK(csv.substr(0, 14) == "r,theta,value\n");

  // unknown keys are rejected
  spec["surprise"] = 1;
  CHECK(gf_solve(spec.dump().c_str(), &result, nullptr) == GF_ERR_PARSE);

  // determinism: identical runs produce identical bytes
  spec.erase("surprise");
  char* r1 = nullptr;
  char* r2 = nullptr;
  REQUIRE(gf_solve(spec.dump().c_str(), &r1, nullptr) == GF_OK);
  REQUIRE(gf_solve(spec.dump().c_str(), &r2, nullptr) == GF_OK);
  CHECK(take(r1) == take(r2));
}

TEST_CASE("green and witness wire formats") {
  json params{{"p", 1.5},
              {"alpha", 0.0},
              {"R", 1.0},
              {"profile", "triangle"},
              {"eval", {{0.5, kPi}}}};
  char* out = nullptr;
  REQUIRE(gf_green(params.dump().c_str(), &out) == GF_OK);
  json doc = json::parse(take(out));
  CHECK(doc["a_p"] == doctest::Approx(1.0));
  CHECK(doc["eval"][0]["value"].get<double>() ==
        doctest::Approx(std::exp(kPi)).epsilon(1e-10));

  json wparams{{"p", 2.5}, {"alpha", 0.0}, {"R", 1.0},
               {"f1", "zero"}, {"f2", "triangle"}};
  REQUIRE(gf_witness_nonuniqueness(wparams.dump().c_str(), &out) == GF_OK);
  json wdoc = json::parse(take(out));
  CHECK(wdoc["accepted"] == false);  // p outside (1, 2 + alpha)
  CHECK(wdoc["checks"][0]["name"] == "parameter-domain");
}

TEST_CASE("harnack surface") {
  double alpha_exp = 0.0, c0 = 0.0;
  CHECK(gf_harnack_constants(2.0, 1.0, &alpha_exp, &c0) == GF_OK);
  CHECK(c0 == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(gf_harnack_constants(1.0, 1.0, &alpha_exp, &c0) == GF_ERR_DOMAIN);
}

TEST_CASE("status names cover the enum") {
  CHECK(std::string(gf_status_name(GF_OK)) == "ok");
  CHECK(std::string(gf_status_name(GF_ERR_PARSE)) == "parse");
  CHECK(std::string(gf_status_name(GF_ERR_WITNESS)) == "witness");
}
