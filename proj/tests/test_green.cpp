#include "green.hpp"

#include <cmath>
#include <random>

#include "criterion.hpp"
#include "doctest.h"

using namespace greenforge;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

TEST_CASE("lipschitz profiles: construction and checks") {
  auto tri = LipschitzProfile::triangle(64);
  CHECK(tri.value(kPi) == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(tri.value(0.0) == 0.0);
  CHECK(tri.min_value() == 0.0);
  CHECK(tri.max_value() == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(tri.max_abs_slope() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(tri.integral_exp(0.0) == doctest::Approx(kTwoPi).epsilon(1e-14));
  // exact closed form: 2 * int_0^pi e^{t} dt = 2 (e^pi - 1)
  CHECK(tri.integral_exp(1.0) ==
        doctest::Approx(2.0 * (std::exp(kPi) - 1.0)).epsilon(1e-12));

  // a slope-2 sawtooth violates the declared bound
  std::vector<double> bad(16);
  for (int j = 0; j < 16; ++j) bad[j] = 2.0 * std::min(j, 16 - j) * kTwoPi / 16;
  CHECK_THROWS_AS(LipschitzProfile::from_samples(bad, 1.0), Error);
  CHECK_THROWS_AS(LipschitzProfile::triangle(33), Error);
  CHECK_THROWS_AS(LipschitzProfile::named("sine", 32), Error);
}

TEST_CASE("candidate evaluation matches the family closed forms") {
  auto c = GreenCandidate::bounded(1.5, 0.0, 1.0, LipschitzProfile::zero(64));
  CHECK(c.a_p == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(c.raw_value(0.5, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(c.raw_value(1.0 - 1e-13, 0.3) ==
        doctest::Approx(0.0).epsilon(1e-9).scale(1.0));

  auto t = GreenCandidate::bounded(1.5, 0.0, 1.0,
                                   LipschitzProfile::triangle(64));
  CHECK(t.raw_value(0.5, kPi) ==
        doctest::Approx(std::exp(kPi)).epsilon(1e-12));

  CHECK_THROWS_AS(c.raw_value(1.5, 0.0), Error);
  CHECK_THROWS_AS(c.raw_value(0.0, 0.0), Error);
  CHECK_THROWS_AS(GreenCandidate::bounded(2.5, 0.0, 1.0,
                                          LipschitzProfile::zero(64)),
                  Error);
}

TEST_CASE("minimal gradient closed forms and scaling") {
  auto c = GreenCandidate::bounded(1.5, 0.0, 1.0, LipschitzProfile::zero(64));
  CHECK(c.minimal_gradient(0.5, 0.2) == doctest::Approx(4.0).epsilon(1e-13));

  auto t = GreenCandidate::unbounded(1.5, 0.0, LipschitzProfile::triangle(64));
  CHECK(t.minimal_gradient(1.0, kPi) ==
        doctest::Approx(std::exp(kPi)).epsilon(1e-12));

  auto scaled = c.with_normalization(2.0);
  for (double r : {0.1, 0.4, 0.8}) {
    CHECK(scaled.minimal_gradient(r, 0.0) ==
          doctest::Approx(2.0 * c.minimal_gradient(r, 0.0)).epsilon(1e-14));
  }
}

TEST_CASE("candidate is decreasing in r and increasing in the profile") {
  auto tri = GreenCandidate::bounded(1.7, 0.5, 1.0,
                                     LipschitzProfile::triangle(64));
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> ur(0.02, 0.98);
  std::uniform_real_distribution<double> uth(0.0, kTwoPi);
  for (int k = 0; k < 50; ++k) {
    double r1 = ur(rng), r2 = ur(rng), th = uth(rng);
    if (r2 < r1) std::swap(r1, r2);
    if (r2 - r1 < 1e-6) continue;
    CHECK(tri.raw_value(r1, th) > tri.raw_value(r2, th));
  }
  // pointwise monotone in f: triangle >= zero with the same parameters
  auto zero = GreenCandidate::bounded(1.7, 0.5, 1.0,
                                      LipschitzProfile::zero(64));
  for (int k = 0; k < 50; ++k) {
    double r = ur(rng), th = uth(rng);
    CHECK(tri.raw_value(r, th) >= zero.raw_value(r, th) * (1.0 - 1e-14));
  }
}

TEST_CASE("gradient dominance: analytic values and the family bound") {
  auto grid = PolarGrid::log_spaced(0.001, 1.0, 64, 64);
  auto zero = GreenCandidate::bounded(1.5, 0.0, 1.0,
                                      LipschitzProfile::zero(64));
  CHECK(gradient_dominance_check(zero, *grid) == 0.0);

  auto tri = GreenCandidate::bounded(1.5, 0.0, 1.0,
                                     LipschitzProfile::triangle(64));
  CHECK(tri.dominance_ratio(0.5, 0.3) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(gradient_dominance_check(tri, *grid) <= 1.0 + 1e-6);

  auto utri = GreenCandidate::unbounded(1.5, 0.0,
                                        LipschitzProfile::triangle(64));
  CHECK(gradient_dominance_check(utri, *grid) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("discrete finsler gradient agrees with the closed form") {
  auto tri = GreenCandidate::bounded(1.5, 0.0, 1.0,
                                     LipschitzProfile::triangle(128));
  auto grid = PolarGrid::log_spaced(0.05, 0.9, 128, 128);
  auto field = ScalarField::sampled(
      grid, [&](double r, double th) { return tri.raw_value(r, th); });
  double hr = std::log(0.9 / 0.05) / 128.0;
  double hth = kTwoPi / 128.0;
  double tol = 5.0 * (hr + hth) * (hr + hth);
  // away from the profile kinks the agreement is second order
  for (int i = 8; i < 120; i += 7) {
    for (int j = 5; j < 59; j += 7) {
      double rc = grid->cell_rc(i);
      double tc = grid->theta(j) + 0.5 * hth;
      double exact = tri.minimal_gradient(rc, tc);
      double disc = grad_norm(field, GradNormKind::FinslerMax, i, j);
      CHECK(std::abs(disc - exact) / exact <= tol);
    }
  }
}

TEST_CASE("level energy of candidates follows the normalization identity") {
  // normalized radial candidate: energy between levels == b - a
  double kappa = radial_green_constant(0.0, 1.5);
  auto c = GreenCandidate::bounded(1.5, 0.0, 1.0, LipschitzProfile::zero(64))
               .with_normalization(kappa);
  CHECK(level_energy_check(c, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(level_energy_check(c, 0.25, 0.8) ==
        doctest::Approx(0.55).epsilon(1e-12));
  CHECK(level_energy_check(c, 0.3, 0.3) == 0.0);
  CHECK_THROWS_AS(level_energy_check(c, 1.0, 0.5), Error);

  // discrete field path reproduces it within the solver tolerance
  MeasureProfile prof(WeightModel::power(0.0));
  auto grid = PolarGrid::log_spaced(0.005, 1.0, 192, 48);
  auto field = ScalarField::sampled(
      grid, [&](double r, double th) { return c.value(r, th); });
  double band = level_energy_check(field, 0.0, 1.0, 1.5,
                                   GradNormKind::FinslerMax, prof);
  CHECK(band == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("variational normalization recovers the radial constant") {
  auto c = GreenCandidate::bounded(1.5, 0.0, 1.0, LipschitzProfile::zero(96));
  NormalizeOptions opts;
  opts.grid_m = 160;
  opts.grid_n = 48;
  auto rep = normalize_to_green(c, opts);
  double kappa = radial_green_constant(0.0, 1.5);
  CHECK(rep.A == doctest::Approx(kappa).epsilon(0.01));
  CHECK(rep.spread <= 0.02);
  REQUIRE(rep.probes.size() == 3);
  // level independence of the recovered constant
  CHECK(rep.probes[1].a_estimate ==
        doctest::Approx(rep.probes[2].a_estimate).epsilon(0.01));
  CHECK(c.normalized());
}

TEST_CASE("triangle normalization matches the level-energy closed form") {
  // independent oracle: the level-energy identity pins
  //   A = (a_p^{p-1} int e^{a_p (p-1) f})^{-1/(p-1)}
  double p = 1.5, alpha = 0.0;
  auto profile = LipschitzProfile::triangle(96);
  double ap = a_exponent(p, alpha);
  double predicted =
      std::pow(std::pow(ap, p - 1.0) * profile.integral_exp(ap * (p - 1.0)),
               -1.0 / (p - 1.0));
  auto c = GreenCandidate::bounded(p, alpha, 1.0, profile);
  NormalizeOptions opts;
  opts.levels = {4.0, 8.0, 16.0};
  opts.grid_m = 192;
  opts.grid_n = 128;
  auto rep = normalize_to_green(c, opts);
  CHECK(rep.A == doctest::Approx(predicted).epsilon(0.03));

  // normalization bracket against the radial constant
  double kappa = radial_green_constant(alpha, p);
  double emax = std::exp(ap * profile.max_value());
  CHECK(rep.A * emax >= kappa * (1.0 - 0.03));
  CHECK(kappa >= rep.A * (1.0 - 0.03));
}

TEST_CASE("superlevel sets are scale invariant") {
  MeasureProfile prof(WeightModel::power(0.0));
  auto grid = PolarGrid::log_spaced(0.02, 1.0, 96, 64);
  auto c = GreenCandidate::bounded(1.5, 0.0, 1.0,
                                   LipschitzProfile::triangle(64));
  double A = 0.03;
  auto scaled = c.with_normalization(A);
  double b = 0.09;  // {A u >= b} == {u >= b/A}
  auto s1 = superlevel_capacity(
      [&](double r, double th) { return scaled.value(r, th); }, b, grid, 1.5,
      GradNormKind::FinslerMax, prof);
  auto s2 = superlevel_capacity(
      [&](double r, double th) { return c.raw_value(r, th); }, b / A, grid,
      1.5, GradNormKind::FinslerMax, prof);
  CHECK(s1.marked_count == s2.marked_count);
  CHECK(s1.cap.value == doctest::Approx(s2.cap.value).epsilon(1e-9));
}

TEST_CASE("superlevel of the normalized candidate obeys the definition") {
  // cap_p({u >= b}, B_R) = b^{1-p} once u carries the radial constant
  MeasureProfile prof(WeightModel::power(0.0));
  double kappa = radial_green_constant(0.0, 1.5);
  auto c = GreenCandidate::bounded(1.5, 0.0, 1.0, LipschitzProfile::zero(48))
               .with_normalization(kappa);
  auto grid = PolarGrid::log_spaced(0.008, 1.0, 128, 48);
  auto sl = superlevel_capacity(
      [&](double r, double th) { return c.value(r, th); }, 1.0, grid, 1.5,
      GradNormKind::FinslerMax, prof);
  CHECK(sl.cap.value == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("triangle rays are 1-D p-harmonic despite the angular factor") {
  auto tri = GreenCandidate::bounded(1.5, 0.0, 1.0,
                                     LipschitzProfile::triangle(96));
  std::vector<double> radii;
  for (int k = 0; k < 12; ++k) radii.push_back(0.05 * std::pow(16.0, k / 11.0));
  // the theta-dependence enters only through a constant ray factor
  CHECK(el_residual_radial(tri.ray(kPi / 3.0), 1.5, 0.0, radii) <= 1e-8);
}

TEST_CASE("unnormalized candidate ratio spans the profile oscillation") {
  auto u1 = GreenCandidate::bounded(1.5, 0.0, 1.0, LipschitzProfile::zero(64));
  auto u2 = GreenCandidate::bounded(1.5, 0.0, 1.0,
                                    LipschitzProfile::triangle(64));
  for (double r : {0.1, 0.3, 0.7}) {
    double lo = 1e300, hi = -1e300;
    for (int j = 0; j < 64; ++j) {
      double th = kTwoPi * j / 64;
      double ratio = u2.raw_value(r, th) / u1.raw_value(r, th);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    CHECK(lo == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(hi == doctest::Approx(std::exp(kPi)).epsilon(1e-12));
  }
}

TEST_CASE("ratio trace: closed-form identities") {
  MeasureProfile prof(WeightModel::power(0.0));
  double kappa = radial_green_constant(0.0, 1.5);
  auto c = GreenCandidate::bounded(1.5, 0.0, 1.0, LipschitzProfile::zero(64))
               .with_normalization(kappa);
  std::vector<double> radii{0.05, 0.1, 0.2};
  auto rows = ratio_trace(c, radii, 1.0, prof);
  for (const auto& row : rows) {
    CHECK(row.M / row.cap_pow == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(row.m / row.cap_pow == doctest::Approx(1.0).epsilon(1e-8));
  }

  // unbounded triangle: M/m is the constant e^{a_p pi}; the trace exhibits
  // the oscillation exactly where uniqueness fails
  auto tu = GreenCandidate::unbounded(1.5, 0.0, LipschitzProfile::triangle(64));
  auto urows = ratio_trace(tu, radii, 1.0, prof);
  for (const auto& row : urows) {
    CHECK(row.M / row.m == doctest::Approx(std::exp(kPi)).epsilon(1e-8));
  }
}

TEST_CASE("nonuniqueness witness accepts zero vs triangle") {
  NonuniquenessOptions opts;
  opts.normalize.grid_m = 160;
  opts.normalize.grid_n = 96;
  opts.normalize.levels = {4.0, 8.0, 16.0};
  auto rep = nonuniqueness_witness(1.5, 0.0, 1.0, LipschitzProfile::zero(96),
                                   LipschitzProfile::triangle(96), opts);
  INFO(rep.message);
  CHECK(rep.accepted);
  CHECK(rep.distinctness >= 0.10);
  for (const auto& ch : rep.checks) {
    INFO(ch.name, " value=", ch.value, " bound=", ch.bound);
    CHECK(ch.pass);
  }
}

TEST_CASE("nonuniqueness witness refusals") {
  // identical profiles: distinctness fails
  NonuniquenessOptions opts;
  opts.normalize.grid_m = 96;
  opts.normalize.grid_n = 48;
  auto rep = nonuniqueness_witness(1.5, 0.0, 1.0, LipschitzProfile::zero(48),
                                   LipschitzProfile::zero(48), opts);
  CHECK_FALSE(rep.accepted);
  CHECK(rep.message.find("distinctness") != std::string::npos);

  // p outside (1, 2+alpha): refused at construction
  auto rep2 = nonuniqueness_witness(2.5, 0.0, 1.0, LipschitzProfile::zero(48),
                                    LipschitzProfile::triangle(48), opts);
  CHECK_FALSE(rep2.accepted);
  CHECK(rep2.checks.front().name == "parameter-domain");
}

TEST_CASE("comparison witness: equality set is exactly the zero ray") {
  ComparisonOptions opts;
  opts.grid_m = 96;
  opts.grid_n = 96;
  auto rep = comparison_witness(1.5, 0.0, opts);
  INFO(rep.message);
  CHECK(rep.accepted);

  opts.second_profile = "zero";
  auto refused = comparison_witness(1.5, 0.0, opts);
  CHECK_FALSE(refused.accepted);
  CHECK(refused.message.find("strict-off-ray") != std::string::npos);
}

TEST_CASE("comparison witness: dirichlet re-solve beats v at p = 2") {
  ComparisonOptions opts;
  opts.grid_m = 96;
  opts.grid_n = 96;
  auto rep = comparison_witness(2.0, 1.0, opts);
  INFO(rep.message);
  CHECK(rep.accepted);
  bool saw_gap = false;
  for (const auto& ch : rep.checks) {
    if (ch.name == "energy-gap") {
      saw_gap = true;
      CHECK(ch.value >= 0.01);
    }
  }
  CHECK(saw_gap);
}

TEST_CASE("uniqueness side: no candidate family beyond p = 2 + alpha") {
  for (double alpha : {0.0, 1.0}) {
    MeasureProfile prof(WeightModel::power(alpha));
    double p = 2.0 + alpha + 0.3;
    CHECK(classify_uniqueness(prof, p).classification ==
          Classification::CriterionHolds);
    CHECK_THROWS_AS(a_exponent(p, alpha), Error);
  }
}
