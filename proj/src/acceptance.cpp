#include "acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "criterion.hpp"
#include "green.hpp"
#include "harnack.hpp"
#include "solver.hpp"

namespace greenforge::acceptance {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

struct Recorder {
  CriterionOutcome out;

  void le(const std::string& name, double value, double bound) {
    out.checks.push_back({name, value, bound, "<=", value <= bound});
  }
  void ge(const std::string& name, double value, double bound) {
    out.checks.push_back({name, value, bound, ">=", value >= bound});
  }
  void rel(const std::string& name, double value, double target, double tol) {
    double dev = std::abs(value / target - 1.0);
    out.checks.push_back({name + " (got " + std::to_string(value) + ")", dev,
                          tol, "<=", dev <= tol});
  }
  void flag(const std::string& name, bool ok) {
    out.checks.push_back({name, ok ? 1.0 : 0.0, 1.0, "==", ok});
  }
  CriterionOutcome finish() {
    out.pass = true;
    for (const auto& c : out.checks) out.pass = out.pass && c.pass;
    return out;
  }
};

SolveSpec ring_spec(std::shared_ptr<const PolarGrid> g,
                    const MeasureProfile& prof, double p, GradNormKind kind) {
  SolveSpec spec;
  spec.grid = std::move(g);
  spec.p = p;
  spec.kind = kind;
  spec.profile = &prof;
  spec.bc = BoundaryCondition::capacitary_ring();
  return spec;
}

CriterionOutcome criterion_1() {
  Recorder r;
  r.out.id = 1;
  r.out.description =
      "ring capacity, closed form vs variational (alpha=0, p=2, Euclidean)";
  MeasureProfile prof(WeightModel::power(0.0));
  auto t0 = std::chrono::steady_clock::now();
  auto res = minimize_p_energy(
      ring_spec(PolarGrid::log_spaced(0.1, 1.0, 256, 256), prof, 2.0,
                GradNormKind::Euclidean));
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  double exact = kTwoPi / std::log(10.0);
  r.rel("energy vs 2pi/ln10", res.energy.value, exact, 0.02);
  r.le("single-threaded runtime [s]", secs, 60.0);
  return r.finish();
}

CriterionOutcome criterion_2() {
  Recorder r;
  r.out.id = 2;
  r.out.description = "Finsler/Euclidean radial agreement (p=1.5, ring)";
  MeasureProfile prof(WeightModel::power(0.0));
  auto grid = PolarGrid::log_spaced(0.25, 1.0, 256, 256);
  auto fin = minimize_p_energy(ring_spec(grid, prof, 1.5,
                                         GradNormKind::FinslerMax));
  auto euc = minimize_p_energy(ring_spec(grid, prof, 1.5,
                                         GradNormKind::Euclidean));
  double exact = kTwoPi / std::sqrt(3.0);
  r.rel("Finsler energy vs 2pi/sqrt(3)", fin.energy.value, exact, 0.02);
  r.rel("Finsler vs Euclidean energy", fin.energy.value, euc.energy.value,
        0.01);
  return r.finish();
}

CriterionOutcome criterion_3() {
  Recorder r;
  r.out.id = 3;
  r.out.description =
      "Green normalization closed form (Zero profile, alpha=0, p=1.5, R=1)";
  auto c = GreenCandidate::bounded(1.5, 0.0, 1.0, LipschitzProfile::zero(96));
  NormalizeOptions opts;
  opts.levels = {0.5, 1.0, 2.0};
  opts.grid_m = 192;
  opts.grid_n = 64;
  auto rep = normalize_to_green(c, opts);
  double kappa = radial_green_constant(0.0, 1.5);  // (2 pi)^{-2}
  r.rel("A vs (2pi)^-2", rep.A, kappa, 0.01);
  r.le("level-consistency spread of A(t)", rep.spread, 0.02);
  return r.finish();
}

CriterionOutcome criterion_4() {
  Recorder r;
  r.out.id = 4;
  r.out.description =
      "nonuniqueness witness (p=1.5, alpha=0, R=1, Zero vs Triangle)";
  auto t0 = std::chrono::steady_clock::now();
  NonuniquenessOptions opts;
  opts.normalize.levels = {4.0, 8.0, 16.0};
  opts.normalize.grid_m = 160;
  opts.normalize.grid_n = 96;
  auto rep = nonuniqueness_witness(1.5, 0.0, 1.0, LipschitzProfile::zero(96),
                                   LipschitzProfile::triangle(96), opts);
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  for (const auto& ch : rep.checks) {
    if (ch.name == "distinctness") {
      r.ge("distinctness at probe circle r=0.3", ch.value, 0.10);
    } else {
      r.le(ch.name, ch.value, ch.bound);
    }
  }
  r.flag("witness accepted", rep.accepted);
  r.le("runtime [s]", secs, 300.0);
  return r.finish();
}

CriterionOutcome criterion_5() {
  Recorder r;
  r.out.id = 5;
  r.out.description = "criterion classification matches the power-weight split";
  MeasureProfile prof(WeightModel::power(0.0));
  double worst15 = 0.0, worst2 = 0.0;
  for (double x = std::log(1e-6); x < 0.0; x += 0.37) {
    double rr = std::exp(x);
    worst15 = std::max(worst15, std::abs(criterion_factor(prof, 1.5, rr) /
                                             (1.0 - rr) -
                                         1.0));
    worst2 = std::max(worst2, std::abs(criterion_factor(prof, 2.0, rr) /
                                           std::log(1.0 / rr) -
                                       1.0));
  }
  r.le("F(r) vs 1 - r at p=1.5, rel", worst15, 1e-8);
  r.le("F(r) vs ln(1/r) at p=2, rel", worst2, 1e-8);
  r.flag("p=1.5 classifies fails",
         classify_uniqueness(prof, 1.5).classification ==
             Classification::CriterionFails);
  r.flag("p=2 classifies holds",
         classify_uniqueness(prof, 2.0).classification ==
             Classification::CriterionHolds);
  for (double alpha : {0.0, 1.0}) {
    MeasureProfile pa(WeightModel::power(alpha));
    bool above = classify_uniqueness(pa, 2.0 + alpha + 0.1).classification ==
                 Classification::CriterionHolds;
    bool below = classify_uniqueness(pa, 2.0 + alpha - 0.1).classification ==
                 Classification::CriterionFails;
    r.flag("flip at p = 2+alpha for alpha=" + std::to_string(alpha),
           above && below);
  }
  return r.finish();
}

CriterionOutcome criterion_6() {
  Recorder r;
  r.out.id = 6;
  r.out.description = "oscillating weight suite (2,3,4,5)";
  auto w = WeightModel::oscillating(2, 3, 4, 5);
  MeasureProfile prof(w);
  const auto& params = w.osc();

  double worst_break = 0.0;
  for (int k = 0; k <= 20; ++k) {
    double tb = w.log2_beta_k(k);
    double shallow = (params.b - params.a) * w.log2_alpha_k(k + 1) +
                     (params.a - 2.0) * tb;
    double steep = (params.b - params.d) * w.log2_alpha_k(k) +
                   (params.d - 2.0) * tb;
    worst_break = std::max(worst_break,
                           std::abs(shallow - steep) / std::abs(steep));
    double ta = w.log2_alpha_k(k);
    double sh_a = (params.b - params.a) * ta + (params.a - 2.0) * ta;
    double st_a = (params.b - params.d) * ta + (params.d - 2.0) * ta;
    worst_break = std::max(worst_break,
                           std::abs(sh_a - st_a) /
                               std::max(1.0, std::abs(st_a)));
  }
  r.le("breakpoint continuity k=0..20, log-rel", worst_break, 1e-12);

  auto [lo, hi] = prof.default_window_range();
  auto win = prof.exponent_window(lo, hi);
  r.le("|q_lower_sup - 2|", std::abs(win.q_lower_sup - 2.0), 0.2);
  r.le("|q_upper_inf - 5|", std::abs(win.q_upper_inf - 5.0), 0.2);

  auto sing = singleton_capacity_sign(prof, 4.0);
  r.flag("singleton capacity zero at p = c = 4",
         sing.sign == SingletonSign::Zero);
  r.ge("generation blocks evaluated", static_cast<double>(sing.blocks.size()),
       20.0);
  double min_block = logmath::kPosInf;
  for (const auto& blk : sing.blocks) {
    min_block = std::min(min_block, std::exp2(blk.log2_contrib));
  }
  r.ge("min block contribution at p = c", min_block, 0.25);

  r.flag("p=3 classifies holds",
         classify_uniqueness(prof, 3.0).classification ==
             Classification::CriterionHolds);
  r.flag("p=3 singleton capacity zero",
         singleton_capacity_sign(prof, 3.0).sign == SingletonSign::Zero);
  return r.finish();
}

CriterionOutcome criterion_7() {
  Recorder r;
  r.out.id = 7;
  r.out.description = "biLipschitz sandwich of the grid Finsler distance";
  auto g = PolarGrid::log_spaced(1.0 / 64.0, 4.0, 128, 128);
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> ui(0, g->M());
  std::uniform_int_distribution<int> uj(0, g->N() - 1);
  bool sandwich = true;
  int done = 0;
  while (done < 100) {
    int i0 = ui(rng), j0 = uj(rng), i1 = ui(rng), j1 = uj(rng);
    if (i0 == i1 && j0 == j1) continue;
    ++done;
    double d = finsler_distance(*g, i0, j0, i1, j1);
    double e = euclidean_distance(*g, i0, j0, i1, j1);
    if (!(d >= e * (1.0 - 1e-12) && d <= std::sqrt(2.0) * e * 1.05)) {
      sandwich = false;
    }
  }
  r.flag("100 random pairs inside [euclid, sqrt2*euclid*1.05]", sandwich);
  // (1,0) -> (0,1): radius 1 sits at i = 96 on this grid, pi/2 at j = 32
  double d = finsler_distance(*g, 96, 0, 96, 32);
  r.rel("d((1,0),(0,1)) vs pi/2", d, kPi / 2.0, 0.02);
  return r.finish();
}

CriterionOutcome criterion_8() {
  Recorder r;
  r.out.id = 8;
  r.out.description = "Harnack iteration constants and oscillation decay";
  double worst = 0.0;
  for (double A : {1.1, 2.0, 3.0, 10.0}) {
    for (double lam : {1.0, 2.0, 10.0}) {
      auto h = iteration_constants(A, lam);
      worst = std::max(worst, std::abs(h.C0 / (A * A / (A - 1.0)) - 1.0));
    }
  }
  r.le("C0 vs A^2/(A-1), rel over 12 combos", worst, 1e-12);

  MeasureProfile prof(WeightModel::power(0.0));
  auto g = PolarGrid::log_spaced(0.05, 1.0, 128, 128);
  std::vector<double> inner(g->N(), 1.0), outer(g->N());
  for (int j = 0; j < g->N(); ++j) outer[j] = 1.0 + std::cos(g->theta(j));
  SolveSpec spec;
  spec.grid = g;
  spec.p = 2.0;
  spec.kind = GradNormKind::Euclidean;
  spec.profile = &prof;
  spec.bc = BoundaryCondition::dirichlet(inner, outer);
  auto solved = minimize_p_energy(spec);
  auto trace =
      oscillation_decay(solved.field, 0.45, 0.15, 0.3, {0.2, 0.1, 0.05});
  bool monotone = true;
  for (std::size_t k = 1; k < trace.points.size(); ++k) {
    monotone = monotone &&
               trace.points[k].ratio <= trace.points[k - 1].ratio + 1e-12;
  }
  r.flag("measured ratios decrease with delta", monotone);
  r.ge("fitted decay exponent", trace.fitted_exponent.value_or(-1.0), 1e-6);
  return r.finish();
}

CriterionOutcome criterion_9() {
  Recorder r;
  r.out.id = 9;
  r.out.description = "comparison-principle failure and p=2 nonlinearity";
  ComparisonOptions opts;  // 128x128 probe grid and annulus
  auto rep = comparison_witness(1.5, 0.0, opts);
  for (const auto& ch : rep.checks) {
    if (ch.name == "strict-off-ray") {
      r.ge("strict inequality off the zero ray", ch.value, 1e-300);
    } else if (ch.name == "equality-on-zero-ray") {
      r.le("equality on the zero ray, rel", ch.value, 1e-12);
    } else {
      r.flag(ch.name, ch.pass);
    }
  }
  auto rep2 = comparison_witness(2.0, 1.0, opts);
  bool saw = false;
  for (const auto& ch : rep2.checks) {
    if (ch.name == "energy-gap") {
      saw = true;
      r.ge("Dirichlet re-solve energy gap at p=2, alpha=1", ch.value, 0.01);
    }
  }
  r.flag("energy-gap certificate produced", saw);
  return r.finish();
}

CriterionOutcome criterion_10() {
  Recorder r;
  r.out.id = 10;
  r.out.description = "ratio traces: normalized radial identity and its "
                      "failure in the nonuniqueness regime";
  MeasureProfile prof(WeightModel::power(0.0));
  double kappa = radial_green_constant(0.0, 1.5);
  auto c = GreenCandidate::bounded(1.5, 0.0, 1.0, LipschitzProfile::zero(64))
               .with_normalization(kappa);
  std::vector<double> radii{0.05, 0.1, 0.2};
  double worst = 0.0;
  for (const auto& row : ratio_trace(c, radii, 1.0, prof)) {
    worst = std::max(worst, std::abs(row.M / row.cap_pow - 1.0));
  }
  r.le("Zero profile: |M/cap^{1/(1-p)} - 1|", worst, 1e-8);

  auto tu = GreenCandidate::unbounded(1.5, 0.0, LipschitzProfile::triangle(64));
  double worst_ratio = 0.0;
  double expect = std::exp(tu.a_p * kPi);
  for (const auto& row : ratio_trace(tu, radii, 1.0, prof)) {
    worst_ratio = std::max(worst_ratio, std::abs(row.M / row.m / expect - 1.0));
  }
  r.le("Triangle (unbounded): |M/m / e^{a_p pi} - 1|", worst_ratio, 1e-8);
  return r.finish();
}

}  // namespace

std::vector<CriterionOutcome> run(const std::vector<int>& only) {
  using Fn = CriterionOutcome (*)();
  const Fn fns[] = {criterion_1, criterion_2, criterion_3, criterion_4,
                    criterion_5, criterion_6, criterion_7, criterion_8,
                    criterion_9, criterion_10};
  std::vector<CriterionOutcome> outcomes;
  for (int id = 1; id <= 10; ++id) {
    if (!only.empty() &&
        std::find(only.begin(), only.end(), id) == only.end()) {
      continue;
    }
    auto t0 = std::chrono::steady_clock::now();
    auto out = fns[id - 1]();
    out.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    outcomes.push_back(std::move(out));
  }
  return outcomes;
}

}  // namespace greenforge::acceptance
