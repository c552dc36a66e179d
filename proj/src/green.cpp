#include "green.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace greenforge {

namespace {
constexpr double kTwoPi = 6.283185307179586476925287;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}
}  // namespace

LipschitzProfile::LipschitzProfile(std::vector<double> s, double bound,
                                   std::string name)
    : samples_(std::move(s)), bound_(bound), name_(std::move(name)) {
  int n = size();
  if (n < 8) throw Error::domain("profile needs at least 8 angular samples");
  if (!(bound_ > 0.0 && bound_ <= 1.0)) {
    throw Error::domain("profile Lipschitz bound must lie in (0, 1]");
  }
  double dth = kTwoPi / n;
  for (int j = 0; j < n; ++j) {
    double df = samples_[(j + 1) % n] - samples_[j];
    if (std::abs(df) > (1.0 + 1e-12) * dth * bound_) {
      throw Error::domain("profile violates its Lipschitz bound between "
                          "samples " + std::to_string(j) + " and " +
                          std::to_string(j + 1));
    }
  }
}

LipschitzProfile LipschitzProfile::zero(int n_samples) {
  return {std::vector<double>(n_samples, 0.0), 1.0, "zero"};
}

LipschitzProfile LipschitzProfile::triangle(int n_samples) {
  if (n_samples % 2 != 0) {
    throw Error::domain("triangle profile needs an even sample count so the "
                        "kinks at 0 and pi are sample-aligned");
  }
  std::vector<double> s(n_samples);
  for (int j = 0; j < n_samples; ++j) {
    double th = kTwoPi * j / n_samples;
    s[j] = std::min(th, kTwoPi - th);
  }
  return {std::move(s), 1.0, "triangle"};
}

LipschitzProfile LipschitzProfile::from_samples(std::vector<double> samples,
                                                double lipschitz_bound,
                                                std::string name) {
  return {std::move(samples), lipschitz_bound, std::move(name)};
}

LipschitzProfile LipschitzProfile::named(const std::string& name,
                                         int n_samples) {
  if (name == "zero") return zero(n_samples);
  if (name == "triangle") return triangle(n_samples);
  throw Error::parse("unknown profile '" + name + "' (expected zero|triangle)");
}

double LipschitzProfile::value(double theta) const {
  int n = size();
  double dth = kTwoPi / n;
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  double jf = t / dth;
  int j = static_cast<int>(std::floor(jf));
  if (j >= n) j = n - 1;
  double frac = jf - j;
  return samples_[j] + frac * (samples_[(j + 1) % n] - samples_[j]);
}

double LipschitzProfile::segment_slope(int j) const {
  int n = size();
  double dth = kTwoPi / n;
  j = ((j % n) + n) % n;
  return (samples_[(j + 1) % n] - samples_[j]) / dth;
}

double LipschitzProfile::max_abs_slope() const {
  double m = 0.0;
  for (int j = 0; j < size(); ++j) m = std::max(m, std::abs(segment_slope(j)));
  return m;
}

double LipschitzProfile::min_value() const {
  return *std::min_element(samples_.begin(), samples_.end());
}

double LipschitzProfile::max_value() const {
  return *std::max_element(samples_.begin(), samples_.end());
}

double LipschitzProfile::integral_exp(double lam) const {
  int n = size();
  double dth = kTwoPi / n;
  double acc = 0.0;
  for (int j = 0; j < n; ++j) {
    double f0 = samples_[j];
    double df = samples_[(j + 1) % n] - f0;
    double x = lam * df;
    // int over the segment of e^{lam f} = dth e^{lam f0} expm1(x)/x
    double factor = std::abs(x) > 1e-8 ? std::expm1(x) / x : 1.0 + 0.5 * x;
    acc += dth * std::exp(lam * f0) * factor;
  }
  return acc;
}

bool LipschitzProfile::same_samples(const LipschitzProfile& other) const {
  return samples_ == other.samples_;
}

// ---------------------------------------------------------------------------

GreenCandidate GreenCandidate::bounded(double p, double alpha, double R,
                                       LipschitzProfile f) {
  if (!(R > 0.0) || !std::isfinite(R)) {
    throw Error::domain("bounded candidate requires 0 < R < inf");
  }
  GreenCandidate c;
  c.p = p;
  c.alpha = alpha;
  c.R = R;
  c.a_p = a_exponent(p, alpha);
  c.profile = std::move(f);
  return c;
}

GreenCandidate GreenCandidate::unbounded(double p, double alpha,
                                         LipschitzProfile f) {
  GreenCandidate c;
  c.p = p;
  c.alpha = alpha;
  c.R = logmath::kPosInf;
  c.a_p = a_exponent(p, alpha);
  c.profile = std::move(f);
  return c;
}

double GreenCandidate::raw_value(double r, double theta) const {
  if (!(r > 0.0)) throw Error::domain("candidate value requires r > 0");
  if (is_bounded() && r > R) {
    throw Error::domain("candidate value requires r <= R, got r = " + fmt(r));
  }
  double phi = std::pow(r, -a_p) - (is_bounded() ? std::pow(R, -a_p) : 0.0);
  return phi * std::exp(a_p * profile.value(theta));
}

double GreenCandidate::value(double r, double theta) const {
  return scale() * raw_value(r, theta);
}

double GreenCandidate::radial_derivative(double r, double theta) const {
  if (!(r > 0.0)) throw Error::domain("candidate derivative requires r > 0");
  return -scale() * a_p * std::pow(r, -a_p - 1.0) *
         std::exp(a_p * profile.value(theta));
}

double GreenCandidate::minimal_gradient(double r, double theta) const {
  return std::abs(radial_derivative(r, theta));
}

double GreenCandidate::dominance_ratio(double r, double theta) const {
  int n = profile.size();
  double dth = kTwoPi / n;
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  int j = std::min(static_cast<int>(std::floor(t / dth)), n - 1);
  double slope = std::abs(profile.segment_slope(j));
  double shape = is_bounded() ? 1.0 - std::pow(r / R, a_p) : 1.0;
  return shape * slope;
}

GreenCandidate GreenCandidate::with_normalization(double a) const {
  if (!(a > 0.0)) throw Error::domain("normalization constant must be positive");
  GreenCandidate c = *this;
  c.A = a;
  return c;
}

RayFunction GreenCandidate::ray(double theta) const {
  double e = scale() * std::exp(a_p * profile.value(theta));
  double ap = a_p;
  double rr = R;
  bool bdd = is_bounded();
  return {[=](double r) {
            double phi = std::pow(r, -ap) - (bdd ? std::pow(rr, -ap) : 0.0);
            return e * phi;
          },
          [=](double r) { return -e * ap * std::pow(r, -ap - 1.0); }};
}

double GreenCandidate::level_radius(double raw_level, double theta) const {
  if (!(raw_level > 0.0)) throw Error::domain("level must be positive");
  double rim = is_bounded() ? std::pow(R, -a_p) : 0.0;
  double phi = raw_level * std::exp(-a_p * profile.value(theta));
  return std::pow(phi + rim, -1.0 / a_p);
}

double gradient_dominance_check(const GreenCandidate& c, const PolarGrid& grid) {
  if (!(c.profile.lipschitz_bound() <= 1.0)) {
    throw Error::domain("dominance check requires a 1-Lipschitz profile");
  }
  // the ratio factorizes into a radial shape times the profile slope
  double shape = 1.0;
  if (c.is_bounded()) {
    shape = 0.0;
    for (int i = 0; i < grid.M(); ++i) {
      shape = std::max(shape, 1.0 - std::pow(grid.cell_rc(i) / c.R, c.a_p));
    }
  }
  return shape * c.profile.max_abs_slope();
}

double level_energy_check(const GreenCandidate& c, double a, double b) {
  if (a > b) throw Error::domain("level_energy_check requires a <= b");
  if (!(a >= 0.0)) throw Error::domain("level_energy_check requires a >= 0");
  if (a == b) return 0.0;
  // per-ray closed form: the flux is constant, so the band energy is
  // A^{p-1} a_p^{p-1} (b - a) int e^{a_p (p-1) f}
  double s = c.scale();
  double lam = c.a_p * (c.p - 1.0);
  return std::pow(s * c.a_p, c.p - 1.0) * (b - a) * c.profile.integral_exp(lam);
}

NormalizationReport normalize_to_green(GreenCandidate& c,
                                       NormalizeOptions opts) {
  if (!c.is_bounded()) {
    throw Error::domain("normalize_to_green needs a bounded domain");
  }
  if (opts.levels.size() < 2) {
    throw Error::domain("normalize_to_green needs at least two levels");
  }
  for (double t : opts.levels) {
    if (!(t > 0.0)) throw Error::domain("levels must be positive");
  }
  double t_deep = *std::max_element(opts.levels.begin(), opts.levels.end());
  double r_deep = c.level_radius(t_deep, 0.0);
  for (int j = 0; j < c.profile.size(); ++j) {
    r_deep = std::min(r_deep, c.level_radius(t_deep, kTwoPi * j /
                                                          c.profile.size()));
  }
  double r0 = r_deep / opts.r0_shrink;
  auto grid = PolarGrid::log_spaced(r0, c.R, opts.grid_m, opts.grid_n);
  MeasureProfile profile(WeightModel::power(c.alpha));

  NormalizationReport rep;
  for (double t : opts.levels) {
    auto sl = superlevel_capacity(
        [&](double r, double th) { return c.raw_value(r, th); }, t, grid, c.p,
        GradNormKind::FinslerMax, profile, opts.solve);
    LevelProbe probe;
    probe.level = t;
    probe.effective_level = sl.effective_level;
    probe.capacity = sl.cap.value;
    probe.a_estimate =
        std::pow(sl.cap.value, 1.0 / (1.0 - c.p)) / sl.effective_level;
    rep.probes.push_back(probe);
  }
  double lo = rep.probes.front().a_estimate, hi = lo, mean = 0.0;
  for (const auto& pr : rep.probes) {
    lo = std::min(lo, pr.a_estimate);
    hi = std::max(hi, pr.a_estimate);
    mean += pr.a_estimate;
  }
  mean /= rep.probes.size();
  rep.A = mean;
  rep.spread = (hi - lo) / mean;
  if (rep.spread > opts.spread_tol) {
    throw Error::normalization(
        "normalization levels disagree: spread " + fmt(rep.spread) +
        " exceeds " + fmt(opts.spread_tol) +
        " (solver resolution insufficient for this candidate)");
  }
  c.A = mean;
  return rep;
}

std::vector<RatioTraceRow> ratio_trace(const GreenCandidate& c,
                                       std::span<const double> radii,
                                       double R_cap,
                                       const MeasureProfile& profile) {
  if (c.is_bounded() && !(R_cap <= c.R)) {
    throw Error::domain("ratio_trace requires R_cap <= R");
  }
  double emin = std::exp(c.a_p * c.profile.min_value());
  double emax = std::exp(c.a_p * c.profile.max_value());
  std::vector<RatioTraceRow> rows;
  for (double r : radii) {
    if (!(r < R_cap)) throw Error::domain("ratio_trace requires r_j < R_cap");
    double phi = std::pow(r, -c.a_p) -
                 (c.is_bounded() ? std::pow(c.R, -c.a_p) : 0.0);
    double cap = ring_capacity_radial(profile, c.p, r, R_cap).value;
    rows.push_back({r, c.scale() * phi * emin, c.scale() * phi * emax,
                    std::pow(cap, 1.0 / (1.0 - c.p))});
  }
  return rows;
}

std::vector<RatioTraceRow> ratio_trace(const ScalarField& u, double p,
                                       std::span<const double> radii,
                                       double R_cap,
                                       const MeasureProfile& profile) {
  std::vector<RatioTraceRow> rows;
  const auto& g = *u.grid;
  for (double r : radii) {
    if (!(r < R_cap)) throw Error::domain("ratio_trace requires r_j < R_cap");
    double mn = logmath::kPosInf, mx = -logmath::kPosInf;
    for (int j = 0; j < g.N(); ++j) {
      double v = u.interpolate(r, g.theta(j));
      mn = std::min(mn, v);
      mx = std::max(mx, v);
    }
    double cap = ring_capacity_radial(profile, p, r, R_cap).value;
    rows.push_back({r, mn, mx, std::pow(cap, 1.0 / (1.0 - p))});
  }
  return rows;
}

namespace {

void push_check(WitnessReport& rep, const std::string& name, double value,
                double bound, bool pass) {
  rep.checks.push_back({name, value, bound, pass});
  if (!pass && rep.message.empty()) {
    rep.message = "witness refused: check '" + name + "' failed (" +
                  fmt(value) + " vs bound " + fmt(bound) + ")";
  }
}

// max Euler-Lagrange flux variation over rays
double max_el_residual(const GreenCandidate& c, int rays, double r_lo,
                       double r_hi) {
  std::vector<double> radii;
  for (int k = 0; k < 16; ++k) {
    radii.push_back(r_lo * std::pow(r_hi / r_lo, k / 15.0));
  }
  double worst = 0.0;
  for (int m = 0; m < rays; ++m) {
    double theta = kTwoPi * m / rays;
    worst = std::max(
        worst, el_residual_radial(c.ray(theta), c.p, c.alpha, radii));
  }
  return worst;
}

}  // namespace

WitnessReport nonuniqueness_witness(double p, double alpha, double R,
                                    const LipschitzProfile& f1,
                                    const LipschitzProfile& f2,
                                    NonuniquenessOptions opts) {
  WitnessReport rep;
  GreenCandidate c1, c2;
  try {
    c1 = GreenCandidate::bounded(p, alpha, R, f1);
    c2 = GreenCandidate::bounded(p, alpha, R, f2);
  } catch (const Error& e) {
    push_check(rep, "parameter-domain", p, 2.0 + alpha, false);
    rep.message = std::string("witness refused: ") + e.what();
    return rep;
  }

  auto grid = PolarGrid::log_spaced(R / 200.0, R, opts.normalize.grid_m,
                                    opts.normalize.grid_n);

  double el1 = max_el_residual(c1, opts.rays, R / 100.0, 0.9 * R);
  double el2 = max_el_residual(c2, opts.rays, R / 100.0, 0.9 * R);
  push_check(rep, "el-residual-1", el1, opts.el_tol, el1 <= opts.el_tol);
  push_check(rep, "el-residual-2", el2, opts.el_tol, el2 <= opts.el_tol);

  double dom1 = gradient_dominance_check(c1, *grid);
  double dom2 = gradient_dominance_check(c2, *grid);
  push_check(rep, "gradient-dominance-1", dom1, 1.0 + opts.dominance_tol,
             dom1 <= 1.0 + opts.dominance_tol);
  push_check(rep, "gradient-dominance-2", dom2, 1.0 + opts.dominance_tol,
             dom2 <= 1.0 + opts.dominance_tol);

  // normalize both candidates variationally and check the level identity
  for (int which = 0; which < 2; ++which) {
    GreenCandidate& c = which == 0 ? c1 : c2;
    std::string tag = which == 0 ? "1" : "2";
    try {
      NormalizeOptions nopts = opts.normalize;
      auto norm = normalize_to_green(c, nopts);
      double worst = 0.0;
      for (const auto& probe : norm.probes) {
        double predicted =
            std::pow(norm.A * probe.effective_level, 1.0 - c.p);
        worst = std::max(worst, std::abs(probe.capacity / predicted - 1.0));
      }
      push_check(rep, "superlevel-normalization-" + tag, worst,
                 opts.normalization_tol, worst <= opts.normalization_tol);
    } catch (const Error& e) {
      push_check(rep, "superlevel-normalization-" + tag, 1.0,
                 opts.normalization_tol, false);
      rep.message = std::string("witness refused: ") + e.what();
    }
  }

  // distinctness of the normalized candidates on the probe circle
  if (c1.normalized() && c2.normalized()) {
    double worst = 0.0;
    int n = std::max(f1.size(), f2.size());
    for (int j = 0; j < n; ++j) {
      double th = kTwoPi * j / n;
      double v1 = c1.value(opts.probe_radius, th);
      double v2 = c2.value(opts.probe_radius, th);
      worst = std::max(worst, std::abs(v1 - v2) / std::max(v1, v2));
    }
    rep.distinctness = worst;
    push_check(rep, "distinctness", worst, opts.distinctness_threshold,
               worst >= opts.distinctness_threshold);
  } else {
    push_check(rep, "distinctness", 0.0, opts.distinctness_threshold, false);
  }

  rep.accepted = true;
  for (const auto& ch : rep.checks) rep.accepted = rep.accepted && ch.pass;
  if (rep.accepted) {
    rep.message = "witness accepted: two distinct normalized Green candidates";
  }
  return rep;
}

WitnessReport comparison_witness(double p, double alpha,
                                 ComparisonOptions opts) {
  WitnessReport rep;
  GreenCandidate u1, u2;
  try {
    u1 = GreenCandidate::bounded(p, alpha, 1.0, LipschitzProfile::zero(opts.grid_n));
    u2 = GreenCandidate::bounded(
        p, alpha, 1.0, LipschitzProfile::named(opts.second_profile, opts.grid_n));
  } catch (const Error& e) {
    push_check(rep, "parameter-domain", p, 2.0 + alpha, false);
    rep.message = std::string("witness refused: ") + e.what();
    return rep;
  }

  // probe grid strictly inside the punctured disc
  auto grid = PolarGrid::log_spaced(opts.r0, opts.r_probe_outer, opts.grid_m,
                                    opts.grid_n);
  double min_strict = logmath::kPosInf;
  double max_on_ray = 0.0;
  bool ordered = true;
  for (int i = 0; i <= grid->M(); ++i) {
    for (int j = 0; j < grid->N(); ++j) {
      double r = grid->radius(i), th = grid->theta(j);
      double v1 = u1.raw_value(r, th), v2 = u2.raw_value(r, th);
      if (v2 < v1) ordered = false;
      if (j == 0) {
        max_on_ray = std::max(max_on_ray, std::abs(v2 - v1) / v1);
      } else {
        min_strict = std::min(min_strict, v2 - v1);
      }
    }
  }
  push_check(rep, "ordering", ordered ? 1.0 : 0.0, 1.0, ordered);
  push_check(rep, "equality-on-zero-ray", max_on_ray, opts.equality_tol,
             max_on_ray <= opts.equality_tol);
  push_check(rep, "strict-off-ray", min_strict, 0.0, min_strict > 0.0);

  // nonlinearity at p = 2: v = u2 - u1 loses the Dirichlet contest
  if (p == 2.0 && alpha > 0.0) {
    MeasureProfile profile(WeightModel::power(alpha));
    auto agrid = PolarGrid::log_spaced(opts.annulus_r0, opts.annulus_R,
                                       opts.grid_m, opts.grid_n);
    auto v = ScalarField::sampled(agrid, [&](double r, double th) {
      return u2.raw_value(r, th) - u1.raw_value(r, th);
    });
    std::vector<double> inner(agrid->N()), outer(agrid->N());
    for (int j = 0; j < agrid->N(); ++j) {
      inner[j] = v.at(0, j);
      outer[j] = v.at(agrid->M(), j);
    }
    SolveSpec spec;
    spec.grid = agrid;
    spec.p = p;
    spec.kind = GradNormKind::FinslerMax;
    spec.profile = &profile;
    spec.bc = BoundaryCondition::dirichlet(inner, outer);
    spec.opts = opts.solve;
    auto solved = minimize_p_energy(spec);
    double e_v = p_energy(v, p, GradNormKind::FinslerMax, profile);
    double gap = 1.0 - solved.max_norm_energy / e_v;
    push_check(rep, "energy-gap", gap, opts.energy_gap,
               gap >= opts.energy_gap);
  }

  rep.accepted = true;
  for (const auto& ch : rep.checks) rep.accepted = rep.accepted && ch.pass;
  if (rep.accepted) {
    rep.message = "witness accepted: comparison principle fails on the family";
  }
  return rep;
}

}  // namespace greenforge
