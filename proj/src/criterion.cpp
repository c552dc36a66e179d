#include "criterion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "logmath.hpp"

namespace greenforge {

using logmath::kLn2;
using logmath::kNegInf;

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

bool pure_power_measure(const MeasureProfile& profile) {
  return profile.model().kind() == WeightKind::Power;
}

// log2 of ln2 * int_{t0}^{t1} 2^{h(t)} dt with h(t) = (p t - log2 mu)/(p-1)
double log2_tail_piece(const MeasureProfile& profile, double p, double t0,
                       double t1) {
  auto h = [&](double t) {
    return (p * t - profile.log2_mu(t)) / (p - 1.0);
  };
  double v = logmath::log2_int_exp2(h, t0, t1, 1e-11);
  return v == kNegInf ? kNegInf : v + std::log2(kLn2);
}

}  // namespace

const char* to_string(Classification c) {
  switch (c) {
    case Classification::CriterionHolds: return "holds";
    case Classification::CriterionFails: return "fails";
    case Classification::Inconclusive: return "inconclusive";
  }
  return "?";
}

const char* to_string(SingletonSign s) {
  return s == SingletonSign::Zero ? "zero" : "positive";
}

double log2_wiener_tail(const MeasureProfile& profile, double p, double log2_r,
                        double log2_upper) {
  if (!(p > 1.0)) throw Error::domain("wiener_tail requires p > 1");
  if (!(log2_r <= log2_upper)) {
    throw Error::domain("wiener_tail requires r <= upper");
  }
  if (log2_r == log2_upper) return kNegInf;

  if (pure_power_measure(profile)) {
    // mu = C rho^{q0}: the integrand is a pure power, exact antiderivative
    double q0 = profile.model().power_alpha() + 2.0;
    double log2_c = std::log2(2.0 * 3.14159265358979323846 / q0);
    double m = (p - q0) / (p - 1.0);
    double c = -log2_c / (p - 1.0);
    return std::log2(kLn2) +
           logmath::log2_exp_integral(m, c, log2_r, log2_upper);
  }

  const WeightModel& shape = profile.model().kind() == WeightKind::Perturbed
                                 ? profile.model().perturbed_base()
                                 : profile.model();
  auto pieces = shape.pieces_in(log2_r, log2_upper);
  // cheap upper envelope per piece to skip negligible contributions
  auto h = [&](double t) { return (p * t - profile.log2_mu(t)) / (p - 1.0); };
  std::vector<double> bounds(pieces.size(), kNegInf);
  double best = kNegInf;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& pc = pieces[i];
    double hmax = kNegInf;
    for (int s = 0; s <= 4; ++s) {
      double t = pc.t_lo + (pc.t_hi - pc.t_lo) * s / 4.0;
      hmax = std::max(hmax, h(t));
    }
    bounds[i] = hmax + 4.0 + std::log2(std::max(pc.t_hi - pc.t_lo, 1e-30));
    best = std::max(best, bounds[i]);
  }
  std::vector<double> parts;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (bounds[i] < best - 60.0) continue;
    parts.push_back(log2_tail_piece(profile, p, pieces[i].t_lo, pieces[i].t_hi));
  }
  return logmath::log2_sum(parts);
}

double wiener_tail(const MeasureProfile& profile, double p, double r,
                   double upper) {
  if (!(r > 0.0)) throw Error::domain("wiener_tail requires r > 0");
  if (!(r <= upper && upper <= 1.0)) {
    throw Error::domain("wiener_tail requires 0 < r <= upper <= 1");
  }
  return std::exp2(log2_wiener_tail(profile, p, std::log2(r), std::log2(upper)));
}

double log2_criterion_factor(const MeasureProfile& profile, double p,
                             double log2_r) {
  double tail = log2_wiener_tail(profile, p, log2_r, 0.0);
  if (tail == kNegInf) return kNegInf;
  return (profile.log2_mu(log2_r) - p * log2_r) / (p - 1.0) + tail;
}

double criterion_factor(const MeasureProfile& profile, double p, double r) {
  if (!(r > 0.0 && r <= 1.0)) {
    throw Error::domain("criterion_factor requires 0 < r <= 1");
  }
  double lf = log2_criterion_factor(profile, p, std::log2(r));
  return lf == kNegInf ? 0.0 : std::exp2(lf);
}

SingletonReport singleton_capacity_sign(const MeasureProfile& profile,
                                        double p) {
  if (!(p > 1.0)) throw Error::domain("singleton_capacity_sign requires p > 1");
  const WeightModel& shape = profile.model().kind() == WeightKind::Perturbed
                                 ? profile.model().perturbed_base()
                                 : profile.model();

  std::vector<SingletonBlock> blocks;
  double decay_needed;  // per-block log2 decrease certifying a geometric tail
  if (shape.kind() == WeightKind::Oscillating) {
    // generation blocks [beta_k/2, beta_k]; each contributes a k-independent
    // amount exactly at the divergence edge p = c
    int kmax = std::min(shape.osc().max_generation - 1, 24);
    for (int k = 1; k <= kmax; ++k) {
      double hi = shape.log2_beta_k(k);
      blocks.push_back({hi - 1.0, hi, 0.0});
    }
    decay_needed = 0.1;
  } else {
    // 4-octave dyadic blocks
    for (int j = 0; j < 15; ++j) {
      blocks.push_back({-4.0 * (j + 1), -4.0 * j, 0.0});
    }
    decay_needed = 0.2;
  }
  for (auto& blk : blocks) {
    if (pure_power_measure(profile)) {
      double q0 = profile.model().power_alpha() + 2.0;
      double log2_c = std::log2(2.0 * 3.14159265358979323846 / q0);
      double m = (p - q0) / (p - 1.0);
      double c = -log2_c / (p - 1.0);
      blk.log2_contrib =
          std::log2(kLn2) +
          logmath::log2_exp_integral(m, c, blk.log2_lo, blk.log2_hi);
    } else {
      blk.log2_contrib = log2_tail_piece(profile, p, blk.log2_lo, blk.log2_hi);
    }
  }

  std::size_t n = blocks.size();
  std::size_t tail_start = n / 2;
  double first = blocks.front().log2_contrib;
  double last = blocks.back().log2_contrib;
  double tail_min = logmath::kPosInf;
  double worst_ratio = kNegInf;  // max consecutive log2 step over the tail
  for (std::size_t i = tail_start; i < n; ++i) {
    tail_min = std::min(tail_min, blocks[i].log2_contrib);
    if (i + 1 < n) {
      worst_ratio = std::max(
          worst_ratio, blocks[i + 1].log2_contrib - blocks[i].log2_contrib);
    }
  }

  SingletonReport rep;
  rep.blocks = std::move(blocks);
  if (tail_min >= first - 1.0 || last >= first + 10.0) {
    rep.sign = SingletonSign::Zero;
    rep.rule = "blocks-not-decaying";
    return rep;
  }
  if (worst_ratio <= -decay_needed) {
    rep.sign = SingletonSign::Positive;
    rep.rule = "geometric-tail";
    return rep;
  }
  throw Error::inconclusive(
      "singleton capacity sign: block contributions neither stay bounded away "
      "from zero nor decay geometrically (worst tail step 2^" +
      fmt(worst_ratio) + " per block)");
}

CriterionTrace classify_uniqueness(const MeasureProfile& profile, double p,
                                   CriterionOptions opts) {
  if (!(p > 1.0)) throw Error::domain("classify_uniqueness requires p > 1");
  CriterionTrace tr;
  tr.p = p;
  auto [wlo, whi] = profile.default_window_range();
  tr.window = profile.exponent_window(wlo, whi);

  // probe F along r_j = 2^{-j}
  double log2_div = std::log2(opts.divergence_threshold);
  bool diverged = false;
  for (int j = opts.probe_j_min; j <= opts.probe_j_max; ++j) {
    double lf = log2_criterion_factor(profile, p, -static_cast<double>(j));
    tr.radii.push_back(std::exp2(-static_cast<double>(j)));
    tr.log2_factors.push_back(lf);
    tr.factors.push_back(lf == kNegInf ? 0.0 : std::exp2(lf));
    if (lf > log2_div) diverged = true;
  }
  if (diverged) {
    tr.probe_classification = Classification::CriterionHolds;
  } else {
    // plateau over the final decades of the probe
    double window_oct = opts.plateau_decades * std::log2(10.0);
    double fmax = kNegInf, fmin = logmath::kPosInf;
    for (std::size_t i = 0; i < tr.radii.size(); ++i) {
      double j = -std::log2(tr.radii[i]);
      if (j >= opts.probe_j_max - window_oct) {
        fmax = std::max(fmax, tr.factors[i]);
        fmin = std::min(fmin, tr.factors[i]);
      }
    }
    if (fmax > 0.0 && (fmax - fmin) / fmax < opts.plateau_rel) {
      tr.probe_classification = Classification::CriterionFails;
    } else {
      tr.probe_classification = Classification::Inconclusive;
    }
  }

  double eps = opts.rule_eps;
  if (p >= tr.window.q_upper_inf - eps) {
    tr.classification = Classification::CriterionHolds;
    tr.rule = "exponent-window: p in upper set";
  } else if (p > tr.window.q_lower_sup + eps) {
    tr.classification = Classification::CriterionHolds;
    tr.rule = "exponent-window: p outside lower set";
  } else if (p < tr.window.q_lower_sup - eps) {
    tr.classification = Classification::CriterionFails;
    tr.rule = "exponent-window: p below sup of lower set";
  } else {
    // the gap the exponent rules do not cover; fall back to the probe
    tr.classification = *tr.probe_classification;
    tr.rule = std::string("numeric-probe (inconclusive-rule): ") +
              to_string(tr.classification);
  }
  return tr;
}

}  // namespace greenforge
