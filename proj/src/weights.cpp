#include "weights.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace greenforge {

using logmath::kLn2;
using logmath::kNegInf;
using logmath::log2_add;

namespace {
constexpr double kTwoPi = 6.283185307179586476925287;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
}  // namespace

WeightModel WeightModel::power(double alpha) {
  if (!(alpha > -1.0)) {
    throw Error::domain("power weight requires alpha > -1, got " + fmt(alpha));
  }
  WeightModel m;
  m.kind_ = WeightKind::Power;
  m.alpha_ = alpha;
  return m;
}

WeightModel WeightModel::oscillating(double a, double b, double c, double d,
                                     int max_generation) {
  if (!(1.0 < a && a < b && b < c && c < d)) {
    throw Error::domain("oscillating weight requires 1 < a < b < c < d");
  }
  OscillatingParams p;
  p.a = a;
  p.b = b;
  p.c = c;
  p.d = d;
  p.lambda = (c - a) * (d - b) / ((b - a) * (d - c));
  p.beta_ratio = (d - b) / (d - c);
  // cap the generation depth so lambda^{K+5} stays finite
  int cap = static_cast<int>(std::floor(300.0 * std::log(10.0) /
                                        std::log(p.lambda))) - 6;
  p.max_generation = std::max(1, std::min(max_generation, cap));
  p.log2_alpha.resize(p.max_generation + 6);
  double pow_l = 1.0;
  for (int k = 0; k < static_cast<int>(p.log2_alpha.size()); ++k) {
    p.log2_alpha[k] = -pow_l;
    pow_l *= p.lambda;
  }
  WeightModel m;
  m.kind_ = WeightKind::Oscillating;
  m.osc_ = std::move(p);
  return m;
}

WeightModel WeightModel::perturbed(const WeightModel& base,
                                   std::function<double(double)> multiplier,
                                   double factor_low, double factor_high) {
  if (base.kind_ == WeightKind::Perturbed) {
    throw Error::domain("perturbed weight cannot itself be perturbed");
  }
  if (!(factor_low > 0.0) || !(factor_high >= factor_low)) {
    throw Error::domain("perturbed weight requires 0 < factor_low <= factor_high");
  }
  WeightModel m;
  m.kind_ = WeightKind::Perturbed;
  m.base_ = std::make_shared<WeightModel>(base);
  m.multiplier_ = std::move(multiplier);
  m.factor_low_ = factor_low;
  m.factor_high_ = factor_high;
  return m;
}

WeightModel WeightModel::parse(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw Error::parse("weight spec must be 'power:<alpha>' or 'osc:<a>,<b>,<c>,<d>', got '" +
                       spec + "'");
  }
  std::string head = spec.substr(0, colon);
  std::string rest = spec.substr(colon + 1);
  auto parse_num = [&](const std::string& s) {
    std::size_t pos = 0;
    double v;
    try {
      v = std::stod(s, &pos);
    } catch (const std::exception&) {
      throw Error::parse("bad number '" + s + "' in weight spec '" + spec + "'");
    }
    if (pos != s.size()) {
      throw Error::parse("bad number '" + s + "' in weight spec '" + spec + "'");
    }
    return v;
  };
  if (head == "power") {
    return power(parse_num(rest));
  }
  if (head == "osc") {
    std::vector<double> vals;
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) vals.push_back(parse_num(item));
    if (vals.size() != 4) {
      throw Error::parse("osc weight spec needs 4 comma-separated exponents");
    }
    return oscillating(vals[0], vals[1], vals[2], vals[3]);
  }
  throw Error::parse("unknown weight kind '" + head + "'");
}

std::string WeightModel::spec_string() const {
  switch (kind_) {
    case WeightKind::Power:
      return "power:" + fmt(alpha_);
    case WeightKind::Oscillating: {
      const auto& p = *osc_;
      return "osc:" + fmt(p.a) + "," + fmt(p.b) + "," + fmt(p.c) + "," + fmt(p.d);
    }
    case WeightKind::Perturbed:
      return "perturbed(" + base_->spec_string() + ")";
  }
  return "?";
}

double WeightModel::power_alpha() const {
  if (kind_ != WeightKind::Power) throw Error::domain("not a power weight");
  return alpha_;
}

const OscillatingParams& WeightModel::osc() const {
  if (kind_ != WeightKind::Oscillating) {
    throw Error::domain("not an oscillating weight");
  }
  return *osc_;
}

const WeightModel& WeightModel::perturbed_base() const {
  if (kind_ != WeightKind::Perturbed) {
    throw Error::domain("not a perturbed weight");
  }
  return *base_;
}

double WeightModel::log2_alpha_k(int k) const {
  const auto& p = osc();
  if (k < 0 || k >= static_cast<int>(p.log2_alpha.size())) {
    throw Error::range("generation " + std::to_string(k) +
                       " outside supported range");
  }
  return p.log2_alpha[k];
}

double WeightModel::log2_beta_k(int k) const {
  return log2_alpha_k(k) * osc().beta_ratio;
}

double WeightModel::log2_floor() const {
  switch (kind_) {
    case WeightKind::Power:
      return -logmath::kPosInf;
    case WeightKind::Oscillating:
      return osc_->log2_alpha[osc_->max_generation + 1];
    case WeightKind::Perturbed:
      return base_->log2_floor();
  }
  return -logmath::kPosInf;
}

void WeightModel::check_osc_range(double log2_rho) const {
  const auto& p = *osc_;
  if (log2_rho < p.log2_alpha[p.max_generation + 1]) {
    throw Error::range(
        "rho below the smallest supported breakpoint; deepest supported "
        "generation is k = " +
        std::to_string(p.max_generation));
  }
}

int WeightModel::generation_of(double log2_rho) const {
  const auto& p = osc();
  check_osc_range(log2_rho);
  if (log2_rho > p.log2_alpha[0]) {
    throw Error::domain("generation_of is defined only for rho <= alpha_0");
  }
  // log2_alpha is strictly decreasing; find largest k with log2_alpha[k] >= t
  auto it = std::lower_bound(p.log2_alpha.begin(), p.log2_alpha.end(), log2_rho,
                             [](double edge, double t) { return edge >= t; });
  int k = static_cast<int>(it - p.log2_alpha.begin()) - 1;
  return std::min(k, p.max_generation);
}

double WeightModel::log2_weight_at(double log2_rho) const {
  switch (kind_) {
    case WeightKind::Power:
      return alpha_ * log2_rho;
    case WeightKind::Oscillating: {
      const auto& p = *osc_;
      if (log2_rho >= p.log2_alpha[0]) return p.log2_alpha[0];  // w = alpha_0
      int k = generation_of(log2_rho);
      double tb = p.log2_alpha[k] * p.beta_ratio;
      if (log2_rho >= tb) {
        // steep branch: w = alpha_k^{b-d} rho^{d-n}
        return (p.b - p.d) * p.log2_alpha[k] + (p.d - 2.0) * log2_rho;
      }
      // shallow branch: w = alpha_{k+1}^{b-a} rho^{a-n}
      return (p.b - p.a) * p.log2_alpha[k + 1] + (p.a - 2.0) * log2_rho;
    }
    case WeightKind::Perturbed:
      return base_->log2_weight_at(log2_rho) +
             std::log2(multiplier_at(log2_rho));
  }
  return kNegInf;
}

double WeightModel::weight_at(double rho) const {
  if (!(rho > 0.0)) {
    throw Error::domain("weight_at requires rho > 0, got " + fmt(rho));
  }
  return std::exp2(log2_weight_at(std::log2(rho)));
}

double WeightModel::multiplier_at(double log2_rho) const {
  double m = multiplier_(log2_rho);
  if (!(m >= factor_low_ && m <= factor_high_)) {
    throw Error::domain("perturbed multiplier left its declared bounds at log2 rho = " +
                        fmt(log2_rho));
  }
  return m;
}

std::vector<WeightPiece> WeightModel::pieces_in(double t_lo, double t_hi) const {
  if (kind_ == WeightKind::Perturbed) return base_->pieces_in(t_lo, t_hi);
  std::vector<WeightPiece> out;
  if (!(t_hi > t_lo)) return out;
  if (kind_ == WeightKind::Power) {
    out.push_back({t_lo, t_hi, alpha_ + 2.0, 0.0});
    return out;
  }
  const auto& p = *osc_;
  check_osc_range(t_lo);
  double t = t_lo;
  while (t < t_hi) {
    if (t >= p.log2_alpha[0]) {
      out.push_back({t, t_hi, 2.0, p.log2_alpha[0]});
      break;
    }
    int k = generation_of(t);
    // sitting exactly on alpha_k: the ascending walk continues in the
    // shallow branch of generation k-1
    if (t >= p.log2_alpha[k] && k > 0) k -= 1;
    double ta_top = p.log2_alpha[k];
    double tb = ta_top * p.beta_ratio;
    double hi;
    if (t < tb) {
      hi = std::min(tb, t_hi);
      if (hi > t) out.push_back({t, hi, p.a, (p.b - p.a) * p.log2_alpha[k + 1]});
    } else {
      hi = std::min(ta_top, t_hi);
      if (hi > t) out.push_back({t, hi, p.d, (p.b - p.d) * ta_top});
    }
    if (!(hi > t)) break;
    t = hi;
  }
  return out;
}

// ---------------------------------------------------------------------------
// MeasureProfile

MeasureProfile::MeasureProfile(WeightModel model, ProfileOptions opts)
    : model_(std::move(model)), opts_(opts) {
  const WeightModel& shape_for_range =
      model_.kind() == WeightKind::Perturbed ? model_.perturbed_base() : model_;
  if (opts_.log2_r_min) {
    log2_r_min_ = *opts_.log2_r_min;
  } else if (shape_for_range.kind() == WeightKind::Power) {
    log2_r_min_ = -400.0;
  } else {
    log2_r_min_ = model_.log2_floor();
  }
  if (!(log2_r_min_ < opts_.log2_r_max)) {
    throw Error::domain("profile range is empty");
  }
  if (log2_r_min_ < model_.log2_floor()) {
    throw Error::range("profile range extends below the weight's supported range");
  }
  build_anchors();
  double lo = std::max(log2_r_min_, opts_.table_floor);
  for (double t = lo; t <= opts_.log2_r_max + 1e-12; t += opts_.table_step) {
    table_.push_back({t, log2_mu(t)});
  }
}

double MeasureProfile::log2_piece_mass(const WeightPiece& piece, double t0,
                                       double t1) const {
  if (!(t1 > t0)) return kNegInf;
  // exact: 2 pi C (rho1^g - rho0^g) / g
  double base = std::log2(kTwoPi / piece.g) + piece.log2_coeff + piece.g * t1 +
                std::log1p(-std::exp2(piece.g * (t0 - t1))) / kLn2;
  if (!model_.has_multiplier()) return base;
  // bounded multiplier: base mass times the mass-weighted average of the
  // multiplier, computed with the substitution s = (rho/rho1)^g so the
  // quadrature runs on O(1) values at any scale
  double g = piece.g;
  double s0 = std::exp2(g * (t0 - t1));
  auto integrand = [&](double s) {
    double t = s > 0.0 ? std::max(t0, t1 + std::log2(s) / g) : t0;
    return model_.multiplier_at(t);
  };
  double avg = logmath::adaptive_simpson(integrand, s0, 1.0,
                                         opts_.quad_rel_tol) /
               (1.0 - s0);
  return base + std::log2(avg);
}

void MeasureProfile::build_anchors() {
  anchors_.clear();
  const WeightModel& shape =
      model_.kind() == WeightKind::Perturbed ? model_.perturbed_base() : model_;
  if (shape.kind() == WeightKind::Power) {
    // mu is a single pure power.  Anchor far enough below the query floor
    // that the multiplier uncertainty on the sub-anchor mass is beyond
    // double rounding at every admissible query radius.
    double q0 = shape.power_alpha() + 2.0;
    double t0 = log2_r_min_ - 80.0 / q0;
    double mass0 = std::log2(kTwoPi / q0) + q0 * t0;
    if (model_.has_multiplier()) {
      mass0 += std::log2(model_.multiplier_at(t0));
    }
    anchors_.push_back({t0, mass0});
    return;
  }
  const auto& p = shape.osc();
  int k_anchor = p.max_generation + 3;
  // mass below alpha_{k_anchor+1}: generations k_anchor+1, k_anchor+2 cover it
  // to far below double rounding (contributions shrink doubly exponentially)
  double below = kNegInf;
  for (int k = k_anchor + 2; k >= k_anchor + 1; --k) {
    double t_lo = p.log2_alpha[k + 1];
    double tb = p.log2_alpha[k] * p.beta_ratio;
    double t_hi = p.log2_alpha[k];
    WeightPiece shallow{t_lo, tb, p.a, (p.b - p.a) * p.log2_alpha[k + 1]};
    WeightPiece steep{tb, t_hi, p.d, (p.b - p.d) * p.log2_alpha[k]};
    below = log2_add(below, log2_piece_mass(shallow, t_lo, tb));
    below = log2_add(below, log2_piece_mass(steep, tb, t_hi));
  }
  double running = below;
  anchors_.push_back({p.log2_alpha[k_anchor + 1], running});
  for (int k = k_anchor; k >= 0; --k) {
    double t_lo = p.log2_alpha[k + 1];
    double tb = p.log2_alpha[k] * p.beta_ratio;
    double t_hi = p.log2_alpha[k];
    WeightPiece shallow{t_lo, tb, p.a, (p.b - p.a) * p.log2_alpha[k + 1]};
    running = log2_add(running, log2_piece_mass(shallow, t_lo, tb));
    anchors_.push_back({tb, running});
    WeightPiece steep{tb, t_hi, p.d, (p.b - p.d) * t_hi};
    running = log2_add(running, log2_piece_mass(steep, tb, t_hi));
    anchors_.push_back({t_hi, running});
  }
  // outer constant branch anchor sits at alpha_0 (already pushed)
}

double MeasureProfile::log2_mu(double log2_r) const {
  if (log2_r < log2_r_min_ - 1e-9 || log2_r > opts_.log2_r_max + 1e-9) {
    throw Error::range("radius outside the profile's mesh range: log2 r = " +
                       fmt(log2_r));
  }
  const WeightModel& shape =
      model_.kind() == WeightKind::Perturbed ? model_.perturbed_base() : model_;
  if (shape.kind() == WeightKind::Power && !model_.has_multiplier()) {
    double q0 = shape.power_alpha() + 2.0;
    return std::log2(kTwoPi / q0) + q0 * log2_r;
  }
  // last anchor at or below log2_r
  auto it = std::upper_bound(
      anchors_.begin(), anchors_.end(), log2_r,
      [](double t, const Anchor& a) { return t < a.t; });
  if (it == anchors_.begin()) {
    // below the deepest anchor only by rounding; clamp
    it = anchors_.begin() + 1;
  }
  const Anchor& base = *(it - 1);
  if (log2_r <= base.t) return base.log2_mu;
  auto pieces = shape.pieces_in(base.t, log2_r);
  double acc = base.log2_mu;
  for (const auto& piece : pieces) {
    acc = log2_add(acc, log2_piece_mass(piece, piece.t_lo, piece.t_hi));
  }
  return acc;
}

double MeasureProfile::mu_ball(double r) const {
  if (!(r > 0.0)) throw Error::domain("mu_ball requires r > 0");
  return std::exp2(log2_mu(std::log2(r)));
}

ExponentWindow MeasureProfile::exponent_window(double log2_r_lo,
                                               double log2_r_hi,
                                               WindowOptions wopts) const {
  double span = log2_r_hi - log2_r_lo;
  constexpr double kThreeDecades = 9.96578428466209;  // log2(10^3)
  if (!(span >= kThreeDecades)) {
    throw Error::domain("exponent_window needs a scale range of >= 3 decades");
  }
  double min_sep = wopts.min_separation.value_or(std::min(8.0, span / 4.0));
  std::vector<double> ts, ls;
  for (double t = log2_r_lo; t <= log2_r_hi + 1e-12; t += wopts.mesh_step) {
    ts.push_back(t);
    ls.push_back(log2_mu(t));
  }
  double qmin = logmath::kPosInf, qmax = kNegInf;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    for (std::size_t j = i + 1; j < ts.size(); ++j) {
      double dt = ts[j] - ts[i];
      if (dt < min_sep - 1e-12) continue;
      double slope = (ls[j] - ls[i]) / dt;
      qmin = std::min(qmin, slope);
      qmax = std::max(qmax, slope);
    }
  }
  if (!(qmin <= qmax)) {
    throw Error::domain("exponent_window: no sample pairs with the required separation");
  }
  return {qmin, qmax};
}

std::pair<double, double> MeasureProfile::default_window_range() const {
  const WeightModel& shape =
      model_.kind() == WeightKind::Perturbed ? model_.perturbed_base() : model_;
  if (shape.kind() == WeightKind::Oscillating) {
    const auto& p = shape.osc();
    int k_hi = std::min(3, p.max_generation - 1);
    return {p.log2_alpha[k_hi + 1], p.log2_alpha[0]};
  }
  return {std::max(log2_r_min_, -20.0), std::min(log2_r_max(), 0.0)};
}

double MeasureProfile::doubling_max_log2() const {
  double worst = 0.0;
  for (const auto& e : table_) {
    if (e.log2_r + 1.0 > opts_.log2_r_max) break;
    worst = std::max(worst, log2_mu(e.log2_r + 1.0) - e.log2_mu);
  }
  return worst;
}

std::string MeasureProfile::table_csv() const {
  std::string out = "log2_r,log2_mu\n";
  for (const auto& e : table_) {
    out += fmt(e.log2_r);
    out += ',';
    out += fmt(e.log2_mu);
    out += '\n';
  }
  return out;
}

}  // namespace greenforge
