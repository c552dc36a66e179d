#include "capacity.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

#include "finsler.hpp"
#include "logmath.hpp"

namespace greenforge {

using logmath::kLn2;
using logmath::kNegInf;

namespace {
constexpr double kTwoPi = 6.283185307179586476925287;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}
}  // namespace

const char* to_string(CapacityResult::Method m) {
  return m == CapacityResult::Method::ClosedForm ? "closed_form" : "variational";
}

double a_exponent(double p, double alpha) {
  if (!(alpha > -1.0)) {
    throw Error::domain("a_exponent requires alpha > -1, got alpha = " +
                        fmt(alpha));
  }
  if (!(p > 1.0)) {
    throw Error::domain("a_exponent requires p > 1, got p = " + fmt(p));
  }
  if (!(p < 2.0 + alpha)) {
    throw Error::domain("a_exponent requires p < 2 + alpha, got p = " + fmt(p) +
                        ", alpha = " + fmt(alpha));
  }
  return (2.0 + alpha - p) / (p - 1.0);
}

double log2_ring_capacity(const MeasureProfile& profile, double p,
                          double log2_r, double log2_R) {
  if (!(p > 1.0)) throw Error::domain("ring capacity requires p > 1");
  if (!(log2_r < log2_R)) {
    throw Error::domain("ring capacity requires r < R");
  }
  const WeightModel& model = profile.model();
  const WeightModel& shape =
      model.kind() == WeightKind::Perturbed ? model.perturbed_base() : model;
  auto pieces = shape.pieces_in(log2_r, log2_R);
  std::vector<double> parts;
  for (const auto& pc : pieces) {
    // (w rho)^{-1/(p-1)} = 2^{m t + c} with the branch data below
    double m = (p - pc.g) / (p - 1.0);
    double c = -pc.log2_coeff / (p - 1.0);
    if (!model.has_multiplier()) {
      parts.push_back(logmath::log2_exp_integral(m, c, pc.t_lo, pc.t_hi));
    } else {
      auto h = [&](double t) {
        return m * t + c - std::log2(model.multiplier_at(t)) / (p - 1.0);
      };
      parts.push_back(logmath::log2_int_exp2(h, pc.t_lo, pc.t_hi, 1e-11));
    }
  }
  double log2_integral = std::log2(kLn2) + logmath::log2_sum(parts);
  return std::log2(kTwoPi) + (1.0 - p) * log2_integral;
}

CapacityResult ring_capacity_radial(const MeasureProfile& profile, double p,
                                    double r, double R) {
  if (!(r > 0.0 && R > r)) {
    throw Error::domain("ring capacity requires 0 < r < R, got r = " + fmt(r) +
                        ", R = " + fmt(R));
  }
  double lc = log2_ring_capacity(profile, p, std::log2(r), std::log2(R));
  CapacityResult res;
  res.method = CapacityResult::Method::ClosedForm;
  res.error_estimate = 0.0;
  res.value = lc > 996.0 ? logmath::kPosInf : std::exp2(lc);
  return res;
}

double radial_green_constant(double alpha, double p) {
  double ap = a_exponent(p, alpha);  // validates the (1, 2+alpha) range
  return std::pow(kTwoPi, -1.0 / (p - 1.0)) / ap;
}

double level_energy_check(const ScalarField& field, double a, double b,
                          double p, GradNormKind kind,
                          const MeasureProfile& profile) {
  if (a > b) throw Error::domain("level_energy_check requires a <= b");
  if (a == b) return 0.0;
  if (!(a >= 0.0)) throw Error::domain("level_energy_check requires a >= 0");
  return band_energy(field, a, b, p, kind, profile);
}

}  // namespace greenforge
