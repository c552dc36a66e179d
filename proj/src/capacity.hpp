#pragma once

#include <string>

#include "weights.hpp"

namespace greenforge {

struct CapacityResult {
  enum class Method { ClosedForm, Variational };
  double value = 0.0;  // +inf past the 1e300 overflow marker
  Method method = Method::ClosedForm;
  double error_estimate = 0.0;

  bool is_infinite() const { return !(value < 1e300); }
};

const char* to_string(CapacityResult::Method m);

/// a_p = (2 + alpha - p)/(p - 1); requires alpha > -1 and 1 < p < 2 + alpha
double a_exponent(double p, double alpha);

/// cap_p(B_r, B_R) = 2 pi ( int_r^R (w(rho) rho)^{-1/(p-1)} d(rho) )^{1-p}
CapacityResult ring_capacity_radial(const MeasureProfile& profile, double p,
                                    double r, double R);
double log2_ring_capacity(const MeasureProfile& profile, double p,
                          double log2_r, double log2_R);

/// The constant kappa = (2 pi)^{-1/(p-1)} / a_p that turns the radial profile
/// r^{-a_p} - R^{-a_p} into a Green function for the power weight |x|^alpha:
/// with u = kappa (r^{-a_p} - R^{-a_p}), cap_p({u >= b}, B_R) = b^{1-p} at
/// every level b and every R.
double radial_green_constant(double alpha, double p);

struct ScalarField;
enum class GradNormKind;

/// measured energy int_{a < u < b} g_u^p dmu on a discrete field, with the
/// same cell quadrature as the solver; for a normalized Green function the
/// contract is ~ b - a.  a == b returns 0; a > b is a domain error.
double level_energy_check(const ScalarField& field, double a, double b,
                          double p, GradNormKind kind,
                          const MeasureProfile& profile);

}  // namespace greenforge
