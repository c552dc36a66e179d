#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "capacity.hpp"
#include "solver.hpp"

namespace greenforge {

/// Periodic 1-Lipschitz angular profile, stored as samples with linear
/// interpolation.  The built-in Triangle has its kinks at theta = 0 and pi
/// aligned with sample nodes so equality-set checks are exact there.
class LipschitzProfile {
 public:
  static LipschitzProfile zero(int n_samples = 256);
  static LipschitzProfile triangle(int n_samples = 256);
  static LipschitzProfile from_samples(std::vector<double> samples,
                                       double lipschitz_bound = 1.0,
                                       std::string name = "custom");
  static LipschitzProfile named(const std::string& name, int n_samples = 256);

  int size() const { return static_cast<int>(samples_.size()); }
  double sample(int j) const { return samples_[j]; }
  double value(double theta) const;
  /// exact slope of the linear segment [theta_j, theta_{j+1})
  double segment_slope(int j) const;
  double max_abs_slope() const;
  double min_value() const;
  double max_value() const;
  double lipschitz_bound() const { return bound_; }
  const std::string& name() const { return name_; }

  /// exact integral over the circle of e^{lam f(theta)}
  double integral_exp(double lam) const;

  bool same_samples(const LipschitzProfile& other) const;

 private:
  LipschitzProfile(std::vector<double> s, double bound, std::string name);
  std::vector<double> samples_;
  double bound_ = 1.0;
  std::string name_;
};

/// Member of the explicit singular-function family
///   u = A (r^{-a_p} - R^{-a_p}) e^{a_p f(theta)}   (bounded domain B_R)
///   u = A r^{-a_p} e^{a_p f(theta)}                (whole plane)
/// for the power weight |x|^alpha under the l1-Finsler metric.
struct GreenCandidate {
  double p = 1.5;
  double alpha = 0.0;
  double R = 1.0;  // +inf for the unbounded variant
  LipschitzProfile profile = LipschitzProfile::zero();
  double a_p = 1.0;
  std::optional<double> A;

  static GreenCandidate bounded(double p, double alpha, double R,
                                LipschitzProfile f);
  static GreenCandidate unbounded(double p, double alpha, LipschitzProfile f);

  bool is_bounded() const { return std::isfinite(R); }
  bool normalized() const { return A.has_value(); }
  double scale() const { return A.value_or(1.0); }

  double raw_value(double r, double theta) const;
  double value(double r, double theta) const;  // raw times A when normalized
  double radial_derivative(double r, double theta) const;
  /// the minimal upper gradient |d_r u| of the Finsler structure
  double minimal_gradient(double r, double theta) const;
  /// analytic (|d_theta u|/r) / |d_r u| at a point
  double dominance_ratio(double r, double theta) const;
  GreenCandidate with_normalization(double a) const;
  RayFunction ray(double theta) const;
  /// radius of the raw-scale level set boundary along angle theta
  double level_radius(double raw_level, double theta) const;
};

/// max over radial cells and profile segments of the analytic dominance
/// ratio; the family contract is <= 1 (+ slack)
double gradient_dominance_check(const GreenCandidate& c, const PolarGrid& grid);

/// closed-form int_{a < u < b} g_u^p dmu on the candidate's own scale
double level_energy_check(const GreenCandidate& c, double a, double b);

struct NormalizeOptions {
  std::vector<double> levels{0.5, 1.0, 2.0};  // raw-scale levels
  int grid_m = 160;
  int grid_n = 96;
  double r0_shrink = 3.0;  // grid inner radius = deepest level radius / this
  double spread_tol = 0.02;
  SolveOptions solve;
};

struct LevelProbe {
  double level;            // requested raw level
  double effective_level;  // marked-boundary mean actually used
  double capacity;
  double a_estimate;
};

struct NormalizationReport {
  double A = 0.0;
  double spread = 0.0;
  std::vector<LevelProbe> probes;
};

/// Variational normalization: for each level t, cap({u_raw >= t}, B_R) is
/// solved and A(t) = cap^{1/(1-p)} / t recovered; the probes must agree to
/// spread_tol or a normalization-inconsistency error is raised.
NormalizationReport normalize_to_green(GreenCandidate& c,
                                       NormalizeOptions opts = {});

struct RatioTraceRow {
  double r;
  double m;        // circle minimum
  double M;        // circle maximum
  double cap_pow;  // cap_p(B_r, B_Rcap)^{1/(1-p)}
};

std::vector<RatioTraceRow> ratio_trace(const GreenCandidate& c,
                                       std::span<const double> radii,
                                       double R_cap,
                                       const MeasureProfile& profile);
std::vector<RatioTraceRow> ratio_trace(const ScalarField& u, double p,
                                       std::span<const double> radii,
                                       double R_cap,
                                       const MeasureProfile& profile);

struct WitnessCheck {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct WitnessReport {
  bool accepted = false;
  std::vector<WitnessCheck> checks;
  double distinctness = 0.0;
  std::string message;
};

struct NonuniquenessOptions {
  double el_tol = 1e-6;
  double dominance_tol = 1e-6;
  double normalization_tol = 0.05;
  double distinctness_threshold = 0.10;
  double probe_radius = 0.3;
  int rays = 8;
  NormalizeOptions normalize;
};

/// Certifies two normalized family members as distinct Green candidates:
/// per-ray Euler-Lagrange residuals, gradient dominance, superlevel
/// normalization, then distinctness on a probe circle.  Any failing
/// sub-check refuses the witness and names itself.
WitnessReport nonuniqueness_witness(double p, double alpha, double R,
                                    const LipschitzProfile& f1,
                                    const LipschitzProfile& f2,
                                    NonuniquenessOptions opts = {});

struct ComparisonOptions {
  int grid_m = 128;
  int grid_n = 128;
  double r0 = 0.01;
  double r_probe_outer = 0.95;  // strictly inside the punctured disc
  double equality_tol = 1e-12;
  double energy_gap = 0.01;
  double annulus_r0 = 0.02;  // the gap concentrates near the singularity
  double annulus_R = 0.9;
  std::string second_profile = "triangle";
  SolveOptions solve;

  ComparisonOptions() { solve.schedule = {4.0, 8.0, 16.0, 32.0, 64.0}; }
};

/// Strong-comparison-principle failure witness: u1 (Zero) vs u2 (Triangle)
/// touch exactly on the theta = 0 ray; at p = 2 (alpha > 0) the difference
/// v = u2 - u1 loses the Dirichlet energy contest, so v is not 2-harmonic.
WitnessReport comparison_witness(double p, double alpha,
                                 ComparisonOptions opts = {});

}  // namespace greenforge
