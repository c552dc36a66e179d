#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "logmath.hpp"

namespace greenforge {

enum class WeightKind { Power, Oscillating, Perturbed };

/// One power-law branch of a radial weight: w(rho) = 2^{log2_coeff} * rho^{g-2}
/// on log2(rho) in [t_lo, t_hi].  The measure integrand w(rho)*rho is then a
/// pure power rho^{g-1} with g > 0, so cumulative masses have closed forms.
struct WeightPiece {
  double t_lo;
  double t_hi;
  double g;           // mass exponent: integral of w*rho over the piece ~ rho^g
  double log2_coeff;  // log2 of the branch coefficient
};

struct OscillatingParams {
  double a, b, c, d;
  double lambda;                    // (c-a)(d-b) / ((b-a)(d-c)) > 1
  int max_generation;               // deepest supported k
  std::vector<double> log2_alpha;   // log2 alpha_k = -lambda^k, k = 0..K+5
  double beta_ratio;                // (d-b)/(d-c); log2 beta_k = beta_ratio * log2 alpha_k
};

/// Radial weight on the plane.  All Oscillating arithmetic lives in the log2
/// domain so that scales alpha_k = 2^(-lambda^k) remain addressable far past
/// the point where linear doubles underflow.
class WeightModel {
 public:
  static WeightModel power(double alpha);
  static WeightModel oscillating(double a, double b, double c, double d,
                                 int max_generation = 60);
  /// base weight times a bounded multiplier; the declared bounds (not the
  /// evaluator) drive all invariant checks.  The evaluator receives log2(rho)
  /// and returns the linear multiplier value.
  static WeightModel perturbed(const WeightModel& base,
                               std::function<double(double)> multiplier,
                               double factor_low, double factor_high);
  /// grammar: "power:<alpha>" | "osc:<a>,<b>,<c>,<d>"
  static WeightModel parse(const std::string& spec);

  WeightKind kind() const { return kind_; }
  std::string spec_string() const;

  double weight_at(double rho) const;
  double log2_weight_at(double log2_rho) const;

  double power_alpha() const;
  const OscillatingParams& osc() const;
  const WeightModel& perturbed_base() const;
  double factor_low() const { return factor_low_; }
  double factor_high() const { return factor_high_; }

  double log2_alpha_k(int k) const;
  double log2_beta_k(int k) const;
  /// generation k with alpha_{k+1} <= rho <= alpha_k; requires log2_rho <= -1
  int generation_of(double log2_rho) const;

  /// lowest supported log2(rho); queries below raise a range error naming the
  /// deepest supported generation
  double log2_floor() const;

  /// power-law branches covering [t_lo, t_hi] in log2(rho), ascending
  std::vector<WeightPiece> pieces_in(double t_lo, double t_hi) const;

  bool has_multiplier() const { return static_cast<bool>(multiplier_); }
  double multiplier_at(double log2_rho) const;

 private:
  WeightModel() = default;
  void check_osc_range(double log2_rho) const;

  WeightKind kind_ = WeightKind::Power;
  double alpha_ = 0.0;  // Power
  std::optional<OscillatingParams> osc_;
  std::shared_ptr<const WeightModel> base_;  // Perturbed
  std::function<double(double)> multiplier_;
  double factor_low_ = 1.0;
  double factor_high_ = 1.0;
};

struct ProfileOptions {
  double log2_r_max = 8.0;          // top of the query range
  std::optional<double> log2_r_min; // defaults per model kind
  double table_floor = -300.0;      // table mesh never goes below this
  double table_step = 0.25;         // octaves between table samples
  double quad_rel_tol = 1e-11;      // adaptive quadrature tolerance (log abs ~1e-10)
};

struct ExponentWindow {
  double q_lower_sup;  // estimated sup of the lower exponent set
  double q_upper_inf;  // estimated inf of the upper exponent set
};

struct WindowOptions {
  double mesh_step = 1.0;                  // octaves
  std::optional<double> min_separation;    // octaves; default min(8, span/4)
};

/// Cumulative ball-measure profile mu(B_r) = 2*pi * int_0^r w(rho) rho d(rho)
/// of a radial weight, held as log2 mu over a log-spaced mesh with exact
/// per-branch antiderivatives behind every query.
class MeasureProfile {
 public:
  explicit MeasureProfile(WeightModel model, ProfileOptions opts = {});

  const WeightModel& model() const { return model_; }
  const ProfileOptions& options() const { return opts_; }

  double log2_r_min() const { return log2_r_min_; }
  double log2_r_max() const { return opts_.log2_r_max; }

  /// exact log2 mu(B_{2^t}); valid for t in [log2_r_min, log2_r_max]
  double log2_mu(double log2_r) const;
  /// linear wrapper with the range check from the spec'd precondition
  double mu_ball(double r) const;

  ExponentWindow exponent_window(double log2_r_lo, double log2_r_hi,
                                 WindowOptions wopts = {}) const;
  /// model-appropriate default range for exponent estimation
  std::pair<double, double> default_window_range() const;

  /// max over the table mesh of log2 mu(B_{2r}) - log2 mu(B_r)
  double doubling_max_log2() const;

  struct TableEntry {
    double log2_r;
    double log2_mu;
  };
  const std::vector<TableEntry>& table() const { return table_; }
  std::string table_csv() const;  // columns log2_r,log2_mu

 private:
  struct Anchor {
    double t;        // log2 rho at a branch edge
    double log2_mu;  // cumulative measure at that edge
  };
  void build_anchors();
  double log2_piece_mass(const WeightPiece& piece, double t0, double t1) const;

  WeightModel model_;
  ProfileOptions opts_;
  double log2_r_min_ = 0.0;
  std::vector<Anchor> anchors_;
  std::vector<TableEntry> table_;
};

}  // namespace greenforge
