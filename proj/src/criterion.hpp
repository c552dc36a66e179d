#pragma once

#include <optional>
#include <string>
#include <vector>

#include "weights.hpp"

namespace greenforge {

enum class Classification { CriterionHolds, CriterionFails, Inconclusive };
enum class SingletonSign { Zero, Positive };

const char* to_string(Classification c);
const char* to_string(SingletonSign s);

/// tail integral int_r^upper (rho^p / mu(B_rho))^{1/(p-1)} d(rho)/rho
double log2_wiener_tail(const MeasureProfile& profile, double p, double log2_r,
                        double log2_upper);
double wiener_tail(const MeasureProfile& profile, double p, double r,
                   double upper = 1.0);

/// F(r) = (mu(B_r)/r^p)^{1/(p-1)} * wiener_tail(r)
double log2_criterion_factor(const MeasureProfile& profile, double p,
                             double log2_r);
double criterion_factor(const MeasureProfile& profile, double p, double r);

struct SingletonBlock {
  double log2_lo;
  double log2_hi;
  double log2_contrib;
};

struct SingletonReport {
  SingletonSign sign;
  std::string rule;
  std::vector<SingletonBlock> blocks;
};

/// Divergence test for int_0^1 (rho^p/mu(B_rho))^{1/(p-1)} d(rho)/rho.
/// Decides Zero on per-block lower bounds that do not decay (or grow),
/// Positive on a geometric tail bound; anything else raises an
/// Inconclusive error rather than guessing.
SingletonReport singleton_capacity_sign(const MeasureProfile& profile,
                                        double p);

struct CriterionOptions {
  int probe_j_min = 1;
  int probe_j_max = 40;            // r_j = 2^{-j}
  double divergence_threshold = 1e3;
  double plateau_rel = 0.01;
  double plateau_decades = 3.0;
  double rule_eps = 1e-9;
};

struct CriterionTrace {
  double p = 0.0;
  std::vector<double> radii;         // strictly decreasing
  std::vector<double> factors;       // F(r_j), +inf once past double range
  std::vector<double> log2_factors;
  Classification classification = Classification::Inconclusive;
  std::string rule;                  // which rule decided the verdict
  ExponentWindow window{0.0, 0.0};
  std::optional<Classification> probe_classification;
};

CriterionTrace classify_uniqueness(const MeasureProfile& profile, double p,
                                   CriterionOptions opts = {});

}  // namespace greenforge
