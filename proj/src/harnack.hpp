#pragma once

#include <optional>
#include <vector>

#include "grid.hpp"

namespace greenforge {

/// Constants of the iterated Harnack inequality
///   sup_{delta B} u <= (1 + C0 delta^alpha) inf_{delta B} u,
/// derived from a Harnack constant A and Poincare dilation lambda.
struct HarnackConstants {
  double A = 2.0;
  double lambda = 1.0;
  double alpha_exp = 0.0;  // alpha log(50 lambda) = log(A/(A-1))
  double C0 = 0.0;         // A (50 lambda)^alpha = A^2/(A-1)
};

HarnackConstants iteration_constants(double A, double lambda);

struct DecayPoint {
  double delta;
  double ratio;            // sup / inf over delta B
  bool within_hypothesis;  // delta <= 1/(50 lambda)
};

struct DecayTrace {
  std::vector<DecayPoint> points;          // deltas in decreasing order
  std::optional<double> fitted_exponent;   // slope of log(ratio-1) vs log delta
};

/// sup/inf ratios of a positive field over concentric balls delta * B around
/// (cx, cy); samples are nested across deltas so the measured ratios are
/// monotone by construction whenever the field is.
DecayTrace oscillation_decay(const ScalarField& field, double cx, double cy,
                             double ball_radius, std::vector<double> deltas,
                             double lambda = 1.0);

}  // namespace greenforge
