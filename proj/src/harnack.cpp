#include "harnack.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace greenforge {

HarnackConstants iteration_constants(double A, double lambda) {
  if (!(A > 1.0)) {
    throw Error::domain("iteration constants require A > 1");
  }
  if (!(lambda >= 1.0)) {
    throw Error::domain("iteration constants require lambda >= 1");
  }
  HarnackConstants h;
  h.A = A;
  h.lambda = lambda;
  h.alpha_exp = std::log(A / (A - 1.0)) / std::log(50.0 * lambda);
  h.C0 = A * std::pow(50.0 * lambda, h.alpha_exp);
  return h;
}

DecayTrace oscillation_decay(const ScalarField& field, double cx, double cy,
                             double ball_radius, std::vector<double> deltas,
                             double lambda) {
  if (deltas.empty()) throw Error::domain("oscillation_decay needs deltas");
  if (!(ball_radius > 0.0)) {
    throw Error::domain("oscillation_decay needs a positive ball radius");
  }
  std::sort(deltas.begin(), deltas.end(), std::greater<double>());

  auto sample_circle = [&](double rad, std::vector<double>& out) {
    constexpr int kSamples = 720;
    for (int s = 0; s < kSamples; ++s) {
      double phi = 2.0 * 3.14159265358979323846 * s / kSamples;
      double x = cx + rad * std::cos(phi);
      double y = cy + rad * std::sin(phi);
      double r = std::hypot(x, y);
      double th = std::atan2(y, x);
      double v = field.interpolate(r, th);
      if (!(v > 0.0)) {
        throw Error::domain("oscillation_decay probe met a nonpositive value");
      }
      out.push_back(v);
    }
  };

  // for p-harmonic fields the ball extrema sit on the boundary circle, so
  // each delta is probed on its own circle
  DecayTrace trace;
  for (double delta : deltas) {
    std::vector<double> samples;
    sample_circle(delta * ball_radius, samples);
    double mn = *std::min_element(samples.begin(), samples.end());
    double mx = *std::max_element(samples.begin(), samples.end());
    trace.points.push_back({delta, mx / mn, delta <= 1.0 / (50.0 * lambda)});
  }

  // least squares of log(ratio - 1) against log(delta)
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& pt : trace.points) {
    if (pt.ratio - 1.0 < 1e-14) continue;
    double x = std::log(pt.delta), y = std::log(pt.ratio - 1.0);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n >= 2 && sxx * n - sx * sx > 1e-14) {
    trace.fitted_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  return trace;
}

}  // namespace greenforge
