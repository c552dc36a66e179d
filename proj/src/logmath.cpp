#include "logmath.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace greenforge::logmath {

double log2_add(double x, double y) {
  if (x == kNegInf) return y;
  if (y == kNegInf) return x;
  double hi = std::max(x, y);
  double lo = std::min(x, y);
  return hi + std::log1p(std::exp2(lo - hi)) / kLn2;
}

double log2_sub(double x, double y) {
  if (y == kNegInf) return x;
  if (x <= y) return kNegInf;
  return x + std::log1p(-std::exp2(y - x)) / kLn2;
}

double log2_sum(std::span<const double> values) {
  double acc = kNegInf;
  for (double v : values) acc = log2_add(acc, v);
  return acc;
}

double log2_exp_integral(double m, double c, double t0, double t1) {
  if (t1 <= t0) return kNegInf;
  double span = t1 - t0;
  if (std::abs(m) * span < 1e-12) {
    // integrand essentially constant across the interval
    return c + m * 0.5 * (t0 + t1) + std::log2(span);
  }
  if (m > 0.0) {
    // 2^c (2^{m t1} - 2^{m t0}) / (m ln2)
    return c + m * t1 + std::log1p(-std::exp2(m * (t0 - t1))) / kLn2 -
           std::log2(m * kLn2);
  }
  return c + m * t0 + std::log1p(-std::exp2(m * (t1 - t0))) / kLn2 -
         std::log2(-m * kLn2);
}

namespace {

double simpson_rec(const std::function<double(double)>& f, double a, double fa,
                   double b, double fb, double m, double fm, double whole,
                   double tol, int depth) {
  double lm = 0.5 * (a + m);
  double rm = 0.5 * (m + b);
  double flm = f(lm);
  double frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double t0,
                        double t1, double rel_tol, int max_depth) {
  if (t1 <= t0) return 0.0;
  double m = 0.5 * (t0 + t1);
  double f0 = f(t0);
  double f1 = f(t1);
  double fm = f(m);
  double whole = (t1 - t0) / 6.0 * (f0 + 4.0 * fm + f1);
  double scale = std::max({std::abs(whole), (t1 - t0) * std::abs(fm), 1e-300});
  return simpson_rec(f, t0, f0, t1, f1, m, fm, whole, rel_tol * scale,
                     max_depth);
}

double log2_int_exp2(const std::function<double(double)>& h, double t0,
                     double t1, double rel_tol) {
  if (t1 <= t0) return kNegInf;
  // estimate max of h over the interval; h is smooth and at worst unimodal
  // per weight branch, so dense sampling plus a local polish suffices
  constexpr int kSamples = 17;
  double href = kNegInf;
  double targ = t0;
  for (int i = 0; i < kSamples; ++i) {
    double t = t0 + (t1 - t0) * static_cast<double>(i) / (kSamples - 1);
    double v = h(t);
    if (v > href) {
      href = v;
      targ = t;
    }
  }
  // golden-section polish around the sampled max
  double step = (t1 - t0) / (kSamples - 1);
  double lo = std::max(t0, targ - step);
  double hi = std::min(t1, targ + step);
  for (int it = 0; it < 24 && hi - lo > 1e-12 * (t1 - t0); ++it) {
    double m1 = lo + 0.381966011250105 * (hi - lo);
    double m2 = hi - 0.381966011250105 * (hi - lo);
    if (h(m1) < h(m2)) {
      lo = m1;
    } else {
      hi = m2;
    }
  }
  href = std::max(href, h(0.5 * (lo + hi)));

  auto scaled = [&](double t) { return std::exp2(h(t) - href); };
  double integral = adaptive_simpson(scaled, t0, t1, rel_tol);
  if (!(integral > 0.0)) return kNegInf;
  return href + std::log2(integral);
}

}  // namespace greenforge::logmath
