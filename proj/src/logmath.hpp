#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <span>

namespace greenforge::logmath {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();
inline constexpr double kLn2 = 0.6931471805599453094172321;

inline double pow2(double x) { return std::exp2(x); }

/// log2(2^x + 2^y), safe for widely separated magnitudes.
double log2_add(double x, double y);

/// log2(2^x - 2^y); requires x >= y, returns -inf when x == y.
double log2_sub(double x, double y);

/// log2 of the sum of 2^v over all entries.
double log2_sum(std::span<const double> values);

/// log2 of integral_{t0}^{t1} 2^{m*t + c} dt  (t1 >= t0).
/// Exact closed form; the near-degenerate |m|*(t1-t0) -> 0 limit is handled.
double log2_exp_integral(double m, double c, double t0, double t1);

/// Adaptive Simpson on a plain double-valued integrand.
double adaptive_simpson(const std::function<double(double)>& f, double t0,
                        double t1, double rel_tol, int max_depth = 40);

/// log2 of integral_{t0}^{t1} 2^{h(t)} dt for a smooth exponent function h.
/// The integrand is rescaled by an internally estimated max of h so that the
/// quadrature runs on O(1) values even when h spans thousands of octaves.
double log2_int_exp2(const std::function<double(double)>& h, double t0,
                     double t1, double rel_tol);

}  // namespace greenforge::logmath
