#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "cavicool/errors.hpp"

namespace cavicool {

// Classic fixed-step RK4 over any vector type with +, scalar *, and copy.
template <typename Vec, typename F>
Vec rk4_step(const F& f, const Vec& y, double t, double dt) {
  const Vec k1 = f(t, y);
  const Vec k2 = f(t + 0.5 * dt, Vec(y + (0.5 * dt) * k1));
  const Vec k3 = f(t + 0.5 * dt, Vec(y + (0.5 * dt) * k2));
  const Vec k4 = f(t + dt, Vec(y + dt * k3));
  return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

namespace detail {

template <typename F>
double adaptive_simpson_impl(const F& f, double a, double b, double fa, double fm,
                             double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson_impl(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_impl(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol, int max_depth = 50) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::adaptive_simpson_impl(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

// Uniform double in [0,1) from the top 53 bits of the generator output.
// Hand-rolled instead of std::uniform_real_distribution so that a given seed
// produces the same stream on every platform.
inline double uniform_double(std::mt19937_64& rng) {
  return double(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform_double(rng);
}

// Log-uniform draw over [lo, hi], lo > 0.
inline double log_uniform_in(std::mt19937_64& rng, double lo, double hi) {
  return std::exp(uniform_in(rng, std::log(lo), std::log(hi)));
}

// Least-squares line fit; returns (slope, intercept).
inline std::pair<double, double> fit_slope(const std::vector<double>& xs,
                                           const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw validation_error("fit_slope needs at least two matched points");
  }
  const double n = double(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw validation_error("fit_slope: degenerate abscissae");
  const double slope = (n * sxy - sx * sy) / denom;
  return {slope, (sy - slope * sx) / n};
}

}  // namespace cavicool
