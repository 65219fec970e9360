#ifndef EIGENSENSE_GAUSSIAN_MODEL_HPP
#define EIGENSENSE_GAUSSIAN_MODEL_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "eigensense/quadrature.hpp"
#include "eigensense/wishart_spec.hpp"

namespace eigensense {

/// Normal parameterization of the two extreme eigenvalues.
struct GaussianPair {
  double mean_max = 0.0;
  double sd_max = 1.0;
  double mean_min = 0.0;
  double sd_min = 1.0;

  void validate() const {
    if (!(sd_max > 0.0) || !(sd_min > 0.0))
      throw std::invalid_argument("GaussianPair: standard deviations must be positive");
    if (!(mean_max > mean_min))
      throw std::invalid_argument("GaussianPair: mean_max must exceed mean_min");
  }

  /// Pair for noise variance `s2` given a pair computed at unit variance.
  GaussianPair scaled(double s2) const {
    return {mean_max * s2, sd_max * s2, mean_min * s2, sd_min * s2};
  }
};

inline double normal_pdf(double x, double mean, double sd) {
  const double u = (x - mean) / sd;
  return std::exp(-0.5 * u * u) / (sd * std::sqrt(2.0 * std::numbers::pi));
}

/// Standard normal CDF via erfc, accurate in both tails.
inline double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

inline double normal_cdf(double x, double mean, double sd) {
  return normal_cdf((x - mean) / sd);
}

namespace detail {

// Integration window in y for integrands carrying f_X(y z) f_Y(y): the product
// of the two Gaussian factors is itself Gaussian in y.
struct RatioWindow {
  double center;
  double width;
};

inline RatioWindow ratio_window(double z, const GaussianPair& p) {
  const double prec =
      z * z / (p.sd_max * p.sd_max) + 1.0 / (p.sd_min * p.sd_min);
  const double center =
      (z * p.mean_max / (p.sd_max * p.sd_max) + p.mean_min / (p.sd_min * p.sd_min)) / prec;
  return {center, 1.0 / std::sqrt(prec)};
}

}  // namespace detail

/// Density of X/Y for independent X ~ N(mean_max, sd_max^2) and
/// Y ~ N(mean_min, sd_min^2), in closed form.
inline double independence_ratio_pdf(double z, const GaussianPair& p) {
  const double vx = p.sd_max * p.sd_max;
  const double vy = p.sd_min * p.sd_min;
  const double a = std::sqrt(z * z / vx + 1.0 / vy);
  const double b = p.mean_max * z / vx + p.mean_min / vy;
  const double q = p.mean_max * p.mean_max / vx + p.mean_min * p.mean_min / vy;
  const double ba = b / a;
  const double pi = std::numbers::pi;
  // b*c/a^3 * (Phi(b/a) - Phi(-b/a)) / (sqrt(2 pi) sx sy), with c folded into
  // one exponent so neither factor overflows.
  const double body = ba / (a * a) * std::exp(0.5 * (ba * ba - q)) *
                      (1.0 - std::erfc(ba / std::numbers::sqrt2)) /
                      (std::sqrt(2.0 * pi) * p.sd_max * p.sd_min);
  const double tail = std::exp(-0.5 * q) / (a * a * pi * p.sd_max * p.sd_min);
  return std::max(0.0, body + tail);
}

/// Same density by direct quadrature of int f_X(y z) f_Y(y) |y| dy.
inline double independence_ratio_pdf_quadrature(double z, const GaussianPair& p,
                                                double abs_tol = 1e-13) {
  auto integrand = [&](double y) {
    return normal_pdf(y * z, p.mean_max, p.sd_max) *
           normal_pdf(y, p.mean_min, p.sd_min) * std::abs(y);
  };
  const auto w = detail::ratio_window(z, p);
  const double lo = w.center - 40.0 * w.width;
  const double hi = w.center + 40.0 * w.width;
  std::array<double, 9> bp{lo,
                           w.center - 8.0 * w.width,
                           w.center - 3.0 * w.width,
                           w.center - w.width,
                           w.center,
                           w.center + w.width,
                           w.center + 3.0 * w.width,
                           w.center + 8.0 * w.width,
                           hi};
  // |y| has a kink at 0.
  std::vector<double> points(bp.begin(), bp.end());
  if (lo < 0.0 && hi > 0.0) points.push_back(0.0);
  std::sort(points.begin(), points.end());
  QuadOptions opts;
  opts.abs_tol = abs_tol;
  opts.rel_tol = 1e-13;
  const auto r = integrate_adaptive(integrand, std::span<const double>(points), opts);
  if (!r.converged)
    throw numerical_error("independence ratio quadrature did not converge at z=" +
                          std::to_string(z));
  return r.value;
}

}  // namespace eigensense

#endif  // EIGENSENSE_GAUSSIAN_MODEL_HPP
