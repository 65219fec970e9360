#ifndef EIGENSENSE_ORDER_STATISTIC_RATIO_HPP
#define EIGENSENSE_ORDER_STATISTIC_RATIO_HPP

// Ratio lambda_1 / lambda_M under the order-statistics model: the two extreme
// eigenvalues are treated as the max and min of M draws whose marginals are
// the Gaussians of a GaussianPair, so that
//
//   f(x, y) = M (M-1) f1(x) fM(y) [F1(x) - FM(y)]_+^{M-2}
//
// and the ratio density is int f(y z, y) |y| dy.

#include <algorithm>
#include <cmath>
#include <limits>
#include <locale>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "eigensense/gaussian_model.hpp"
#include "eigensense/quadrature.hpp"
#include "eigensense/wishart_spec.hpp"

namespace eigensense {

enum class CurveMethod { improved, independence, tracy_widom, empirical };

inline std::string_view to_string(CurveMethod m) {
  switch (m) {
    case CurveMethod::improved: return "improved";
    case CurveMethod::independence: return "independence";
    case CurveMethod::tracy_widom: return "tracy_widom";
    case CurveMethod::empirical: return "empirical";
  }
  return "unknown";
}

/// Tabulated density of the ratio statistic. `pdf` is already divided by
/// `raw_mass`, the trapezoid integral of the density before normalization.
struct RatioCurve {
  std::vector<double> grid;
  std::vector<double> pdf;
  std::vector<double> cdf;
  double raw_mass = 1.0;
  CurveMethod method = CurveMethod::improved;

  double z_min() const { return grid.front(); }
  double z_max() const { return grid.back(); }
  /// Linear interpolation of the tabulated CDF, clamped to [0, 1] off-grid.
  double cdf_at(double z) const;
};

struct GridSpec {
  double z_min = 0.0;
  double z_max = 0.0;
  int n_points = 1601;

  void validate() const {
    if (!(z_min < z_max)) throw std::invalid_argument("grid: need z_min < z_max");
    if (n_points < 64) throw std::invalid_argument("grid: need at least 64 points");
  }
  std::vector<double> points() const {
    std::vector<double> z(n_points);
    const double h = (z_max - z_min) / (n_points - 1);
    for (int k = 0; k < n_points; ++k) z[k] = z_min + k * h;
    z.back() = z_max;
    return z;
  }
};

/// "zmin:zmax:points"
inline GridSpec parse_grid_spec(std::string_view text) {
  std::string s(text);
  for (char& c : s)
    if (c == ':') c = ' ';
  std::istringstream in(s);
  in.imbue(std::locale::classic());
  GridSpec g;
  if (!(in >> g.z_min >> g.z_max >> g.n_points) || !(in >> std::ws).eof())
    throw std::invalid_argument("grid must look like zmin:zmax:points, got '" +
                                std::string(text) + "'");
  g.validate();
  return g;
}

/// Default grid: +-6 sigma box of both extremes mapped through x / y.
inline GridSpec default_grid(const GaussianPair& p, int n_points = 1601) {
  const double floor_min = 0.05 * p.mean_min;
  GridSpec g;
  g.z_min = std::max(1.0, (p.mean_max - 6.0 * p.sd_max) / (p.mean_min + 6.0 * p.sd_min));
  g.z_max = (p.mean_max + 6.0 * p.sd_max) / std::max(floor_min, p.mean_min - 6.0 * p.sd_min);
  g.n_points = n_points;
  return g;
}

inline double joint_pdf_extremes(double x, double y, const GaussianPair& p, int m) {
  if (m < 2) throw std::invalid_argument("joint_pdf_extremes: need M >= 2");
  const double bracket =
      normal_cdf(x, p.mean_max, p.sd_max) - normal_cdf(y, p.mean_min, p.sd_min);
  if (m > 2 && bracket <= 0.0) return 0.0;
  const double power = m == 2 ? 1.0 : std::pow(bracket, m - 2);
  return m * (m - 1.0) * normal_pdf(x, p.mean_max, p.sd_max) *
         normal_pdf(y, p.mean_min, p.sd_min) * power;
}

/// Which binomial expansion of the bracket power to integrate.
enum class ExpansionVariant {
  corrected,   // i = 0..M-2; the sum is the bracket power itself
  from_one,    // i = 1..M-2; drops the i = 0 term and with it mass
};

struct RatioQuadOptions {
  // Roundoff in the integrand sits near 1e-12 for M = 20, so tighter absolute
  // targets stall; 2e-11 still leaves a factor 5 under the 1e-10 budget.
  double abs_tol = 2e-11;
  std::size_t max_panels = 4000;
};

namespace detail {

// Support in y of the integrand at ratio z, cut to where the bracket is
// nonnegative: (y z - u1)/s1 >= (y - uM)/sM, a half-line because Phi is
// monotone. Returns false when the clamp region misses the window.
struct RatioDomain {
  std::vector<double> breakpoints;
};

inline bool ratio_domain(double z, const GaussianPair& p, int m, RatioDomain& out) {
  double lo = p.mean_min - 10.0 * p.sd_min;
  double hi = p.mean_max + 10.0 * p.sd_max;
  const double slope = z / p.sd_max - 1.0 / p.sd_min;
  const double offset = p.mean_max / p.sd_max - p.mean_min / p.sd_min;
  double kink = std::numeric_limits<double>::quiet_NaN();
  if (m > 2) {
    if (slope == 0.0) {
      if (offset > 0.0) return false;
    } else {
      kink = offset / slope;
      if (slope > 0.0)
        lo = std::max(lo, kink);
      else
        hi = std::min(hi, kink);
    }
  }
  if (!(lo < hi)) return false;

  std::vector<double> bp{lo, hi};
  auto add = [&](double v) {
    if (v > lo && v < hi) bp.push_back(v);
  };
  const auto w = ratio_window(z, p);
  for (double k : {-8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0}) {
    add(w.center + k * w.width);
    add(p.mean_min + k * p.sd_min);
  }
  add(0.0);
  if (std::isfinite(kink)) {
    // The bracket power behaves like (y - kink)^{M-2}; resolve its onset.
    const double scale = 1.0 / std::abs(slope);
    for (double k : {0.25, 1.0, 3.0}) add(kink + (slope > 0 ? k : -k) * scale);
  }
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  out.breakpoints = std::move(bp);
  return true;
}

template <class G>
double integrate_ratio(double z, const GaussianPair& p, int m, G bracket_term,
                       const RatioQuadOptions& opts) {
  RatioDomain dom;
  if (!ratio_domain(z, p, m, dom)) return 0.0;
  auto integrand = [&](double y) {
    const double x = y * z;
    const double dens = normal_pdf(x, p.mean_max, p.sd_max) *
                        normal_pdf(y, p.mean_min, p.sd_min) * std::abs(y);
    if (dens == 0.0) return 0.0;
    return m * (m - 1.0) * dens * bracket_term(x, y);
  };
  QuadOptions q;
  q.abs_tol = opts.abs_tol;
  q.rel_tol = 1e-12;
  q.max_panels = opts.max_panels;
  const auto r = integrate_adaptive(integrand, std::span<const double>(dom.breakpoints), q);
  if (!r.converged)
    throw numerical_error("ratio density quadrature did not converge at z=" +
                          std::to_string(z) + " (error estimate " +
                          std::to_string(r.abs_error) + ")");
  return r.value;
}

}  // namespace detail

/// int f(y z, y) |y| dy with the clamped bracket.
inline double ratio_pdf_raw(double z, const GaussianPair& p, int m,
                            const RatioQuadOptions& opts = {}) {
  if (m < 2) throw std::invalid_argument("ratio_pdf_raw: need M >= 2");
  auto term = [&](double x, double y) {
    if (m == 2) return 1.0;
    const double b = normal_cdf(x, p.mean_max, p.sd_max) - normal_cdf(y, p.mean_min, p.sd_min);
    return b > 0.0 ? std::pow(b, m - 2) : 0.0;
  };
  return std::max(0.0, detail::integrate_ratio(z, p, m, term, opts));
}

/// The bracket power written as its binomial sum. Over the clamp half-line
/// this equals ratio_pdf_raw; the from_one variant omits the i = 0 term.
inline double ratio_pdf_expanded(double z, const GaussianPair& p, int m,
                                 ExpansionVariant variant = ExpansionVariant::corrected,
                                 const RatioQuadOptions& opts = {}) {
  if (m < 2) throw std::invalid_argument("ratio_pdf_expanded: need M >= 2");
  const int n = m - 2;
  std::vector<double> binom(n + 1, 1.0);
  for (int i = 1; i <= n; ++i) binom[i] = binom[i - 1] * (n - i + 1) / i;
  const int first = variant == ExpansionVariant::corrected ? 0 : 1;
  auto term = [&](double x, double y) {
    const double a = normal_cdf((x - p.mean_max) / p.sd_max);
    const double b = normal_cdf((y - p.mean_min) / p.sd_min);
    CompensatedSum s;
    for (int i = first; i <= n; ++i) {
      const double sign = ((n - i) % 2 == 0) ? 1.0 : -1.0;
      s.add(sign * binom[i] * std::pow(a, i) * std::pow(b, n - i));
    }
    return s.value();
  };
  return detail::integrate_ratio(z, p, m, term, opts);
}

/// Normalizes tabulated density values into a RatioCurve. Throws when the
/// trapezoid mass is below 0.5, which means the grid or model is unusable.
inline RatioCurve curve_from_density(std::vector<double> grid, std::vector<double> density,
                                     CurveMethod method) {
  if (grid.size() < 2 || grid.size() != density.size())
    throw std::invalid_argument("curve: grid and density sizes differ");
  for (std::size_t k = 1; k < grid.size(); ++k)
    if (!(grid[k] > grid[k - 1])) throw std::invalid_argument("curve: grid not increasing");
  std::vector<double> cum(grid.size(), 0.0);
  CompensatedSum acc;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    acc.add(0.5 * (density[k] + density[k - 1]) * (grid[k] - grid[k - 1]));
    cum[k] = acc.value();
  }
  const double mass = cum.back();
  if (!(mass >= 0.5))
    throw numerical_error(std::string(to_string(method)) + " curve: raw mass " +
                          std::to_string(mass) + " < 0.5 on [" + std::to_string(grid.front()) +
                          ", " + std::to_string(grid.back()) + "]");
  RatioCurve c;
  c.method = method;
  c.raw_mass = mass;
  c.pdf.resize(grid.size());
  c.cdf.resize(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    c.pdf[k] = density[k] / mass;
    c.cdf[k] = std::min(1.0, cum[k] / mass);
  }
  c.cdf.back() = 1.0;
  c.grid = std::move(grid);
  return c;
}

inline RatioCurve build_ratio_curve(const GaussianPair& p, int m,
                                    std::optional<GridSpec> grid_spec = std::nullopt,
                                    const RatioQuadOptions& opts = {}) {
  p.validate();
  const GridSpec g = grid_spec ? *grid_spec : default_grid(p);
  g.validate();
  auto z = g.points();
  std::vector<double> f(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) f[k] = ratio_pdf_raw(z[k], p, m, opts);
  return curve_from_density(std::move(z), std::move(f), CurveMethod::improved);
}

/// Independence baseline tabulated the same way (closed-form density).
inline RatioCurve build_independence_curve(const GaussianPair& p,
                                           std::optional<GridSpec> grid_spec = std::nullopt) {
  p.validate();
  const GridSpec g = grid_spec ? *grid_spec : default_grid(p);
  g.validate();
  auto z = g.points();
  std::vector<double> f(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) f[k] = independence_ratio_pdf(z[k], p);
  return curve_from_density(std::move(z), std::move(f), CurveMethod::independence);
}

inline double RatioCurve::cdf_at(double z) const {
  if (z <= grid.front()) return 0.0;
  if (z >= grid.back()) return 1.0;
  const auto it = std::upper_bound(grid.begin(), grid.end(), z);
  const std::size_t k = static_cast<std::size_t>(it - grid.begin());
  const double t = (z - grid[k - 1]) / (grid[k] - grid[k - 1]);
  return cdf[k - 1] + t * (cdf[k] - cdf[k - 1]);
}

/// P(T > gamma) under the curve.
inline double pfa(const RatioCurve& c, double gamma) {
  if (gamma <= c.grid.front()) return 1.0;
  if (gamma >= c.grid.back()) return 0.0;
  return 1.0 - c.cdf_at(gamma);
}

/// Smallest gamma with pfa(gamma) = target, by bisection over the CDF table
/// and inversion of the linear piece that brackets it.
inline double threshold(const RatioCurve& c, double target_pfa) {
  if (!(target_pfa > 0.0 && target_pfa < 1.0))
    throw unreachable_error("target false-alarm probability must lie in (0, 1), got " +
                            std::to_string(target_pfa));
  const double want = 1.0 - target_pfa;
  // Achievable open range is (1 - cdf[last interior], 1 - cdf[1]) widened to
  // the full table; anything strictly inside (0, 1) is reachable because the
  // table runs from cdf 0 to 1.
  std::size_t lo = 0, hi = c.cdf.size() - 1;
  if (!(c.cdf[lo] < want && c.cdf[hi] >= want)) {
    std::ostringstream msg;
    msg << "target pfa " << target_pfa << " outside achievable range ["
        << 1.0 - c.cdf[hi] << ", " << 1.0 - c.cdf[lo] << ")";
    throw unreachable_error(msg.str());
  }
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (c.cdf[mid] < want)
      lo = mid;
    else
      hi = mid;
  }
  const double span = c.cdf[hi] - c.cdf[lo];
  const double t = span > 0.0 ? (want - c.cdf[lo]) / span : 0.0;
  return c.grid[lo] + t * (c.grid[hi] - c.grid[lo]);
}

}  // namespace eigensense

#endif  // EIGENSENSE_ORDER_STATISTIC_RATIO_HPP
