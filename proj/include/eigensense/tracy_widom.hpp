#ifndef EIGENSENSE_TRACY_WIDOM_HPP
#define EIGENSENSE_TRACY_WIDOM_HPP

#include <algorithm>
#include <cmath>
#include <fstream>
#include <locale>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "eigensense/detail/tw2_table_data.hpp"
#include "eigensense/order_statistic_ratio.hpp"
#include "eigensense/wishart_spec.hpp"

namespace eigensense {

/// Tabulated CDF of the order-2 Tracy-Widom law.
struct Tw2Table {
  std::vector<double> s_grid;
  std::vector<double> cdf;
  std::string provenance;

  void validate() const {
    if (s_grid.size() < 4 || s_grid.size() != cdf.size())
      throw std::invalid_argument("Tw2Table: need >= 4 matching (s, cdf) rows");
    for (std::size_t k = 1; k < s_grid.size(); ++k) {
      if (!(s_grid[k] > s_grid[k - 1]))
        throw std::invalid_argument("Tw2Table: s grid not increasing");
      if (cdf[k] < cdf[k - 1]) throw std::invalid_argument("Tw2Table: cdf decreasing");
    }
    if (!(cdf.front() < 1e-6) || !(cdf.back() > 1.0 - 1e-6))
      throw std::invalid_argument("Tw2Table: table does not span the distribution");
  }
};

/// The table compiled into the library (same numbers as data/tw2_cdf.tsv).
inline const Tw2Table& embedded_tw2_table() {
  static const Tw2Table table = [] {
    Tw2Table t;
    t.provenance = detail::kTw2Provenance;
    for (const auto& [s, f] : detail::kTw2Table) {
      t.s_grid.push_back(s);
      t.cdf.push_back(f);
    }
    t.validate();
    return t;
  }();
  return table;
}

/// Reads a two-column "s cdf" text table; '#' lines are comments and the
/// first comment line becomes the provenance note.
inline Tw2Table load_tw2_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open TW2 table '" + path + "'");
  Tw2Table t;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (t.provenance.empty()) t.provenance = line.substr(line.find_first_not_of("# "));
      continue;
    }
    std::istringstream row(line);
    row.imbue(std::locale::classic());
    double s = 0.0, f = 0.0;
    if (!(row >> s >> f)) throw std::runtime_error("bad TW2 table row: '" + line + "'");
    t.s_grid.push_back(s);
    t.cdf.push_back(f);
  }
  t.validate();
  return t;
}

namespace detail {

// Fritsch-Carlson slope at node k; it only needs the two adjacent secants,
// so evaluation stays O(log n) without precomputed state. A monotone table
// gives a monotone interpolant.
inline double pchip_slope(const Tw2Table& t, std::size_t k) {
  const std::size_t n = t.s_grid.size();
  auto secant = [&](std::size_t j) {
    return (t.cdf[j + 1] - t.cdf[j]) / (t.s_grid[j + 1] - t.s_grid[j]);
  };
  auto width = [&](std::size_t j) { return t.s_grid[j + 1] - t.s_grid[j]; };
  if (k == 0 || k == n - 1) {
    const std::size_t j0 = k == 0 ? 0 : n - 2;
    const std::size_t j1 = k == 0 ? 1 : n - 3;
    const double h0 = width(j0), h1 = width(j1), d0 = secant(j0), d1 = secant(j1);
    double v = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (v * d0 <= 0.0) return 0.0;
    if (d0 * d1 <= 0.0 && std::abs(v) > 3.0 * std::abs(d0)) v = 3.0 * d0;
    return v;
  }
  const double dl = secant(k - 1), dr = secant(k);
  if (dl * dr <= 0.0) return 0.0;
  const double w1 = 2.0 * width(k) + width(k - 1);
  const double w2 = width(k) + 2.0 * width(k - 1);
  return (w1 + w2) / (w1 / dl + w2 / dr);
}

struct HermiteEval {
  double value;
  double derivative;
};

inline HermiteEval tw2_eval(double s, const Tw2Table& t) {
  if (s <= t.s_grid.front()) return {0.0, 0.0};
  if (s >= t.s_grid.back()) return {1.0, 0.0};
  const auto it = std::upper_bound(t.s_grid.begin(), t.s_grid.end(), s);
  const std::size_t k = static_cast<std::size_t>(it - t.s_grid.begin()) - 1;
  const double h = t.s_grid[k + 1] - t.s_grid[k];
  const double u = (s - t.s_grid[k]) / h;
  const double y0 = t.cdf[k], y1 = t.cdf[k + 1];
  const double d0 = pchip_slope(t, k), d1 = pchip_slope(t, k + 1);
  const double h00 = (1 + 2 * u) * (1 - u) * (1 - u), h10 = u * (1 - u) * (1 - u);
  const double h01 = u * u * (3 - 2 * u), h11 = u * u * (u - 1);
  const double v = h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1;
  const double dv = (6 * u * u - 6 * u) / h * (y0 - y1) + (3 * u * u - 4 * u + 1) * d0 +
                    (3 * u * u - 2 * u) * d1;
  return {std::clamp(v, 0.0, 1.0), std::max(0.0, dv)};
}

}  // namespace detail

/// Monotone cubic interpolation of the table; 0 below and 1 above the grid.
inline double tw2_cdf(double s, const Tw2Table& t = embedded_tw2_table()) {
  return detail::tw2_eval(s, t).value;
}

inline double tw2_pdf(double s, const Tw2Table& t = embedded_tw2_table()) {
  return detail::tw2_eval(s, t).derivative;
}

struct TwScaling {
  double mu;
  double nu;
};

/// Centering and scaling for N * lambda_1 (unit noise): N lambda_1 ~ mu + nu S.
inline TwScaling centering_scaling(const WishartSpec& spec) {
  if (spec.n_receivers < 2 || spec.n_samples < spec.n_receivers)
    throw std::invalid_argument("centering_scaling: need N >= M >= 2");
  const double rn = std::sqrt(static_cast<double>(spec.n_samples));
  const double rm = std::sqrt(static_cast<double>(spec.n_receivers));
  return {(rn + rm) * (rn + rm), (rn + rm) * std::cbrt(1.0 / rn + 1.0 / rm)};
}

/// Grid spanning the table's s range mapped onto the ratio axis.
inline GridSpec default_tw_grid(const WishartSpec& spec, int n_points = 1601) {
  const auto [mu, nu] = centering_scaling(spec);
  const double rn = std::sqrt(static_cast<double>(spec.n_samples));
  const double rm = std::sqrt(static_cast<double>(spec.n_receivers));
  const double edge = (rn - rm) * (rn - rm);
  if (!(edge > 0.0))
    throw numerical_error("Tracy-Widom ratio undefined for N = M (hard edge at 0)");
  const auto& t = embedded_tw2_table();
  GridSpec g;
  g.z_min = std::max(1.0, (mu + nu * t.s_grid.front()) / edge);
  g.z_max = (mu + nu * t.s_grid.back()) / edge;
  g.n_points = n_points;
  return g;
}

/// Ratio curve with lambda_1 from the TW2 law and lambda_M pinned at the
/// hard edge (sqrt N - sqrt M)^2 / N. The noise variance cancels.
inline RatioCurve tw_ratio_curve(const WishartSpec& spec,
                                 const Tw2Table& table = embedded_tw2_table(),
                                 std::optional<GridSpec> grid_spec = std::nullopt) {
  spec.validate();
  table.validate();
  const auto [mu, nu] = centering_scaling(spec);
  const double rn = std::sqrt(static_cast<double>(spec.n_samples));
  const double rm = std::sqrt(static_cast<double>(spec.n_receivers));
  const double edge = (rn - rm) * (rn - rm);
  if (!(edge > 0.0))
    throw numerical_error("Tracy-Widom ratio undefined for N = M (hard edge at 0)");
  const GridSpec g = grid_spec ? *grid_spec : default_tw_grid(spec);
  g.validate();
  auto z = g.points();
  std::vector<double> f(z.size());
  // T = (mu + nu S) / edge, so f_T(z) = f_S((z edge - mu) / nu) edge / nu.
  for (std::size_t k = 0; k < z.size(); ++k)
    f[k] = z[k] < 1.0 ? 0.0 : tw2_pdf((z[k] * edge - mu) / nu, table) * edge / nu;
  return curve_from_density(std::move(z), std::move(f), CurveMethod::tracy_widom);
}

}  // namespace eigensense

#endif  // EIGENSENSE_TRACY_WIDOM_HPP
