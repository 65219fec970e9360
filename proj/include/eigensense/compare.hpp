#ifndef EIGENSENSE_COMPARE_HPP
#define EIGENSENSE_COMPARE_HPP

// Scores the three model curves against one simulated sample set on a shared
// grid. Used by the command-line `compare` and by the acceptance suite.

#include <algorithm>
#include <cmath>
#include <optional>

#include "eigensense/fast_moments.hpp"
#include "eigensense/monte_carlo.hpp"
#include "eigensense/order_statistic_ratio.hpp"
#include "eigensense/tracy_widom.hpp"

namespace eigensense {

struct Comparison {
  GaussianPair pair;
  std::string pair_source;  // "quadrature" or "monte_carlo"
  RatioCurve improved;
  RatioCurve independence;
  RatioCurve tracy_widom;
  Histogram histogram;
  double ks_improved = 0.0;
  double ks_independence = 0.0;
  double ks_tw = 0.0;
};

/// Gaussian pair for a spec: quadrature moments for the complex field, sample
/// moments of the simulated extremes for the real field (no closed form).
inline GaussianPair pair_for(const WishartSpec& spec, const RatioSampleSet* samples,
                             std::string* source = nullptr) {
  if (spec.field == Field::complex) {
    if (source) *source = "quadrature";
    return gaussian_pair_fast(spec);
  }
  if (!samples) throw std::invalid_argument("real-field pair needs simulated extremes");
  const auto m = estimate_extreme_moments(samples->lambda_max, samples->lambda_min);
  if (source) *source = "monte_carlo";
  return {m.largest.set.mean, std::sqrt(m.largest.set.variance), m.smallest.set.mean,
          std::sqrt(m.smallest.set.variance)};
}

/// Grid wide enough for every curve's default range and every sample.
inline GridSpec compare_grid(const WishartSpec& spec, const GaussianPair& pair,
                             const Ecdf& ecdf, int n_points = 2001) {
  const auto a = default_grid(pair);
  const auto t = default_tw_grid(spec);
  GridSpec g;
  g.z_min = std::max(1.0, std::min({a.z_min, t.z_min, ecdf.sorted_samples().front()}));
  g.z_max = std::max({a.z_max, t.z_max, ecdf.sorted_samples().back()});
  g.n_points = n_points;
  return g;
}

inline Comparison compare_models(const RatioSampleSet& samples,
                                 std::optional<GridSpec> grid = std::nullopt) {
  const WishartSpec& spec = samples.spec;
  if (spec.n_receivers < 2) throw std::invalid_argument("compare needs M >= 2");
  Comparison out;
  out.pair = pair_for(spec, &samples, &out.pair_source);
  const Ecdf ecdf(samples.samples);
  const GridSpec g = grid ? *grid : compare_grid(spec, out.pair, ecdf);
  out.improved = build_ratio_curve(out.pair, spec.n_receivers, g);
  out.independence = build_independence_curve(out.pair, g);
  out.tracy_widom = tw_ratio_curve(spec, embedded_tw2_table(), g);
  out.histogram = make_histogram(ecdf);
  out.ks_improved = ks_distance(ecdf, out.improved);
  out.ks_independence = ks_distance(ecdf, out.independence);
  out.ks_tw = ks_distance(ecdf, out.tracy_widom);
  return out;
}

}  // namespace eigensense

#endif  // EIGENSENSE_COMPARE_HPP
