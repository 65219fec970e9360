#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "eigensense/monte_carlo.hpp"
#include "eigensense/order_statistic_ratio.hpp"

using namespace eigensense;

namespace {

// Fast-engine pairs at N=50 (unit noise), frozen.
const GaussianPair kPair5{1.463670238, 0.130266495, 0.6016449319, 0.07134442038};
const GaussianPair kPair10{1.823175973, 0.1328548845, 0.3945810594, 0.04745226788};
const GaussianPair kPair20{2.380520028, 0.1404412287, 0.1817335771, 0.02508797787};

double trapezoid(const std::vector<double>& x, const std::vector<double>& f) {
  double s = 0.0;
  for (std::size_t k = 1; k < x.size(); ++k) s += 0.5 * (f[k] + f[k - 1]) * (x[k] - x[k - 1]);
  return s;
}

}  // namespace

TEST(JointPdf, TwoReceiversIsProductOfMarginals) {
  const double x = 1.9, y = 0.41;
  EXPECT_DOUBLE_EQ(joint_pdf_extremes(x, y, kPair10, 2),
                   2.0 * normal_pdf(x, kPair10.mean_max, kPair10.sd_max) *
                       normal_pdf(y, kPair10.mean_min, kPair10.sd_min));
}

TEST(JointPdf, ClampedWhenBracketNegative) {
  // F1(x) tiny, FM(y) near 1.
  EXPECT_EQ(joint_pdf_extremes(1.3, 0.55, kPair10, 10), 0.0);
}

// Both CDFs equal 1/2 at the means, so the bracket vanishes there exactly;
// one sd below the smallest mean it is positive.
TEST(JointPdf, AtMeansBracketVanishes) {
  EXPECT_EQ(joint_pdf_extremes(kPair10.mean_max, kPair10.mean_min, kPair10, 10), 0.0);
}

TEST(JointPdf, MatchesBinomialSum) {
  const double x = kPair10.mean_max, y = kPair10.mean_min - kPair10.sd_min;
  const double v = joint_pdf_extremes(x, y, kPair10, 10);
  EXPECT_GT(v, 0.0);
  EXPECT_TRUE(std::isfinite(v));
  const double a = normal_cdf(x, kPair10.mean_max, kPair10.sd_max);
  const double b = normal_cdf(y, kPair10.mean_min, kPair10.sd_min);
  double sum = 0.0, binom = 1.0;
  for (int i = 0; i <= 8; ++i) {
    sum += binom * std::pow(a, i) * std::pow(-b, 8 - i);
    binom = binom * (8 - i) / (i + 1);
  }
  const double expanded = 90.0 * normal_pdf(x, kPair10.mean_max, kPair10.sd_max) *
                          normal_pdf(y, kPair10.mean_min, kPair10.sd_min) * sum;
  EXPECT_NEAR(v, expanded, 1e-12 * v);
}

TEST(RatioPdf, NoMassBelowOne) {
  EXPECT_LT(ratio_pdf_raw(0.0, kPair10, 10), 1e-12);
  EXPECT_LT(ratio_pdf_raw(0.9, kPair10, 10), 1e-12);
}

TEST(RatioPdf, ExpandedMatchesRaw) {
  for (const auto& [p, m] : {std::pair{kPair5, 5}, std::pair{kPair10, 10},
                             std::pair{kPair20, 20}}) {
    const auto z = default_grid(p, 100).points();
    for (double v : z)
      EXPECT_NEAR(ratio_pdf_expanded(v, p, m), ratio_pdf_raw(v, p, m), 1e-9)
          << "M=" << m << " z=" << v;
  }
}

TEST(RatioPdf, TwoReceiversCollapse) {
  const GaussianPair p{1.5, 0.2, 0.5, 0.1};
  for (double z : {2.0, 3.0, 4.5})
    EXPECT_NEAR(ratio_pdf_expanded(z, p, 2), 2.0 * independence_ratio_pdf(z, p), 1e-9);
}

TEST(RatioPdf, FromOneVariantLosesMass) {
  const auto g = default_grid(kPair10, 801);
  const auto z = g.points();
  std::vector<double> lit(z.size()), raw(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) {
    lit[k] = ratio_pdf_expanded(z[k], kPair10, 10, ExpansionVariant::from_one);
    raw[k] = ratio_pdf_raw(z[k], kPair10, 10);
  }
  EXPECT_GT(std::abs(trapezoid(z, lit) - trapezoid(z, raw)), 1e-3);
}

TEST(RatioCurve, N50M10Hygiene) {
  const auto c = build_ratio_curve(kPair10, 10);
  EXPECT_GE(c.raw_mass, 0.9);
  EXPECT_LE(c.raw_mass, 1.1);
  EXPECT_NEAR(trapezoid(c.grid, c.pdf), 1.0, 1e-6);
  EXPECT_NEAR(c.cdf.back(), 1.0, 1e-6);
  EXPECT_EQ(c.method, CurveMethod::improved);
  double cum = 0.0;
  int modes = 0;
  for (std::size_t k = 0; k < c.grid.size(); ++k) {
    EXPECT_GE(c.pdf[k], 0.0);
    if (k > 0) {
      cum += 0.5 * (c.pdf[k] + c.pdf[k - 1]) * (c.grid[k] - c.grid[k - 1]);
      EXPECT_NEAR(c.cdf[k], cum, 1e-6);
      EXPECT_GE(c.cdf[k], c.cdf[k - 1]);
    }
    if (k > 0 && k + 1 < c.grid.size() && c.pdf[k] > c.pdf[k - 1] && c.pdf[k] >= c.pdf[k + 1])
      ++modes;
  }
  EXPECT_EQ(modes, 1);
  EXPECT_GE(c.grid.front(), 1.0);
}

TEST(RatioCurve, ScaleInvariant) {
  const auto a = build_ratio_curve(kPair10, 10, GridSpec{2.0, 20.0, 200});
  const auto b = build_ratio_curve(kPair10.scaled(4.0), 10, GridSpec{2.0, 20.0, 200});
  for (std::size_t k = 0; k < a.pdf.size(); ++k) EXPECT_NEAR(a.pdf[k], b.pdf[k], 1e-9);
}

TEST(RatioCurve, RejectsHopelessGrid) {
  EXPECT_THROW(build_ratio_curve(kPair10, 10, GridSpec{40.0, 80.0, 64}), numerical_error);
  EXPECT_THROW(build_ratio_curve(kPair10, 10, GridSpec{2.0, 1.0, 64}), std::invalid_argument);
  EXPECT_THROW(build_ratio_curve(kPair10, 10, GridSpec{1.0, 2.0, 10}), std::invalid_argument);
}

TEST(Pfa, Endpoints) {
  const auto c = build_ratio_curve(kPair10, 10);
  EXPECT_NEAR(pfa(c, c.z_min()), 1.0, 1e-6);
  EXPECT_NEAR(pfa(c, c.z_max()), 0.0, 1e-6);
  EXPECT_EQ(pfa(c, 0.0), 1.0);
  EXPECT_EQ(pfa(c, 1e9), 0.0);
  const double med = threshold(c, 0.5);
  EXPECT_NEAR(pfa(c, med), 0.5, 1e-3);
  double prev = 1.0;
  for (double g = c.z_min(); g <= c.z_max(); g += 0.05) {
    EXPECT_LE(pfa(c, g), prev);
    prev = pfa(c, g);
  }
}

TEST(Threshold, RoundTrip) {
  const auto c = build_ratio_curve(kPair10, 10);
  for (double p : {0.01, 0.05, 0.1, 0.5, 0.9}) EXPECT_NEAR(pfa(c, threshold(c, p)), p, 1e-6);
}

TEST(Threshold, Unreachable) {
  const auto c = build_ratio_curve(kPair10, 10);
  EXPECT_THROW(threshold(c, 1.5), unreachable_error);
  EXPECT_THROW(threshold(c, 0.0), unreachable_error);
}

TEST(GridSpec, Parse) {
  const auto g = parse_grid_spec("1.5:30:256");
  EXPECT_EQ(g.z_min, 1.5);
  EXPECT_EQ(g.z_max, 30.0);
  EXPECT_EQ(g.n_points, 256);
  EXPECT_THROW(parse_grid_spec("1:2"), std::invalid_argument);
  EXPECT_THROW(parse_grid_spec("1:2:100:4"), std::invalid_argument);
}

// Density at the ratio of means against a 10^6-trial histogram bin.
TEST(RatioPdf, PeakAgainstSimulation) {
  const WishartSpec s{50, 10, 1.0, Field::complex};
  const auto mc = simulate_ratios(s, 1'000'000, 2024);
  const Ecdf e(mc.samples);
  const auto h = make_histogram(e);
  const double z = kPair10.mean_max / kPair10.mean_min;
  const double model = ratio_pdf_raw(z, kPair10, 10);
  const double empirical = h.density_at(z);
  EXPECT_NEAR(model, empirical, 0.2 * empirical)
      << "model " << model << " vs histogram " << empirical;
}
