#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "eigensense/gaussian_model.hpp"
#include "eigensense/monte_carlo.hpp"
#include "eigensense/order_statistic_ratio.hpp"

using namespace eigensense;

namespace {
// Fast-engine pair at N=50, M=10 (unit noise), frozen.
const GaussianPair kPair10{1.823175973, 0.1328548845, 0.3945810594, 0.04745226788};
}  // namespace

TEST(Normal, Pdf) {
  EXPECT_NEAR(normal_pdf(0, 0, 1), 0.3989422804, 1e-10);
  EXPECT_NEAR(normal_pdf(2.5, 2.5, 0.3), 1.0 / (0.3 * std::sqrt(2 * std::numbers::pi)), 1e-14);
  EXPECT_DOUBLE_EQ(normal_pdf(1.7, 1.0, 2.0), normal_pdf(0.3, 1.0, 2.0));
}

TEST(Normal, Cdf) {
  EXPECT_EQ(normal_cdf(0.0), 0.5);
  EXPECT_NEAR(normal_cdf(40.0), 1.0, 1e-15);
  EXPECT_NEAR(normal_cdf(1.0), 0.8413447461, 1e-10);
  EXPECT_NEAR(normal_cdf(-10.0), 7.619853024160527e-24, 1e-36);
}

TEST(IndependenceRatio, StandardCauchy) {
  const GaussianPair p{0, 1, 0, 1};
  for (double z : {-5.0, -0.3, 0.0, 1.0, 12.0})
    EXPECT_NEAR(independence_ratio_pdf(z, p), 1.0 / (std::numbers::pi * (1 + z * z)), 1e-14);
}

TEST(IndependenceRatio, ClosedFormMatchesQuadrature) {
  for (const GaussianPair& p : {kPair10, GaussianPair{1.0, 0.5, 0.4, 0.3},
                                GaussianPair{2.0, 1.0, -0.5, 1.5}})
    for (double z = -10.0; z <= 30.0; z += 0.37)
      EXPECT_NEAR(independence_ratio_pdf(z, p), independence_ratio_pdf_quadrature(z, p), 1e-9)
          << z;
}

TEST(IndependenceRatio, Normalizes) {
  // Tails decay like 1/z^2, so 1 - 1e-6 of the mass needs |z| up to ~1e8.
  const GaussianPair p{1.0, 0.5, 0.4, 0.3};
  std::vector<double> bp{0, 1, 2, 3, 5};
  for (double d = 10; d <= 1e9; d *= 10) {
    bp.push_back(d);
    bp.push_back(-d);
  }
  bp.push_back(-1);
  std::sort(bp.begin(), bp.end());
  QuadOptions o;
  o.abs_tol = 1e-9;
  const auto r = integrate_adaptive([&](double z) { return independence_ratio_pdf(z, p); },
                                    std::span<const double>(bp), o);
  EXPECT_NEAR(r.value, 1.0, 1e-5);
  for (double z = -20; z < 60; z += 0.5) EXPECT_GE(independence_ratio_pdf(z, p), 0.0);
}

TEST(IndependenceRatio, MatchesDirectSimulation) {
  const std::size_t n = 1'000'000;
  std::vector<double> r(n);
  for (std::size_t t = 0; t < n; ++t) {
    TrialStream s(11, t);
    const double x = kPair10.mean_max + kPair10.sd_max * s.normal();
    const double y = kPair10.mean_min + kPair10.sd_min * s.normal();
    r[t] = x / y;
  }
  const auto curve = build_independence_curve(kPair10, GridSpec{0.5, 60.0, 6001});
  EXPECT_LE(ks_distance(Ecdf(r), curve), 0.01);
}

TEST(GaussianPair, Validation) {
  EXPECT_THROW((GaussianPair{1, 0, 0, 1}.validate()), std::invalid_argument);
  EXPECT_THROW((GaussianPair{0, 1, 1, 1}.validate()), std::invalid_argument);
  EXPECT_NO_THROW(kPair10.validate());
}
