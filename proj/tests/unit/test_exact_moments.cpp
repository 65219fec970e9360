#include <gtest/gtest.h>

#include <vector>

#include "eigensense/exact_moments.hpp"

using namespace eigensense;

namespace {

WishartSpec spec(int n, int m) { return {n, m, 1.0, Field::complex}; }

// Literal nested loops over two indices; the convolution must match exactly.
ExactRational nested_loops(int cap1, int cap2, int q, long base) {
  ExactRational total = 0;
  for (int l1 = 0; l1 < cap1; ++l1)
    for (int l2 = 0; l2 < cap2; ++l2) {
      const int s = l1 + l2 + q - 1;
      BigInt base_pow;
      mpz_ui_pow_ui(base_pow.get_mpz_t(), static_cast<unsigned long>(base),
                    static_cast<unsigned long>(s));
      ExactRational term(factorial(s - 1), factorial(l1) * factorial(l2) * base_pow);
      term.canonicalize();
      total += term;
    }
  return total;
}

}  // namespace

TEST(LTable, CaseSplit) {
  EXPECT_EQ(build_l_table(1, 1, spec(10, 2)).at(1, 1), 11);
  EXPECT_EQ(build_l_table(2, 2, spec(10, 2)).at(1, 1), 9);
  EXPECT_EQ(build_l_table(1, 2, spec(10, 2)).at(1, 1), 10);
}

TEST(LTable, EntriesFollowRule) {
  const auto s = spec(20, 5);
  for (int i = 1; i <= 5; ++i)
    for (int j = 1; j <= 5; ++j) {
      const auto t = build_l_table(i, j, s);
      for (int a = 1; a <= 4; ++a)
        for (int m = 1; m <= 4; ++m) {
          const int base = 20 - 5 + m + a;
          const int want = (a < i && m < j) ? base - 1 : (a >= i && m >= j) ? base + 1 : base;
          EXPECT_EQ(t.at(a, m), want);
          EXPECT_GE(t.at(a, m), 1);
        }
    }
}

TEST(LTable, RejectsSingleReceiver) {
  EXPECT_THROW(build_l_table(1, 1, spec(5, 1)), std::invalid_argument);
  EXPECT_THROW(build_l_table(3, 1, spec(5, 2)), std::out_of_range);
}

TEST(C0, SmallCases) {
  EXPECT_EQ(c0(spec(3, 2)), 2);
  EXPECT_EQ(c0(spec(1, 1)), 1);
}

TEST(C0, LargeCaseMatchesIndependentProduct) {
  BigInt want = 1;
  for (int i = 1; i <= 5; ++i) {
    BigInt f;
    mpz_fac_ui(f.get_mpz_t(), 50 - i);
    want *= f;
    mpz_fac_ui(f.get_mpz_t(), 5 - i);
    want *= f;
  }
  const BigInt got = c0(spec(50, 5));
  EXPECT_EQ(got, want);
  EXPECT_GT(got.get_str().size(), 100u);
}

TEST(NestedSum, ConvolutionEqualsLoops) {
  for (int c1 = 1; c1 <= 5; ++c1)
    for (int c2 = 1; c2 <= 5; ++c2)
      for (int q : {2, 5, 9})
        for (long base : {1L, 2L, 3L}) {
          const std::vector<int> caps{c1, c2};
          EXPECT_EQ(nested_l_sum(caps, q, base), nested_loops(c1, c2, q, base))
              << c1 << "," << c2 << " q=" << q << " base=" << base;
        }
}

TEST(ExactMoments, TraceIdentityM2) {
  for (int n : {2, 10, 50}) {
    const auto s = spec(n, 2);
    const ExactRational sum = extreme_moment_exact(Extreme::largest, 1, s) +
                              extreme_moment_exact(Extreme::smallest, 1, s);
    EXPECT_EQ(sum, ExactRational(2)) << "N=" << n;
  }
}

TEST(ExactMoments, KnownRationalsN10M2) {
  const auto s = spec(10, 2);
  EXPECT_EQ(extreme_moment_exact(Extreme::largest, 1, s), ExactRational(177261, 131072));
  EXPECT_EQ(extreme_moment_exact(Extreme::smallest, 1, s), ExactRational(84883, 131072));
}

TEST(ExactMoments, ReceiverWeightingBreaksTrace) {
  // Frozen negative result for the other reading of the subset sum.
  ExactOptions alt;
  alt.weighting = SubsetWeighting::receivers;
  const auto s = spec(2, 2);
  const ExactRational sum = extreme_moment_exact(Extreme::largest, 1, s, alt) +
                            extreme_moment_exact(Extreme::smallest, 1, s);
  EXPECT_NE(sum, ExactRational(2));
}

TEST(ExactMoments, VariancePositiveAndOrdered) {
  for (auto [n, m] : {std::pair{10, 2}, std::pair{10, 3}, std::pair{20, 4}}) {
    const auto hi = extreme_moments_exact(Extreme::largest, spec(n, m));
    const auto lo = extreme_moments_exact(Extreme::smallest, spec(n, m));
    EXPECT_GT(sgn(hi.variance), 0);
    EXPECT_GT(sgn(lo.variance), 0);
    EXPECT_GT(hi.moments.at(1), lo.moments.at(1));
    EXPECT_GT(hi.moments.at(2), lo.moments.at(2));
  }
}

TEST(ExactMoments, TraceBoundM3) {
  for (int n : {3, 10}) {
    const auto s = spec(n, 3);
    const ExactRational sum = extreme_moment_exact(Extreme::largest, 1, s) +
                              extreme_moment_exact(Extreme::smallest, 1, s);
    EXPECT_LT(sum, ExactRational(3));
    EXPECT_GT(sum, ExactRational(2));
  }
}

TEST(ExactMoments, Repeatable) {
  const auto s = spec(20, 4);
  EXPECT_EQ(extreme_moment_exact(Extreme::largest, 2, s),
            extreme_moment_exact(Extreme::largest, 2, s));
}

TEST(ExactMoments, RejectsBadArguments) {
  EXPECT_THROW(extreme_moment_exact(Extreme::largest, 3, spec(10, 2)), std::invalid_argument);
  EXPECT_THROW(extreme_moment_exact(Extreme::largest, 1, spec(10, 7)), std::invalid_argument);
  EXPECT_THROW(extreme_moment_exact(Extreme::smallest, 1, spec(10, 1)), std::invalid_argument);
  WishartSpec real = spec(10, 2);
  real.field = Field::real;
  EXPECT_THROW(extreme_moments_exact(Extreme::largest, real), std::invalid_argument);
}

TEST(GaussianPairExact, N50M5) {
  const auto p = gaussian_pair_exact(spec(50, 5));
  EXPECT_GT(p.mean_max, p.mean_min);
  EXPECT_GT(p.mean_min, 0.0);
  EXPECT_NEAR(p.mean_max, 1.46367024, 1e-8);
  EXPECT_NEAR(p.mean_min, 0.60164493, 1e-8);

  WishartSpec s4 = spec(50, 5);
  s4.noise_variance = 4.0;
  const auto q = gaussian_pair_exact(s4);
  EXPECT_EQ(q.mean_max, 4.0 * p.mean_max);
  EXPECT_EQ(q.mean_min, 4.0 * p.mean_min);
  EXPECT_DOUBLE_EQ(q.sd_max * q.sd_max, 16.0 * p.sd_max * p.sd_max);
}
