#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>
#include <sstream>

#include "eigensense/exact_moments.hpp"
#include "eigensense/fast_moments.hpp"
#include "eigensense/monte_carlo.hpp"
#include "eigensense/tracy_widom.hpp"

using namespace eigensense;

namespace {

ComplexMatrix random_hermitian(int m, std::mt19937_64& gen) {
  std::normal_distribution<double> nd;
  ComplexMatrix a(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a(i, j) = {nd(gen), nd(gen)};
  ComplexMatrix h = (a + a.adjoint()) / 2.0;
  for (int i = 0; i < m; ++i) h(i, i) = h(i, i).real();
  return h;
}

}  // namespace

TEST(NoiseMatrix, VarianceAndMean) {
  const WishartSpec s{100, 10, 2.5, Field::complex};
  double power = 0.0;
  std::complex<double> sum = 0.0;
  std::size_t count = 0;
  for (std::uint64_t t = 0; t < 1000; ++t) {
    TrialStream rng(3, t);
    const auto x = sample_noise_matrix(s, rng);
    power += x.cwiseAbs2().sum();
    sum += x.sum();
    count += static_cast<std::size_t>(x.size());
  }
  EXPECT_NEAR(power / count, 2.5, 0.025);
  const double se = std::sqrt(2.5 / 2.0 / count);
  EXPECT_LT(std::abs(sum.real() / count), 3 * se);
  EXPECT_LT(std::abs(sum.imag() / count), 3 * se);
}

TEST(NoiseMatrix, RealFieldVariance) {
  const WishartSpec s{100, 10, 2.0, Field::real};
  double power = 0.0;
  std::size_t count = 0;
  for (std::uint64_t t = 0; t < 1000; ++t) {
    TrialStream rng(5, t);
    const auto x = sample_noise_matrix(s, rng);
    EXPECT_EQ(x.imag().cwiseAbs().maxCoeff(), 0.0);
    power += x.cwiseAbs2().sum();
    count += static_cast<std::size_t>(x.size());
  }
  EXPECT_NEAR(power / count, 2.0, 0.02);
}

TEST(NoiseMatrix, Deterministic) {
  TrialStream a(42, 17), b(42, 17);
  const WishartSpec s{20, 4};
  EXPECT_EQ(sample_noise_matrix(s, a), sample_noise_matrix(s, b));
}

TEST(SampleCovariance, Basics) {
  EXPECT_EQ(sample_covariance(ComplexMatrix::Zero(3, 7)), ComplexMatrix::Zero(3, 3));
  ComplexMatrix row(1, 4);
  row << std::complex<double>{1, 1}, 2.0, std::complex<double>{0, -3}, 0.5;
  EXPECT_NEAR(sample_covariance(row)(0, 0).real(), (2.0 + 4.0 + 9.0 + 0.25) / 4.0, 1e-15);

  TrialStream rng(9, 0);
  const auto r = sample_covariance(sample_noise_matrix({30, 6}, rng));
  EXPECT_EQ(r, r.adjoint().eval());
  const ComplexMatrix x = sample_noise_matrix({30, 6}, rng);
  EXPECT_LT((sample_covariance(x) - x * x.adjoint() / 30.0).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(SampleCovariance, TraceExpectation) {
  const WishartSpec s{20, 5, 1.5, Field::complex};
  double tr = 0.0;
  for (std::uint64_t t = 0; t < 10000; ++t) {
    TrialStream rng(21, t);
    tr += sample_covariance(sample_noise_matrix(s, rng)).trace().real();
  }
  EXPECT_NEAR(tr / 10000.0, 5 * 1.5, 0.01 * 5 * 1.5);
}

TEST(Eigenvalues, SmallExamples) {
  ComplexMatrix d(2, 2);
  d << 1.0, 0.0, 0.0, 3.0;
  EXPECT_EQ(hermitian_eigenvalues(d), (std::vector<double>{3.0, 1.0}));
  ComplexMatrix s(2, 2);
  s << 2.0, 1.0, 1.0, 2.0;
  const auto ev = hermitian_eigenvalues(s);
  EXPECT_NEAR(ev[0], 3.0, 1e-14);
  EXPECT_NEAR(ev[1], 1.0, 1e-14);
}

TEST(Eigenvalues, RejectsNonHermitian) {
  ComplexMatrix a(2, 2);
  a << 1.0, 2.0, 0.0, 1.0;
  EXPECT_THROW(hermitian_eigenvalues(a), std::invalid_argument);
  ComplexMatrix b(2, 2);
  b << std::complex<double>{1.0, 0.5}, 0.0, 0.0, 1.0;
  EXPECT_THROW(hermitian_eigenvalues(b), std::invalid_argument);
}

TEST(Eigenvalues, TraceDeterminantAndResidual) {
  std::mt19937_64 gen(99);
  const auto h = random_hermitian(6, gen);
  const auto ev = hermitian_eigenvalues(h);
  double sum = 0.0, prod = 1.0;
  for (double v : ev) {
    sum += v;
    prod *= v;
  }
  EXPECT_NEAR(sum, h.trace().real(), 1e-10 * h.norm());
  const double det = h.determinant().real();
  EXPECT_NEAR(prod, det, 1e-8 * std::abs(det));
  // Residual check via eigenvectors of the same decomposition.
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> full(h);
  for (int k = 0; k < 6; ++k) {
    const auto v = full.eigenvectors().col(k);
    EXPECT_LE((h * v - full.eigenvalues()(k) * v).norm(), 1e-9 * h.norm());
  }
  EXPECT_TRUE(std::is_sorted(ev.rbegin(), ev.rend()));
}

TEST(Simulate, SingleReceiverGivesOne) {
  const auto r = simulate_ratios({20, 1}, 200, 1, 1);
  for (double v : r.samples) EXPECT_EQ(v, 1.0);
}

TEST(Simulate, IndependentOfWorkerCount) {
  const WishartSpec s{50, 10};
  const auto a = simulate_ratios(s, 2000, 77, 1);
  const auto b = simulate_ratios(s, 2000, 77, 4);
  const auto c = simulate_ratios(s, 2000, 77, 8);
  EXPECT_EQ(a.samples, b.samples);
  EXPECT_EQ(a.samples, c.samples);
  EXPECT_NE(a.samples, simulate_ratios(s, 2000, 78, 1).samples);
  for (double v : a.samples) EXPECT_GE(v, 1.0);
}

// The asymptotic edge (1+sqrt(0.2))^2 ~ 2.094 overstates the N=50 mean by
// ~13%; the soft-edge corrected mean (mu + nu E[TW2]) / N is the right anchor.
TEST(Simulate, LargestMeanNearCorrectedEdge) {
  const WishartSpec s{50, 10};
  const auto r = simulate_ratios(s, 100000, 5);
  const auto m = estimate_extreme_moments(r.lambda_max, r.lambda_min);
  const auto [mu, nu] = centering_scaling(s);
  EXPECT_NEAR(m.largest.set.mean, (mu - 1.7711 * nu) / 50.0, 0.05 * m.largest.set.mean);
  EXPECT_LT(m.largest.set.mean, std::pow(1.0 + std::sqrt(0.2), 2));
}

TEST(Moments, ConstantInputHasZeroVariance) {
  std::vector<double> a(2000, 3.0), b(2000, 1.0);
  const auto m = estimate_extreme_moments(a, b);
  EXPECT_EQ(m.largest.set.variance, 0.0);
  EXPECT_EQ(m.smallest.set.mean, 1.0);
  EXPECT_THROW(estimate_extreme_moments(std::vector<double>(10, 1.0), std::vector<double>(10, 1.0)),
               std::invalid_argument);
}

TEST(Moments, N50M5LargestAgainstExact) {
  const WishartSpec s{50, 5};
  const auto r = simulate_ratios(s, 100000, 8);
  const auto m = estimate_extreme_moments(r.lambda_max, r.lambda_min);
  const double exact = extreme_moment_exact(Extreme::largest, 1, s).get_d();
  EXPECT_LT(std::abs(m.largest.set.mean - exact), 3 * m.largest.mean_se);
}

TEST(Moments, N50M20SmallestAgainstQuadrature) {
  const WishartSpec s{50, 20};
  const auto r = simulate_ratios(s, 100000, 9);
  const auto m = estimate_extreme_moments(r.lambda_max, r.lambda_min);
  const double fast = moment_fast(Extreme::smallest, 1, s);
  EXPECT_LT(std::abs(m.smallest.set.mean - fast), 3 * m.smallest.mean_se);
}

TEST(Ks, SelfDistanceAndDegenerate) {
  std::vector<double> x(5000);
  for (std::size_t k = 0; k < x.size(); ++k) {
    TrialStream s(1, k);
    x[k] = 2.0 + s.uniform();
  }
  const Ecdf e(x);
  // Curve through the ECDF's own steps.
  std::vector<double> grid{1.0}, dens{0.0};
  const auto& xs = e.sorted_samples();
  for (double v : xs) grid.push_back(v);
  grid.push_back(4.0);
  std::vector<double> cdf(grid.size());
  RatioCurve c;
  c.grid = grid;
  c.cdf.resize(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) c.cdf[k] = e(grid[k]);
  c.cdf.front() = 0.0;
  EXPECT_LE(ks_distance(e, c), 1.0 / x.size() + 1e-12);

  RatioCurve low;
  low.grid = {0.0, 1.0};
  low.cdf = {0.0, 1.0};
  EXPECT_EQ(ks_distance(e, low), 1.0);
}

TEST(Ecdf, StepFunction) {
  const Ecdf e({3.0, 1.0, 2.0, 2.0});
  EXPECT_EQ(e(0.5), 0.0);
  EXPECT_EQ(e(2.0), 0.75);
  EXPECT_EQ(e(1.99), 0.25);
  EXPECT_EQ(e(10.0), 1.0);
}

TEST(Histogram, IntegratesToOne) {
  const auto r = simulate_ratios({50, 5}, 20000, 3);
  const auto h = make_histogram(Ecdf(r.samples));
  double mass = 0.0;
  for (std::size_t k = 0; k < h.density.size(); ++k)
    mass += h.density[k] * (h.edges[k + 1] - h.edges[k]);
  EXPECT_NEAR(mass, 1.0, 1e-12);
  EXPECT_EQ(h.density_at(0.5), 0.0);
}

TEST(SamplesCsv, CarriesMetadata) {
  const auto r = simulate_ratios({20, 3}, 10, 123, 1);
  std::ostringstream os;
  write_samples_csv(os, r, "test");
  const std::string s = os.str();
  EXPECT_NE(s.find("# seed=123"), std::string::npos);
  EXPECT_NE(s.find(kGeneratorId), std::string::npos);
  EXPECT_NE(s.find("\nratio\n"), std::string::npos);
}
