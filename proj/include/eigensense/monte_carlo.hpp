#ifndef EIGENSENSE_MONTE_CARLO_HPP
#define EIGENSENSE_MONTE_CARLO_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <locale>
#include <numbers>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "eigensense/order_statistic_ratio.hpp"
#include "eigensense/wishart_spec.hpp"

namespace eigensense {

using ComplexMatrix = Eigen::MatrixXcd;

/// Identifier written next to every sample set so a reader knows how to
/// regenerate it.
inline constexpr const char* kGeneratorId =
    "mt19937_64;seed_seq(seed_lo,seed_hi,trial_lo,trial_hi);box-muller";

/// Per-trial normal stream. Trial t of seed s always sees the same numbers,
/// whatever thread runs it.
class TrialStream {
 public:
  TrialStream(std::uint64_t seed, std::uint64_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial),
                      static_cast<std::uint32_t>(trial >> 32)};
    engine_.seed(seq);
  }

  /// Uniform on (0, 1): 53 random bits offset by half an ulp, never 0.
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal, Box-Muller with the second variate cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double theta = 2.0 * std::numbers::pi * uniform();
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// M x N noise matrix. Complex entries are circular with E|x|^2 = sigma^2
/// (each part sigma^2 / 2); real entries have variance sigma^2.
inline ComplexMatrix sample_noise_matrix(const WishartSpec& spec, TrialStream& rng) {
  const int m = spec.n_receivers, n = spec.n_samples;
  ComplexMatrix x(m, n);
  if (spec.field == Field::complex) {
    const double s = std::sqrt(spec.noise_variance / 2.0);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < n; ++c) {
        const double re = rng.normal();
        x(r, c) = {s * re, s * rng.normal()};
      }
  } else {
    const double s = std::sqrt(spec.noise_variance);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < n; ++c) x(r, c) = {s * rng.normal(), 0.0};
  }
  return x;
}

/// (1/N) X X^H, upper triangle computed and mirrored so R is exactly Hermitian.
inline ComplexMatrix sample_covariance(const ComplexMatrix& x) {
  const auto m = x.rows(), n = x.cols();
  if (n < 1) throw std::invalid_argument("sample_covariance: need N >= 1");
  ComplexMatrix r(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    r(i, i) = x.row(i).squaredNorm() / static_cast<double>(n);
    for (Eigen::Index j = i + 1; j < m; ++j) {
      r(i, j) = x.row(i).dot(x.row(j)) / static_cast<double>(n);
      // Eigen's dot conjugates the first argument: conj(x_i) . x_j.
      r(i, j) = std::conj(r(i, j));
      r(j, i) = std::conj(r(i, j));
    }
  }
  return r;
}

/// All eigenvalues of a Hermitian matrix, descending. Input further than
/// 1e-12 (relative to its largest entry) from Hermitian is rejected.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& r) {
  if (r.rows() != r.cols()) throw std::invalid_argument("hermitian_eigenvalues: not square");
  const double scale = std::max(1.0, r.cwiseAbs().maxCoeff());
  const double asym = (r - r.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale)
    throw std::invalid_argument("hermitian_eigenvalues: matrix is not Hermitian (defect " +
                                std::to_string(asym) + ")");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(r, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw numerical_error("hermitian_eigenvalues: solver did not converge");
  const auto& ev = solver.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

/// Worker count: EIGENSENSE_THREADS when set and positive, else the hardware.
inline unsigned default_workers() {
  if (const char* env = std::getenv("EIGENSENSE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace detail {

// Runs body(t) for t in [0, count) over `workers` threads, interleaved. Each
// trial writes only its own slot, so the result is partition-independent.
template <class Body>
void parallel_trials(std::uint64_t count, unsigned workers, Body body) {
  workers = static_cast<unsigned>(std::clamp<std::uint64_t>(workers, 1, std::max<std::uint64_t>(1, count)));
  if (workers == 1) {
    for (std::uint64_t t = 0; t < count; ++t) body(t);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::uint64_t t = w; t < count; t += workers) body(t);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace detail

struct RatioSampleSet {
  WishartSpec spec;
  std::uint64_t seed = 0;
  std::uint64_t trial_count = 0;
  std::string generator = kGeneratorId;
  std::vector<double> samples;     // lambda_1 / lambda_M, in trial order
  std::vector<double> lambda_max;  // lambda_1 per trial
  std::vector<double> lambda_min;  // lambda_M per trial
};

inline RatioSampleSet simulate_ratios(const WishartSpec& spec, std::uint64_t trials,
                                      std::uint64_t seed, unsigned workers = default_workers()) {
  spec.validate();
  if (trials < 1) throw std::invalid_argument("simulate_ratios: need at least one trial");
  RatioSampleSet out;
  out.spec = spec;
  out.seed = seed;
  out.trial_count = trials;
  out.samples.resize(trials);
  out.lambda_max.resize(trials);
  out.lambda_min.resize(trials);
  detail::parallel_trials(trials, workers, [&](std::uint64_t t) {
    TrialStream rng(seed, t);
    const auto ev = hermitian_eigenvalues(sample_covariance(sample_noise_matrix(spec, rng)));
    const double hi = ev.front(), lo = ev.back();
    if (!(lo > 1e-300))
      throw numerical_error("trial " + std::to_string(t) + ": smallest eigenvalue " +
                            std::to_string(lo) + " is not positive (N=" +
                            std::to_string(spec.n_samples) + ", M=" +
                            std::to_string(spec.n_receivers) + ")");
    out.lambda_max[t] = hi;
    out.lambda_min[t] = lo;
    // Rounding in the solver can put lambda_1 a few ulps under lambda_M when
    // they coincide (M = 1); the statistic is >= 1 by definition.
    out.samples[t] = std::max(1.0, hi / lo);
  });
  return out;
}

/// Right-continuous empirical CDF.
class Ecdf {
 public:
  explicit Ecdf(std::vector<double> samples) : sorted_(std::move(samples)) {
    if (sorted_.empty()) throw std::invalid_argument("Ecdf: no samples");
    std::sort(sorted_.begin(), sorted_.end());
  }
  double operator()(double x) const {
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
  }
  const std::vector<double>& sorted_samples() const { return sorted_; }
  std::size_t size() const { return sorted_.size(); }

 private:
  std::vector<double> sorted_;
};

/// sup_x |F_n(x) - F(x)|, taking both one-sided limits of the step function
/// at every sample point. F is continuous, so these are the only candidates.
inline double ks_distance(const Ecdf& ecdf, const RatioCurve& curve) {
  const auto& x = ecdf.sorted_samples();
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = curve.cdf_at(x[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

struct Histogram {
  std::vector<double> edges;
  std::vector<double> density;  // integrates to 1 over [edges.front(), edges.back()]

  double density_at(double z) const {
    if (z < edges.front() || z >= edges.back()) return 0.0;
    const auto it = std::upper_bound(edges.begin(), edges.end(), z);
    return density[static_cast<std::size_t>(it - edges.begin()) - 1];
  }
};

/// Equal-width histogram; bin width from the Freedman-Diaconis rule
/// 2 IQR n^{-1/3} unless `bin_width` is given.
inline Histogram make_histogram(const Ecdf& ecdf, double bin_width = 0.0) {
  const auto& x = ecdf.sorted_samples();
  const double n = static_cast<double>(x.size());
  const double lo = x.front(), hi = x.back();
  if (!(bin_width > 0.0)) {
    const double iqr = x[static_cast<std::size_t>(0.75 * (n - 1))] -
                       x[static_cast<std::size_t>(0.25 * (n - 1))];
    bin_width = 2.0 * iqr / std::cbrt(n);
  }
  Histogram h;
  if (!(bin_width > 0.0) || hi == lo) {
    h.edges = {lo - 0.5, lo + 0.5};
    h.density = {1.0};
    return h;
  }
  const auto bins = static_cast<std::size_t>(std::ceil((hi - lo) / bin_width)) + 1;
  h.edges.resize(bins + 1);
  for (std::size_t k = 0; k <= bins; ++k) h.edges[k] = lo + k * bin_width;
  h.density.assign(bins, 0.0);
  for (double v : x) {
    auto k = static_cast<std::size_t>((v - lo) / bin_width);
    h.density[std::min(k, bins - 1)] += 1.0;
  }
  for (double& d : h.density) d /= n * bin_width;
  return h;
}

/// Sample moments with standard errors.
struct EmpiricalMoments {
  ExtremeMomentSet<double> set;
  double mean_se = 0.0;      // sd / sqrt(n)
  double variance_se = 0.0;  // sqrt((m4 - s^4) / n)
};

inline EmpiricalMoments sample_moments(std::span<const double> v, Extreme which) {
  const double n = static_cast<double>(v.size());
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= n;
  double m2 = 0.0, m4 = 0.0, raw2 = 0.0;
  for (double x : v) {
    const double d = (x - mean) * (x - mean);
    m2 += d;
    m4 += d * d;
    raw2 += x * x;
  }
  m2 /= n;
  m4 /= n;
  EmpiricalMoments out;
  out.set.which = which;
  out.set.mean = mean;
  out.set.variance = m2 * n / (n - 1.0);
  out.set.moments[1] = mean;
  out.set.moments[2] = raw2 / n;
  out.mean_se = std::sqrt(out.set.variance / n);
  out.variance_se = std::sqrt(std::max(0.0, m4 - m2 * m2) / n);
  return out;
}

struct EmpiricalExtremeMoments {
  EmpiricalMoments largest;
  EmpiricalMoments smallest;
};

inline EmpiricalExtremeMoments estimate_extreme_moments(std::span<const double> lambda_max,
                                                        std::span<const double> lambda_min) {
  if (lambda_max.size() < 1000 || lambda_min.size() != lambda_max.size())
    throw std::invalid_argument("estimate_extreme_moments: need >= 1000 paired draws");
  return {sample_moments(lambda_max, Extreme::largest),
          sample_moments(lambda_min, Extreme::smallest)};
}

/// Single-column CSV of the ratio samples, metadata in leading '#' lines.
inline void write_samples_csv(std::ostream& os, const RatioSampleSet& s,
                              std::string_view version) {
  os.imbue(std::locale::classic());
  os << "# eigensense " << version << "\n"
     << "# N=" << s.spec.n_samples << " M=" << s.spec.n_receivers
     << " noise_variance=" << s.spec.noise_variance << " field=" << to_string(s.spec.field)
     << "\n"
     << "# seed=" << s.seed << " trials=" << s.trial_count << "\n"
     << "# generator=" << s.generator << "\n"
     << "ratio\n"
     << std::setprecision(17);
  for (double v : s.samples) os << v << "\n";
}

}  // namespace eigensense

#endif  // EIGENSENSE_MONTE_CARLO_HPP
