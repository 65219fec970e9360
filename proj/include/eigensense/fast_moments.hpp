#ifndef EIGENSENSE_FAST_MOMENTS_HPP
#define EIGENSENSE_FAST_MOMENTS_HPP

// Floating-point evaluation of the extreme-eigenvalue moments for M up to 25.
//
// The signed permutation sum over alpha in the exact formulas is the
// determinant of the (M-1) x (M-1) matrix B_{a,m}(x) = Gamma(L_{a,m}) R(L_{a,m}, x),
// where R is the regularized upper (smallest eigenvalue) or lower (largest
// eigenvalue) incomplete gamma function. Pulling the l-sums back inside an
// integral over x gives, for the unnormalized Wishart matrix W,
//
//   E[lambda^p] = C0^{-1} sum_{i,j} (-1)^{i+j}
//                 int_0^inf x^{p + N - M + i + j - 2} e^{-x} det B^{(i,j)}(x) dx.
//
// The integrand without the x^p factor is the density of the extreme
// eigenvalue, so p = 0 must integrate to one; that is reported as a
// diagnostic next to each result.
//
// Evaluated literally (DensityBasis::monomial) the (i, j) sum cancels badly
// once N or M grow. The Vandermonde factor behind it may be written in any
// monic polynomial basis; choosing (t - x)^k, centred at the evaluation point,
// makes every cofactor except (1, 1) vanish and leaves one positive-definite
// Hankel determinant (DensityBasis::shifted, the default).

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "eigensense/exact_moments.hpp"
#include "eigensense/gaussian_model.hpp"
#include "eigensense/quadrature.hpp"
#include "eigensense/special.hpp"
#include "eigensense/wishart_spec.hpp"

namespace eigensense {

inline constexpr int kFastPathMaxReceivers = 25;

enum class DensityBasis { shifted, monomial };

struct FastMomentOptions {
  double rel_tol = 1e-12;
  /// Conditioning estimate above which the result is flagged.
  double condition_warning = 1e12;
  std::size_t max_panels = 4000;
  DensityBasis basis = DensityBasis::shifted;
  /// Gauss-Legendre panels used to discretize the orthogonality measure;
  /// 0 selects max(40, 4 M).
  std::size_t measure_panels = 0;
};

/// Moments p = 0, 1, 2 of one extreme eigenvalue of R = W / N at unit noise
/// variance, with quadrature diagnostics.
struct FastMomentResult {
  Extreme which = Extreme::largest;
  std::array<double, 3> moments{};  // E[lambda^0] (should be 1), E[lambda], E[lambda^2]
  double abs_error = 0.0;           // quadrature error estimate on E[lambda^2]
  double upper_limit = 0.0;         // integration cut-off in units of W
  double tail_bound = 0.0;          // integrand mass estimate beyond upper_limit
  /// Worst of: integrated |terms| over |integral| (sign cancellation in the
  /// cofactor sum) and the largest determinant pivot ratio seen.
  double condition = 1.0;
  bool condition_warning = false;
  std::size_t evaluations = 0;

  double mean() const { return moments[1]; }
  double variance() const { return moments[2] - moments[1] * moments[1]; }
};

namespace detail {

// Density of the extreme eigenvalue of W at x, plus the two diagnostics the
// engine reports: sum of |terms| (monomial basis only) and the pivot ratio of
// the determinant.
struct DensityValue {
  double density = 0.0;
  double magnitude = 0.0;
  double pivot_ratio = 1.0;
};

class ExtremeDensity {
 public:
  ExtremeDensity(Extreme which, const WishartSpec& spec,
                 DensityBasis basis = DensityBasis::shifted,
                 std::size_t measure_panels = 0)
      : which_(which),
        basis_(basis),
        n_(spec.n_samples),
        m_(spec.n_receivers),
        panels_(measure_panels != 0 ? measure_panels
                                    : std::max<std::size_t>(40, 4 * static_cast<std::size_t>(
                                                                    spec.n_receivers))) {
    log_c0_ = 0.0;
    for (int i = 1; i <= m_; ++i)
      log_c0_ += std::lgamma(static_cast<double>(n_ - i + 1)) +
                 std::lgamma(static_cast<double>(m_ - i + 1));
    const std::size_t size = static_cast<std::size_t>(m_ - 1);
    log_abs_.resize(size * size);
    signs_.resize(size * size);
    rule_ = gauss_legendre(kNodesPerPanel);
  }

  DensityValue operator()(double x) {
    if (x <= 0.0) return {};
    return basis_ == DensityBasis::shifted ? shifted(x) : monomial(x);
  }

 private:
  // log det of the (M-1) x (M-1) Hankel matrix of moments of
  //   smallest: s^2 (x + s)^a e^{-s} ds on [0, inf)
  //   largest:  s^2 (x - s)^a e^{s - x} ds on [0, x]
  // (a = N - M), which are the entries of G in the basis (t - x)^k with the
  // common e^{-x} of the smallest case factored out. The determinant is the
  // product of the squared norms of the monic orthogonal polynomials, which a
  // Stieltjes recurrence on a discretized measure produces without ever
  // forming the ill-conditioned Hankel matrix.
  double log_hankel_determinant(double x) {
    const int a = n_ - m_;
    const std::size_t size = static_cast<std::size_t>(m_ - 1);
    double lo = 0.0;
    double hi = x;
    if (which_ == Extreme::smallest) {
      const double reach = a + 2.0 * m_;
      hi = reach + 40.0 * std::sqrt(reach) + 60.0;
    }
    const std::size_t panels = panels_;
    const std::size_t per = rule_.nodes.size();
    nodes_.resize(panels * per);
    log_w_.resize(panels * per);
    const double width = (hi - lo) / static_cast<double>(panels);
    double log_max = -INFINITY;
    for (std::size_t p = 0; p < panels; ++p) {
      const double c = lo + (p + 0.5) * width;
      for (std::size_t k = 0; k < per; ++k) {
        const double s = c + 0.5 * width * rule_.nodes[k];
        const double base = which_ == Extreme::smallest ? x + s : x - s;
        const double expo = which_ == Extreme::smallest ? -s : s - x;
        const double lw = std::log(0.5 * width * rule_.weights[k]) + 2.0 * std::log(s) +
                          (a > 0 ? a * std::log(base) : 0.0) + expo;
        nodes_[p * per + k] = s;
        log_w_[p * per + k] = lw;
        log_max = std::max(log_max, lw);
      }
    }
    const std::size_t count = nodes_.size();
    w_.resize(count);
    q_prev_.assign(count, 0.0);
    q_.resize(count);
    double mu0 = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
      w_[k] = std::exp(log_w_[k] - log_max);
      mu0 += w_[k];
    }
    // Orthonormal Stieltjes recurrence; b_k^2 = beta_k.
    const double inv = 1.0 / std::sqrt(mu0);
    for (std::size_t k = 0; k < count; ++k) q_[k] = inv;
    double log_norm = std::log(mu0) + log_max;  // log ||pi_0||^2
    double log_det = log_norm;
    double b_prev = 0.0;
    for (std::size_t deg = 1; deg < size; ++deg) {
      double alpha = 0.0;
      for (std::size_t k = 0; k < count; ++k) alpha += w_[k] * nodes_[k] * q_[k] * q_[k];
      double b2 = 0.0;
      for (std::size_t k = 0; k < count; ++k) {
        const double r = (nodes_[k] - alpha) * q_[k] - b_prev * q_prev_[k];
        q_prev_[k] = r;  // reuse the buffer for the new vector
        b2 += w_[k] * r * r;
      }
      const double b = std::sqrt(b2);
      for (std::size_t k = 0; k < count; ++k) {
        const double next = q_prev_[k] / b;
        q_prev_[k] = q_[k];
        q_[k] = next;
      }
      b_prev = b;
      log_norm += std::log(b2);
      log_det += log_norm;
    }
    return log_det;
  }

  DensityValue shifted(double x) {
    DensityValue out;
    if (which_ == Extreme::largest && x <= 0.0) return out;
    const double log_det = log_hankel_determinant(x);
    const double extra = which_ == Extreme::smallest ? -(m_ - 1) * x : 0.0;
    const double log_f = (n_ - m_) * std::log(x) - x + extra + log_det - log_c0_;
    out.density = std::exp(log_f);
    out.magnitude = out.density;
    return out;
  }

  DensityValue monomial(double x) {
    // Full M x M Hankel matrix G_{k,l} = Gamma(N - M + k + l - 1) R(.., x)
    // depends on k + l only.
    const int offset = n_ - m_;
    std::vector<double> log_entry(static_cast<std::size_t>(2 * m_ + 1));
    std::vector<int> entry_sign(log_entry.size());
    for (int kl = 2; kl <= 2 * m_; ++kl) {
      const int order = offset + kl - 1;
      const auto g = log_regularized_gamma(order, x);
      const double lr = which_ == Extreme::smallest ? g.log_upper : g.log_lower;
      entry_sign[kl] = std::isfinite(lr) ? 1 : 0;
      log_entry[kl] = std::lgamma(static_cast<double>(order)) + lr;
    }
    const double lx = std::log(x);
    const std::size_t size = static_cast<std::size_t>(m_ - 1);
    CompensatedSum total;
    CompensatedSum magnitude;
    DensityValue out;
    for (int i = 1; i <= m_; ++i) {
      for (int j = i; j <= m_; ++j) {
        // Cofactor (i, j): drop row i and column j.
        std::size_t idx = 0;
        for (int k = 1; k <= m_; ++k) {
          if (k == i) continue;
          for (int l = 1; l <= m_; ++l) {
            if (l == j) continue;
            log_abs_[idx] = log_entry[k + l];
            signs_[idx] = entry_sign[k + l];
            ++idx;
          }
        }
        const ScaledDeterminant det = log_scaled_determinant(size, log_abs_, signs_);
        out.pivot_ratio = std::max(out.pivot_ratio, det.pivot_ratio);
        if (det.sign == 0) continue;
        const double log_term =
            (offset + i + j - 2) * lx - x + det.log_magnitude - log_c0_;
        const double term = std::exp(log_term);
        // G is symmetric, so the (j, i) cofactor equals the (i, j) one.
        const double mult = (i == j) ? 1.0 : 2.0;
        const int sign = ((i + j) % 2 == 0 ? 1 : -1) * det.sign;
        total.add(mult * sign * term);
        magnitude.add(mult * term);
      }
    }
    out.density = total.value();
    out.magnitude = magnitude.value();
    return out;
  }

  static constexpr std::size_t kNodesPerPanel = 20;

  Extreme which_;
  DensityBasis basis_;
  GaussRule rule_;
  std::vector<double> nodes_, log_w_, w_, q_, q_prev_;
  int n_;
  int m_;
  std::size_t panels_;
  double log_c0_;
  std::vector<double> log_abs_;
  std::vector<int> signs_;
};

}  // namespace detail

/// Moments of an extreme eigenvalue by quadrature of the cofactor expansion.
/// Throws numerical_error when the tail beyond the cut-off or the quadrature
/// error estimate exceeds tolerance.
inline FastMomentResult moment_fast(Extreme which, const WishartSpec& spec,
                                    const FastMomentOptions& opts = {}) {
  spec.validate();
  if (spec.n_receivers < 2)
    throw std::invalid_argument("fast moments need M >= 2");
  if (spec.n_receivers > kFastPathMaxReceivers)
    throw numerical_error("fast moment engine limited to M <= " +
                          std::to_string(kFastPathMaxReceivers) + " (got M=" +
                          std::to_string(spec.n_receivers) + ")");
  detail::ExtremeDensity density(which, spec, opts.basis, opts.measure_panels);
  const double sn = std::sqrt(static_cast<double>(spec.n_samples));
  const double sm = std::sqrt(static_cast<double>(spec.n_receivers));
  const double upper_edge = (sn + sm) * (sn + sm);
  const double lower_edge = (sn - sm) * (sn - sm);
  const double edge_scale = std::pow(sn + sm, 4.0 / 3.0);

  FastMomentResult out;
  out.which = which;
  double upper = 2.0 * upper_edge + 40.0 * edge_scale + 50.0;
  // Beyond the cut-off the density decays at least like e^{-x}, so its value
  // there times x^3 bounds the neglected second-moment mass.
  for (int attempt = 0;; ++attempt) {
    const double at = density(upper).density;
    out.tail_bound = std::abs(at) * upper * upper * upper;
    if (out.tail_bound < 1e-17 * upper_edge * upper_edge) break;
    if (attempt >= 8) {
      std::ostringstream msg;
      msg << "fast moment tail not negligible: density " << at << " at cut-off "
          << upper << " (N=" << spec.n_samples << ", M=" << spec.n_receivers << ")";
      throw numerical_error(msg.str());
    }
    upper *= 1.5;
  }
  out.upper_limit = upper;

  // Geometric breakpoints resolve the smallest eigenvalue when N is close to
  // M (its scale is then ~1/M rather than the lower edge); the edge fractions
  // place panel boundaries around both bulk edges.
  std::vector<double> bp{0.0, upper};
  for (double v = 1e-3; v < upper; v *= 2.0) bp.push_back(v);
  for (double f : {0.5, 0.75, 0.9, 1.0, 1.1, 1.25, 1.5}) {
    bp.push_back(f * lower_edge);
    bp.push_back(f * upper_edge);
  }
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  bp.erase(std::remove_if(bp.begin(), bp.end(), [&](double v) { return v > upper; }),
           bp.end());

  // Components: density, x/edge * density, (x/edge)^2 * density, |terms|.
  // Scaling by the edge keeps the convergence test on comparable magnitudes.
  const double s1 = 1.0 / upper_edge;
  const double s2 = s1 * s1;
  double pivot_ratio = 1.0;
  auto integrand = [&](double x) {
    const auto d = density(x);
    pivot_ratio = std::max(pivot_ratio, d.pivot_ratio);
    return std::array<double, 4>{d.density, x * s1 * d.density, x * x * s2 * d.density,
                                 d.magnitude};
  };
  QuadOptions qopt;
  qopt.rel_tol = opts.rel_tol;
  qopt.abs_tol = 0.0;
  qopt.max_panels = opts.max_panels;
  const auto r = integrate_adaptive(integrand, std::span<const double>(bp), qopt);
  out.evaluations = r.evaluations;
  if (!r.converged) {
    std::ostringstream msg;
    msg << "fast moment quadrature did not converge: error estimate " << r.abs_error
        << " after " << r.panels << " panels (N=" << spec.n_samples
        << ", M=" << spec.n_receivers << ", " << to_string(which) << ")";
    throw numerical_error(msg.str());
  }
  const double cancellation =
      r.value[0] != 0.0 ? r.value[3] / std::abs(r.value[0]) : INFINITY;
  out.condition = std::max(cancellation, pivot_ratio);
  out.condition_warning = out.condition > opts.condition_warning;

  const double n = spec.n_samples;
  out.moments = {r.value[0], r.value[1] / s1 / n, r.value[2] / s2 / (n * n)};
  out.abs_error = r.abs_error / s2 / (n * n);
  return out;
}

/// E[lambda^p], p in {1, 2}, at unit noise variance.
inline double moment_fast(Extreme which, int p, const WishartSpec& spec,
                          const FastMomentOptions& opts = {}) {
  if (p != 1 && p != 2)
    throw std::invalid_argument("fast moments support p in {1, 2}, got " +
                                std::to_string(p));
  return moment_fast(which, spec, opts).moments[static_cast<std::size_t>(p)];
}

/// GaussianPair from the quadrature engine. Variances below -1e-9 signal a
/// failed quadrature and throw; smaller negative values are snapped to zero
/// (which the pair validation then rejects as degenerate).
inline GaussianPair gaussian_pair_fast(const WishartSpec& spec,
                                       const FastMomentOptions& opts = {}) {
  const auto hi = moment_fast(Extreme::largest, spec, opts);
  const auto lo = moment_fast(Extreme::smallest, spec, opts);
  auto checked = [](double v, const char* what) {
    if (v < -1e-9)
      throw numerical_error(std::string("negative variance from quadrature for ") + what);
    return std::max(v, 0.0);
  };
  const double v_hi = checked(hi.variance(), "largest eigenvalue");
  const double v_lo = checked(lo.variance(), "smallest eigenvalue");
  GaussianPair unit{hi.mean(), std::sqrt(v_hi), lo.mean(), std::sqrt(v_lo)};
  return unit.scaled(spec.noise_variance);
}

}  // namespace eigensense

#endif  // EIGENSENSE_FAST_MOMENTS_HPP
