#ifndef EIGENSENSE_QUADRATURE_HPP
#define EIGENSENSE_QUADRATURE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

namespace eigensense {

/// Neumaier-compensated running sum. Reduction order still matters, but the
/// rounding error no longer grows with the number of terms.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

namespace detail {

// Value-type shims so the integrator handles scalars and fixed-size vectors.
template <class T>
struct QuadTraits;

template <>
struct QuadTraits<double> {
  static double zero() { return 0.0; }
  static void axpy(double& acc, double w, const double& v) { acc += w * v; }
  static double max_abs(const double& v) { return std::abs(v); }
  static double max_abs_diff(const double& a, const double& b) {
    return std::abs(a - b);
  }
};

template <std::size_t K>
struct QuadTraits<std::array<double, K>> {
  using V = std::array<double, K>;
  static V zero() { return V{}; }
  static void axpy(V& acc, double w, const V& v) {
    for (std::size_t k = 0; k < K; ++k) acc[k] += w * v[k];
  }
  static double max_abs(const V& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
  static double max_abs_diff(const V& a, const V& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < K; ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
  }
};

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
inline constexpr std::array<double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208977211497, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// Gauss weights for the odd-indexed Kronrod nodes.
inline constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <class T>
struct Panel {
  double a = 0.0;
  double b = 0.0;
  T value{};
  double error = 0.0;
  bool operator<(const Panel& o) const { return error < o.error; }
};

// QUADPACK-style error estimate for one component: |K - G| rescaled by the
// deviation integral, floored at the rounding level of the absolute integral.
inline double qk_error(double kronrod, double gauss, double resabs, double resasc,
                       double half) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double err = std::abs((kronrod - gauss) * half);
  resasc *= std::abs(half);
  resabs *= std::abs(half);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
    err = std::max(50.0 * eps * resabs, err);
  return err;
}

template <class T>
double component(const T& v, std::size_t k) {
  if constexpr (std::is_same_v<T, double>)
    return v;
  else
    return v[k];
}

template <class T>
constexpr std::size_t component_count() {
  if constexpr (std::is_same_v<T, double>)
    return 1;
  else
    return std::tuple_size_v<T>;
}

template <class T, class F>
Panel<T> gauss_kronrod_21(F& f, double a, double b, std::size_t& evals) {
  using Tr = QuadTraits<T>;
  constexpr std::size_t nc = component_count<T>();
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<T, 21> fv;
  fv[20] = f(center);
  for (std::size_t k = 0; k < 10; ++k) {
    const double dx = half * kKronrodNodes[k];
    fv[2 * k] = f(center - dx);
    fv[2 * k + 1] = f(center + dx);
  }
  evals += 21;
  auto weight = [](std::size_t idx) {
    return idx == 20 ? kKronrodWeights[10] : kKronrodWeights[idx / 2];
  };
  T kronrod = Tr::zero();
  T gauss = Tr::zero();
  for (std::size_t idx = 0; idx < 21; ++idx) {
    Tr::axpy(kronrod, weight(idx), fv[idx]);
    const std::size_t k = idx / 2;
    if (idx < 20 && k % 2 == 1) Tr::axpy(gauss, kGaussWeights[k / 2], fv[idx]);
  }
  Panel<T> p;
  p.a = a;
  p.b = b;
  p.value = Tr::zero();
  Tr::axpy(p.value, half, kronrod);
  p.error = 0.0;
  for (std::size_t c = 0; c < nc; ++c) {
    const double mean = 0.5 * component(kronrod, c);
    double resabs = 0.0;
    double resasc = 0.0;
    for (std::size_t idx = 0; idx < 21; ++idx) {
      const double v = component(fv[idx], c);
      resabs += weight(idx) * std::abs(v);
      resasc += weight(idx) * std::abs(v - mean);
    }
    p.error = std::max(p.error, qk_error(component(kronrod, c), component(gauss, c),
                                         resabs, resasc, half));
  }
  return p;
}

}  // namespace detail

struct QuadOptions {
  double abs_tol = 1e-13;
  double rel_tol = 1e-12;
  std::size_t max_panels = 2000;
};

template <class T>
struct QuadResult {
  T value{};
  double abs_error = 0.0;
  std::size_t evaluations = 0;
  std::size_t panels = 0;
  bool converged = false;
};

/// Globally adaptive Gauss-Kronrod (G10/K21) integration. `breakpoints` must
/// be sorted and contain at least two points; each initial gap becomes a
/// panel, which keeps narrow peaks from being missed by the first estimate.
/// The panel with the largest error estimate is bisected until the summed
/// estimate drops below max(abs_tol, rel_tol * |value|).
template <class F>
auto integrate_adaptive(F f, std::span<const double> breakpoints,
                        const QuadOptions& opts = {}) {
  using T = std::decay_t<decltype(f(0.0))>;
  using Tr = detail::QuadTraits<T>;
  QuadResult<T> out;
  std::priority_queue<detail::Panel<T>> heap;
  for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k) {
    if (breakpoints[k + 1] > breakpoints[k])
      heap.push(detail::gauss_kronrod_21<T>(f, breakpoints[k], breakpoints[k + 1],
                                            out.evaluations));
  }
  T value = Tr::zero();
  double error = 0.0;
  {
    auto copy = heap;
    while (!copy.empty()) {
      Tr::axpy(value, 1.0, copy.top().value);
      error += copy.top().error;
      copy.pop();
    }
  }
  while (!heap.empty() && heap.size() < opts.max_panels &&
         error > std::max(opts.abs_tol, opts.rel_tol * Tr::max_abs(value))) {
    auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      heap.push(worst);
      break;
    }
    auto left = detail::gauss_kronrod_21<T>(f, worst.a, mid, out.evaluations);
    auto right = detail::gauss_kronrod_21<T>(f, mid, worst.b, out.evaluations);
    Tr::axpy(value, -1.0, worst.value);
    Tr::axpy(value, 1.0, left.value);
    Tr::axpy(value, 1.0, right.value);
    error += left.error + right.error - worst.error;
    heap.push(std::move(left));
    heap.push(std::move(right));
  }
  // Final reduction sorted by panel position so the result does not depend on
  // heap order.
  std::vector<detail::Panel<T>> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(),
            [](const auto& l, const auto& r) { return l.a < r.a; });
  if constexpr (std::is_same_v<T, double>) {
    CompensatedSum s;
    for (const auto& p : panels) s.add(p.value);
    out.value = s.value();
  } else {
    std::array<CompensatedSum, std::tuple_size_v<T>> s;
    for (const auto& p : panels)
      for (std::size_t k = 0; k < s.size(); ++k) s[k].add(p.value[k]);
    for (std::size_t k = 0; k < s.size(); ++k) out.value[k] = s[k].value();
  }
  out.abs_error = 0.0;
  for (const auto& p : panels) out.abs_error += p.error;
  out.panels = panels.size();
  out.converged =
      out.abs_error <= std::max(opts.abs_tol, opts.rel_tol * Tr::max_abs(out.value));
  return out;
}

/// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n).
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline GaussRule gauss_legendre(std::size_t n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double pi = 3.14159265358979323846;
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (std::size_t k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = rule.weights[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return rule;
}

template <class F>
auto integrate_adaptive(F f, double a, double b, const QuadOptions& opts = {}) {
  const std::array<double, 2> bp{a, b};
  return integrate_adaptive(std::move(f), std::span<const double>(bp), opts);
}

}  // namespace eigensense

#endif  // EIGENSENSE_QUADRATURE_HPP
