#ifndef EIGENSENSE_SPECIAL_HPP
#define EIGENSENSE_SPECIAL_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace eigensense {

/// e_K(x) = sum_{l<K} x^l / l!, summed forward with a running term.
inline double truncated_exp(int order, double x) {
  if (order <= 0) return 0.0;
  double term = 1.0;
  double sum = 1.0;
  for (int l = 1; l < order; ++l) {
    term *= x / l;
    sum += term;
    if (term < sum * 1e-18 && l > x) break;
  }
  return sum;
}

/// Value stored as sign * exp(log_magnitude).
struct ScaledDeterminant {
  double log_magnitude = -std::numeric_limits<double>::infinity();
  int sign = 0;
  /// Largest over smallest LU pivot after scaling; a cheap conditioning proxy.
  double pivot_ratio = 1.0;

  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_magnitude); }
};

/// log Q(L, x) and log P(L, x) for integer L >= 1, where
/// Q(L, x) = Gamma(L, x) / Gamma(L) = e^{-x} e_L(x) and P = 1 - Q.
/// The smaller of the two is summed directly in its convergent direction and
/// the larger is taken as its complement, so neither loses relative accuracy.
struct LogIncompleteGamma {
  double log_upper;  // log Q
  double log_lower;  // log P
};

inline LogIncompleteGamma log_regularized_gamma(int order, double x) {
  constexpr double neg_inf = -std::numeric_limits<double>::infinity();
  if (x <= 0.0) return {0.0, neg_inf};
  const double lx = std::log(x);
  if (x < order) {
    // P = e^{-x} sum_{l >= L} x^l / l!, terms shrink by x/(l+1) < 1.
    const double log_lead = -x + order * lx - std::lgamma(order + 1.0);
    double term = 1.0;
    double sum = 1.0;
    for (int l = order + 1; l < order + 100000; ++l) {
      term *= x / l;
      sum += term;
      if (term < sum * 1e-17) break;
    }
    const double log_p = log_lead + std::log(sum);
    return {std::log1p(-std::exp(log_p)), log_p};
  }
  // Q = e^{-x} sum_{l < L} x^l / l!, summed downward from l = L-1; terms
  // shrink by l/x <= 1.
  const double log_lead = -x + (order - 1) * lx - std::lgamma(static_cast<double>(order));
  double term = 1.0;
  double sum = 1.0;
  for (int l = order - 1; l >= 1; --l) {
    term *= l / x;
    sum += term;
    if (term < sum * 1e-17) break;
  }
  const double log_q = log_lead + std::log(sum);
  return {log_q, std::log1p(-std::exp(log_q))};
}

/// Determinant of a dense n x n matrix given entrywise as sign * exp(log).
/// Rows, then columns, are scaled by their largest magnitude before LU with
/// partial pivoting in extended precision; the scalings go to log_magnitude.
inline ScaledDeterminant log_scaled_determinant(std::size_t n,
                                                std::span<const double> log_abs,
                                                std::span<const int> signs) {
  ScaledDeterminant out;
  out.log_magnitude = 0.0;
  out.sign = 1;
  if (n == 0) return out;
  constexpr double neg_inf = -std::numeric_limits<double>::infinity();
  std::vector<double> row_max(n, neg_inf), col_max(n, neg_inf);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (signs[r * n + c] != 0) row_max[r] = std::max(row_max[r], log_abs[r * n + c]);
  for (std::size_t r = 0; r < n; ++r) {
    if (row_max[r] == neg_inf) return {neg_inf, 0};
    out.log_magnitude += row_max[r];
  }
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r)
      if (signs[r * n + c] != 0)
        col_max[c] = std::max(col_max[c], log_abs[r * n + c] - row_max[r]);
  for (std::size_t c = 0; c < n; ++c) {
    if (col_max[c] == neg_inf) return {neg_inf, 0};
    out.log_magnitude += col_max[c];
  }
  std::vector<long double> a(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const int s = signs[r * n + c];
      a[r * n + c] =
          s == 0 ? 0.0L
                 : s * std::exp(static_cast<long double>(log_abs[r * n + c]) -
                                row_max[r] - col_max[c]);
    }
  long double scale = 1.0L;
  long double pivot_max = 0.0L;
  long double pivot_min = std::numeric_limits<long double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t r = k + 1; r < n; ++r)
      if (std::abs(a[r * n + k]) > std::abs(a[piv * n + k])) piv = r;
    if (a[piv * n + k] == 0.0L) return {neg_inf, 0};
    if (piv != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[k * n + c], a[piv * n + c]);
      out.sign = -out.sign;
    }
    const long double d = a[k * n + k];
    if (d < 0) out.sign = -out.sign;
    pivot_max = std::max(pivot_max, std::abs(d));
    pivot_min = std::min(pivot_min, std::abs(d));
    scale *= std::abs(d);
    if (scale < 1e-300L || scale > 1e300L) {
      out.log_magnitude += static_cast<double>(std::log(scale));
      scale = 1.0L;
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      const long double f = a[r * n + k] / d;
      if (f == 0.0L) continue;
      for (std::size_t c = k + 1; c < n; ++c) a[r * n + c] -= f * a[k * n + c];
    }
  }
  out.log_magnitude += static_cast<double>(std::log(scale));
  out.pivot_ratio = static_cast<double>(pivot_max / pivot_min);
  return out;
}

/// Running log(sum exp(v_k)) over values supplied in log form.
class LogSumExp {
 public:
  void add(double log_value) {
    if (log_value == -std::numeric_limits<double>::infinity()) return;
    if (log_value <= max_) {
      sum_ += std::exp(log_value - max_);
    } else {
      sum_ = sum_ * std::exp(max_ - log_value) + 1.0;
      max_ = log_value;
    }
  }
  double value() const {
    return sum_ == 0.0 ? -std::numeric_limits<double>::infinity() : max_ + std::log(sum_);
  }

 private:
  double max_ = -std::numeric_limits<double>::infinity();
  double sum_ = 0.0;
};

}  // namespace eigensense

#endif  // EIGENSENSE_SPECIAL_HPP
