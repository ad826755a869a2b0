#pragma once

// Shared numerical kernels: trapezoidal quadrature, finite differences,
// linear interpolation, natural cubic splines, and small statistics helpers.
// All routines operate on plain vectors sampled at shared abscissae.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace elastic {

inline void require_same_length(const std::vector<double>& a,
                                const std::vector<double>& b,
                                const char* what) {
  if (a.size() != b.size()) {
    throw std::invalid_argument(std::string(what) + ": length mismatch");
  }
}

// Trapezoid rule for the integral of v over the sampled abscissae.
inline double trapezoid(const std::vector<double>& ts, const std::vector<double>& vs) {
  require_same_length(ts, vs, "trapezoid");
  if (ts.size() < 2) throw std::invalid_argument("trapezoid: need at least 2 samples");
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    acc += 0.5 * (vs[i] + vs[i + 1]) * (ts[i + 1] - ts[i]);
  }
  return acc;
}

// Cumulative trapezoid integral; out[0] = 0.
inline std::vector<double> cumulative_trapezoid(const std::vector<double>& ts,
                                                const std::vector<double>& vs) {
  require_same_length(ts, vs, "cumulative_trapezoid");
  std::vector<double> out(ts.size(), 0.0);
  for (std::size_t i = 1; i < ts.size(); ++i) {
    out[i] = out[i - 1] + 0.5 * (vs[i] + vs[i - 1]) * (ts[i] - ts[i - 1]);
  }
  return out;
}

// L2 inner product <a, b> by trapezoidal quadrature.
inline double inner_l2(const std::vector<double>& ts, const std::vector<double>& a,
                       const std::vector<double>& b) {
  require_same_length(a, b, "inner_l2");
  require_same_length(ts, a, "inner_l2");
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    acc += 0.5 * (a[i] * b[i] + a[i + 1] * b[i + 1]) * (ts[i + 1] - ts[i]);
  }
  return acc;
}

inline double norm_l2(const std::vector<double>& ts, const std::vector<double>& a) {
  return std::sqrt(std::max(inner_l2(ts, a, a), 0.0));
}

inline double distance_l2(const std::vector<double>& ts, const std::vector<double>& a,
                          const std::vector<double>& b) {
  require_same_length(a, b, "distance_l2");
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    const double da = a[i] - b[i];
    const double db = a[i + 1] - b[i + 1];
    acc += 0.5 * (da * da + db * db) * (ts[i + 1] - ts[i]);
  }
  return std::sqrt(std::max(acc, 0.0));
}

// Central finite differences, one-sided at the endpoints.
inline std::vector<double> finite_difference(const std::vector<double>& ts,
                                             const std::vector<double>& vs) {
  require_same_length(ts, vs, "finite_difference");
  const std::size_t n = ts.size();
  if (n < 2) throw std::invalid_argument("finite_difference: need at least 2 samples");
  std::vector<double> out(n);
  out[0] = (vs[1] - vs[0]) / (ts[1] - ts[0]);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    out[i] = (vs[i + 1] - vs[i - 1]) / (ts[i + 1] - ts[i - 1]);
  }
  out[n - 1] = (vs[n - 1] - vs[n - 2]) / (ts[n - 1] - ts[n - 2]);
  return out;
}

// Piecewise-linear interpolation with clamping outside [xs.front(), xs.back()].
// xs must be strictly increasing.
inline double interp_linear(const std::vector<double>& xs, const std::vector<double>& ys,
                            double x) {
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
  const std::size_t lo = hi - 1;
  const double w = (x - xs[lo]) / (xs[hi] - xs[lo]);
  return ys[lo] + w * (ys[hi] - ys[lo]);
}

inline std::vector<double> interp_linear_many(const std::vector<double>& xs,
                                              const std::vector<double>& ys,
                                              const std::vector<double>& queries) {
  std::vector<double> out(queries.size());
  for (std::size_t i = 0; i < queries.size(); ++i) out[i] = interp_linear(xs, ys, queries[i]);
  return out;
}

// Natural cubic spline through (xs, ys); xs strictly increasing, size >= 2.
class CubicSpline {
 public:
  CubicSpline(std::vector<double> xs, std::vector<double> ys)
      : xs_(std::move(xs)), ys_(std::move(ys)) {
    const std::size_t n = xs_.size();
    require_same_length(xs_, ys_, "CubicSpline");
    if (n < 2) throw std::invalid_argument("CubicSpline: need at least 2 knots");
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (!(xs_[i + 1] > xs_[i])) {
        throw std::invalid_argument("CubicSpline: knots must be strictly increasing");
      }
    }
    m_.assign(n, 0.0);
    if (n == 2) return;
    // Tridiagonal solve for second derivatives, natural end conditions.
    std::vector<double> diag(n, 0.0), rhs(n, 0.0), upper(n, 0.0);
    diag[0] = 1.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double hl = xs_[i] - xs_[i - 1];
      const double hr = xs_[i + 1] - xs_[i];
      diag[i] = 2.0 * (hl + hr);
      upper[i] = hr;
      rhs[i] = 6.0 * ((ys_[i + 1] - ys_[i]) / hr - (ys_[i] - ys_[i - 1]) / hl);
    }
    diag[n - 1] = 1.0;
    // Forward elimination (lower entry at row i is h_{i-1} for interior rows).
    for (std::size_t i = 2; i + 1 < n; ++i) {
      const double hl = xs_[i] - xs_[i - 1];
      const double w = hl / diag[i - 1];
      diag[i] -= w * upper[i - 1];
      rhs[i] -= w * rhs[i - 1];
    }
    for (std::size_t ii = n - 1; ii-- > 1;) {
      m_[ii] = (rhs[ii] - upper[ii] * m_[ii + 1]) / diag[ii];
    }
  }

  double operator()(double x) const {
    const std::size_t n = xs_.size();
    if (x <= xs_.front()) x = xs_.front();
    if (x >= xs_.back()) x = xs_.back();
    const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    std::size_t hi = static_cast<std::size_t>(it - xs_.begin());
    if (hi >= n) hi = n - 1;
    if (hi == 0) hi = 1;
    const std::size_t lo = hi - 1;
    const double h = xs_[hi] - xs_[lo];
    const double a = (xs_[hi] - x) / h;
    const double b = (x - xs_[lo]) / h;
    return a * ys_[lo] + b * ys_[hi] +
           ((a * a * a - a) * m_[lo] + (b * b * b - b) * m_[hi]) * (h * h) / 6.0;
  }

 private:
  std::vector<double> xs_;
  std::vector<double> ys_;
  std::vector<double> m_;  // second derivatives at knots
};

inline double mean(const std::vector<double>& xs) {
  if (xs.empty()) throw std::invalid_argument("mean: empty input");
  double acc = 0.0;
  for (double x : xs) acc += x;
  return acc / static_cast<double>(xs.size());
}

inline double sample_sd(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double acc = 0.0;
  for (double x : xs) acc += (x - m) * (x - m);
  return std::sqrt(acc / static_cast<double>(xs.size() - 1));
}

inline double median_of(std::vector<double> xs) {
  if (xs.empty()) throw std::invalid_argument("median_of: empty input");
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  if (n % 2 == 1) return xs[n / 2];
  return 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

// Quantile by linear interpolation of order statistics (type-7).
inline double quantile_type7(std::vector<double> xs, double p) {
  if (xs.empty()) throw std::invalid_argument("quantile_type7: empty input");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("quantile_type7: p outside [0,1]");
  std::sort(xs.begin(), xs.end());
  const double h = p * static_cast<double>(xs.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= xs.size()) return xs.back();
  return xs[lo] + (h - static_cast<double>(lo)) * (xs[lo + 1] - xs[lo]);
}

}  // namespace elastic
