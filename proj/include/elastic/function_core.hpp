#pragma once

// Transforms between functions, square-root slope functions, warpings, and
// square-root transforms, plus grid utilities (resampling, composition,
// inversion, mean height). Derivatives use central differences with one-sided
// stencils at the endpoints; all integrals use the trapezoid rule.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "elastic/numerics.hpp"
#include "elastic/types.hpp"

namespace elastic {

// q = sign(f') * sqrt(|f'|)
inline Srsf srsf(const SampledFunction& f) {
  const auto d = finite_difference(f.grid().points(), f.values());
  std::vector<double> q(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    q[i] = (d[i] < 0.0 ? -1.0 : 1.0) * std::sqrt(std::abs(d[i]));
  }
  return Srsf(f.grid(), std::move(q));
}

// f(t) = f0 + \int_0^t q|q|
inline SampledFunction srsf_inverse(const Srsf& q, double f0) {
  std::vector<double> qq(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) qq[i] = q.values()[i] * std::abs(q.values()[i]);
  auto vals = cumulative_trapezoid(q.grid().points(), qq);
  for (double& v : vals) v += f0;
  return SampledFunction(q.grid(), std::move(vals));
}

// (q, gamma) = (q o gamma) * sqrt(gamma')
inline Srsf group_action(const Srsf& q, const Warping& gamma) {
  require_same_grid(q.grid(), gamma.grid(), "group_action");
  const auto& ts = q.grid().points();
  const auto gd = finite_difference(ts, gamma.values());
  std::vector<double> out(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double qv = interp_linear(ts, q.values(), gamma.values()[i]);
    out[i] = qv * std::sqrt(std::max(gd[i], 0.0));
  }
  return Srsf(q.grid(), std::move(out));
}

// psi = sqrt(gamma'), renormalized to unit L2 norm.
inline Srt srt(const Warping& gamma) {
  const auto gd = finite_difference(gamma.grid().points(), gamma.values());
  std::vector<double> psi(gd.size());
  for (std::size_t i = 0; i < gd.size(); ++i) {
    if (gd[i] < -1e-8) throw std::runtime_error("srt: warping has negative derivative");
    psi[i] = std::sqrt(std::max(gd[i], 0.0));
  }
  return Srt(gamma.grid(), std::move(psi));
}

// gamma(t) = \int_0^t psi^2, rescaled so gamma(1) = 1 exactly.
inline Warping srt_inverse(const Srt& psi) {
  std::vector<double> sq(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) sq[i] = psi.values()[i] * psi.values()[i];
  auto vals = cumulative_trapezoid(psi.grid().points(), sq);
  const double total = vals.back();
  if (!(total > 0.0)) throw std::runtime_error("srt_inverse: degenerate transform");
  for (double& v : vals) v /= total;
  vals.front() = 0.0;
  vals.back() = 1.0;
  return Warping(psi.grid(), std::move(vals));
}

// f o gamma
inline SampledFunction warp_apply(const SampledFunction& f, const Warping& gamma) {
  require_same_grid(f.grid(), gamma.grid(), "warp_apply");
  auto out = interp_linear_many(f.grid().points(), f.values(), gamma.values());
  return SampledFunction(f.grid(), std::move(out));
}

// gamma^{-1}: swap (t, gamma(t)) samples and re-interpolate onto the grid.
inline Warping warp_invert(const Warping& gamma) {
  const auto& ts = gamma.grid().points();
  auto out = interp_linear_many(gamma.values(), ts, ts);
  out.front() = 0.0;
  out.back() = 1.0;
  return Warping(gamma.grid(), std::move(out));
}

// g1 o g2
inline Warping warp_compose(const Warping& g1, const Warping& g2) {
  require_same_grid(g1.grid(), g2.grid(), "warp_compose");
  const auto& ts = g1.grid().points();
  auto out = interp_linear_many(ts, g1.values(), g2.values());
  out.front() = 0.0;
  out.back() = 1.0;
  return Warping(g1.grid(), std::move(out));
}

// Affinely map the time span to [0,1] and resample by linear interpolation.
inline SampledFunction resample_linear(const std::vector<double>& times,
                                       const std::vector<double>& values, const Grid& grid) {
  require_same_length(times, values, "resample_linear");
  if (times.size() < 2) throw std::invalid_argument("resample_linear: need at least 2 samples");
  const double span = times.back() - times.front();
  if (!(span > 0.0)) throw std::invalid_argument("resample_linear: times must be increasing");
  std::vector<double> mapped(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw std::invalid_argument("resample_linear: duplicate or decreasing time at position " +
                                  std::to_string(i));
    }
    mapped[i] = (times[i] - times.front()) / span;
  }
  auto out = interp_linear_many(mapped, values, grid.points());
  return SampledFunction(grid, std::move(out));
}

// Natural cubic spline through the samples, evaluated on the grid after
// mapping the time span to [0,1].
inline SampledFunction resample_spline(const std::vector<double>& times,
                                       const std::vector<double>& values, const Grid& grid) {
  require_same_length(times, values, "resample_spline");
  if (times.size() < 4) throw std::invalid_argument("resample_spline: need at least 4 samples");
  const double span = times.back() - times.front();
  if (!(span > 0.0)) throw std::invalid_argument("resample_spline: times must be increasing");
  std::vector<double> mapped(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw std::invalid_argument("resample_spline: duplicate or decreasing time at position " +
                                  std::to_string(i));
    }
    mapped[i] = (times[i] - times.front()) / span;
  }
  const CubicSpline spline(std::move(mapped), values);
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = spline(grid[i]);
  return SampledFunction(grid, std::move(out));
}

// Average height \int_0^1 f.
inline double mean_height(const SampledFunction& f) {
  return trapezoid(f.grid().points(), f.values());
}

}  // namespace elastic
