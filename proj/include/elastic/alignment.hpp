#pragma once

// Warping-invariant amplitude alignment by dynamic programming on the sample
// lattice, the phase distance, and the unit-sphere geometry (exponential and
// inverse-exponential maps) used for square-root transforms.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "elastic/function_core.hpp"
#include "elastic/numerics.hpp"
#include "elastic/types.hpp"

namespace elastic {

inline constexpr double kTangentTol = 1e-6;   // tangency check
inline constexpr double kEpsTheta = 1e-8;     // arc length treated as zero / cut-locus guard
inline constexpr double kEpsTangentNorm = 1e-12;  // tangent norm treated as zero

struct AlignOptions {
  // Maximum numerator/denominator of the dense local lattice slopes p/q.
  int neighborhood = 5;
  // Additional sparse steep slopes s (edges (1,s) and (s,1)), admitted only
  // as the first or last step of a path. Warpings whose derivative vanishes
  // at a domain endpoint need a corner step far steeper than the dense set
  // provides (their inverses have square-root singularities there); without
  // these the unmatched boundary mass shows up as a systematic distance
  // offset for strongly warped samples. Keeping steep slopes out of the
  // interior preserves the implicit regularization of the bounded dense set,
  // which would otherwise allow whole features to be pinched away.
  std::vector<int> steep_slopes{8, 13, 20};
};

struct AlignmentResult {
  Warping gamma;
  Srsf aligned;     // (q2, gamma)
  double distance;  // ||q1 - aligned||
};

namespace detail {

struct DpEdge {
  int di = 1;
  int dj = 1;
  double sqrt_slope = 1.0;
  double end_weight = 0.5;
  double mid_weight = 1.0;
  bool steep = false;  // only admitted near the lattice corners
  // Interior cost samples at tau = r / max(di, dj): fractional row and column
  // offsets from the segment start.
  struct Sample {
    int row_off;
    double row_frac;
    int col_off;
    double col_frac;
  };
  std::vector<Sample> samples;
  // Backtrack support: column offsets at the interior integer rows r=1..di-1.
  std::vector<int> bt_col_int;
  std::vector<double> bt_col_frac;
};

inline int gcd_int(int a, int b) { return b == 0 ? a : gcd_int(b, a % b); }

inline DpEdge make_edge(int di, int dj) {
  DpEdge e;
  e.di = di;
  e.dj = dj;
  e.sqrt_slope = std::sqrt(static_cast<double>(dj) / static_cast<double>(di));
  // Residual samples along the longer lattice direction.
  const int steps = std::max(di, dj);
  e.end_weight = 0.5 * static_cast<double>(di) / steps;
  e.mid_weight = static_cast<double>(di) / steps;
  for (int r = 1; r < steps; ++r) {
    DpEdge::Sample s;
    const double tau = static_cast<double>(r) / steps;
    const double row = tau * di;
    const double col = tau * dj;
    s.row_off = static_cast<int>(row);
    s.row_frac = row - s.row_off;
    s.col_off = static_cast<int>(col);
    s.col_frac = col - s.col_off;
    e.samples.push_back(s);
  }
  for (int r = 1; r < di; ++r) {
    const long num = static_cast<long>(r) * dj;
    e.bt_col_int.push_back(static_cast<int>(num / di));
    e.bt_col_frac.push_back(static_cast<double>(num % di) / static_cast<double>(di));
  }
  return e;
}

inline std::vector<DpEdge> build_dp_edges(const AlignOptions& opts) {
  if (opts.neighborhood < 1 || opts.neighborhood > 8) {
    throw std::invalid_argument("align: neighborhood must be in [1,8]");
  }
  std::vector<DpEdge> edges;
  for (int di = 1; di <= opts.neighborhood; ++di) {
    for (int dj = 1; dj <= opts.neighborhood; ++dj) {
      if (gcd_int(di, dj) != 1) continue;
      edges.push_back(make_edge(di, dj));
    }
  }
  for (int s : opts.steep_slopes) {
    if (s <= opts.neighborhood || s > 120) continue;
    DpEdge up = make_edge(1, s);
    DpEdge down = make_edge(s, 1);
    up.steep = true;
    down.steep = true;
    edges.push_back(std::move(up));
    edges.push_back(std::move(down));
  }
  if (edges.size() > 250) throw std::invalid_argument("align: too many lattice edges");
  // Identity-like slopes first so that cost ties resolve toward gamma_id.
  std::stable_sort(edges.begin(), edges.end(), [](const DpEdge& a, const DpEdge& b) {
    const double da = std::abs(std::log(static_cast<double>(a.dj) / a.di));
    const double db = std::abs(std::log(static_cast<double>(b.dj) / b.di));
    if (da != db) return da < db;
    return a.di < b.di;
  });
  return edges;
}

}  // namespace detail

// Finds gamma minimizing ||q1 - (q2, gamma)|| over piecewise-linear warpings
// on the T x T sample lattice, local slopes from the dense p/q set plus the
// sparse steep extensions. Segment costs are trapezoidal approximations of
// the squared residual sampled along the longer lattice direction; ties
// resolve toward the identity. The reported distance is recomputed from the
// group action so that distance == ||q1 - aligned|| by construction.
inline AlignmentResult align(const Srsf& q1, const Srsf& q2, const AlignOptions& opts = {}) {
  require_same_grid(q1.grid(), q2.grid(), "align");
  const int T = static_cast<int>(q1.size());

  static const AlignOptions default_opts{};
  static const std::vector<detail::DpEdge> default_edges = detail::build_dp_edges(default_opts);
  std::vector<detail::DpEdge> custom_edges;
  const bool is_default = opts.neighborhood == default_opts.neighborhood &&
                          opts.steep_slopes == default_opts.steep_slopes;
  if (!is_default) custom_edges = detail::build_dp_edges(opts);
  const std::vector<detail::DpEdge>& edges = is_default ? default_edges : custom_edges;

  const double* a = q1.values().data();
  const double* b = q2.values().data();

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> cost(static_cast<std::size_t>(T) * T, kInf);
  std::vector<std::uint8_t> pred(static_cast<std::size_t>(T) * T, 255);
  cost[0] = 0.0;

  for (int i = 1; i < T; ++i) {
    double* cost_row = cost.data() + static_cast<std::size_t>(i) * T;
    std::uint8_t* pred_row = pred.data() + static_cast<std::size_t>(i) * T;
    for (int j = 1; j < T; ++j) {
      double best = kInf;
      std::uint8_t best_edge = 255;
      for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto& edge = edges[e];
        const int k = i - edge.di;
        const int l = j - edge.dj;
        if (k < 0 || l < 0) continue;
        if (edge.steep && !((k == 0 && l == 0) || (i == T - 1 && j == T - 1))) continue;
        const double base = cost[static_cast<std::size_t>(k) * T + l];
        if (base >= best) continue;
        const double ss = edge.sqrt_slope;
        const double d0 = a[k] - ss * b[l];
        const double d1 = a[i] - ss * b[j];
        double c = edge.end_weight * (d0 * d0 + d1 * d1);
        double mid = 0.0;
        for (const auto& s : edge.samples) {
          const int ri = k + s.row_off;
          const int ci = l + s.col_off;
          const double av = a[ri] + s.row_frac * (a[ri + 1] - a[ri]);
          const double bv = b[ci] + s.col_frac * (b[ci + 1] - b[ci]);
          const double d = av - ss * bv;
          mid += d * d;
        }
        const double total = base + c + edge.mid_weight * mid;
        if (total < best) {
          best = total;
          best_edge = static_cast<std::uint8_t>(e);
        }
      }
      cost_row[j] = best;
      pred_row[j] = best_edge;
    }
  }

  // Backtrack, filling gamma at every row by linear interpolation of the
  // lattice path in index space.
  const auto& ts = q1.grid().points();
  std::vector<double> gv(static_cast<std::size_t>(T));
  int i = T - 1;
  int j = T - 1;
  gv[static_cast<std::size_t>(i)] = ts[static_cast<std::size_t>(j)];
  while (i > 0) {
    const std::uint8_t e = pred[static_cast<std::size_t>(i) * T + j];
    if (e == 255) throw std::runtime_error("align: lattice node unreachable");
    const auto& edge = edges[e];
    const int k = i - edge.di;
    const int l = j - edge.dj;
    gv[static_cast<std::size_t>(k)] = ts[static_cast<std::size_t>(l)];
    for (std::size_t r = 0; r < edge.bt_col_int.size(); ++r) {
      const int ci = l + edge.bt_col_int[r];
      const double cf = edge.bt_col_frac[r];
      gv[static_cast<std::size_t>(k) + r + 1] =
          ts[static_cast<std::size_t>(ci)] +
          cf * (ts[static_cast<std::size_t>(ci) + 1] - ts[static_cast<std::size_t>(ci)]);
    }
    i = k;
    j = l;
  }

  Warping gamma(q1.grid(), std::move(gv));
  Srsf aligned = group_action(q2, gamma);
  const double dist = distance_l2(ts, q1.values(), aligned.values());
  return AlignmentResult{std::move(gamma), std::move(aligned), dist};
}

inline double amplitude_distance(const SampledFunction& f1, const SampledFunction& f2,
                                 const AlignOptions& opts = {}) {
  return align(srsf(f1), srsf(f2), opts).distance;
}

// Arc-length distance between warpings through their square-root transforms.
inline double phase_distance(const Warping& g1, const Warping& g2) {
  const Srt psi1 = srt(g1);
  const Srt psi2 = srt(g2);
  const double ip = inner_l2(psi1.grid().points(), psi1.values(), psi2.values());
  return std::acos(std::clamp(ip, -1.0, 1.0));
}

inline double sphere_distance(const Srt& psi1, const Srt& psi2) {
  require_same_grid(psi1.grid(), psi2.grid(), "sphere_distance");
  const double ip = inner_l2(psi1.grid().points(), psi1.values(), psi2.values());
  return std::acos(std::clamp(ip, -1.0, 1.0));
}

// An element of the tangent space at a point of the unit sphere.
class TangentVector {
 public:
  TangentVector(Srt base, std::vector<double> values)
      : base_(std::move(base)), values_(std::move(values)) {
    if (values_.size() != base_.size()) {
      throw std::invalid_argument("TangentVector: values/base length mismatch");
    }
    require_finite(values_, "TangentVector");
    const double ip = inner_l2(base_.grid().points(), values_, base_.values());
    if (std::abs(ip) > kTangentTol) {
      throw std::invalid_argument("TangentVector: not orthogonal to base point");
    }
  }

  static TangentVector zero(const Srt& base) {
    return TangentVector(base, std::vector<double>(base.size(), 0.0));
  }

  // Removes the component along the base point before constructing.
  static TangentVector projected(const Srt& base, std::vector<double> raw) {
    const double ip = inner_l2(base.grid().points(), raw, base.values());
    for (std::size_t i = 0; i < raw.size(); ++i) raw[i] -= ip * base.values()[i];
    return TangentVector(base, std::move(raw));
  }

  const Srt& base() const { return base_; }
  const std::vector<double>& values() const { return values_; }
  double norm() const { return norm_l2(base_.grid().points(), values_); }

  TangentVector scaled(double factor) const {
    std::vector<double> v = values_;
    for (double& x : v) x *= factor;
    return TangentVector(base_, std::move(v));
  }

 private:
  Srt base_;
  std::vector<double> values_;
};

// exp_psi(v) = cos(||v||) psi + sin(||v||) v / ||v||
inline Srt exp_map(const Srt& base, const TangentVector& v) {
  if (!(v.base().grid() == base.grid()) || v.base().values() != base.values()) {
    throw std::invalid_argument("exp_map: tangent vector not based at the given point");
  }
  const double nv = v.norm();
  if (nv < kEpsTangentNorm) return base;
  const double c = std::cos(nv);
  const double s = std::sin(nv);
  std::vector<double> out(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    out[i] = c * base.values()[i] + s * v.values()[i] / nv;
  }
  return Srt(base.grid(), std::move(out));
}

// exp^{-1}_psi1(psi2) = theta / sin(theta) * (psi2 - cos(theta) psi1)
inline TangentVector inv_exp_map(const Srt& base, const Srt& psi) {
  require_same_grid(base.grid(), psi.grid(), "inv_exp_map");
  const double ip =
      std::clamp(inner_l2(base.grid().points(), base.values(), psi.values()), -1.0, 1.0);
  const double theta = std::acos(ip);
  if (theta < kEpsTheta) return TangentVector::zero(base);
  if (theta > 3.14159265358979323846 - kEpsTheta) {
    throw std::runtime_error("inv_exp_map: points are antipodal");
  }
  const double scale = theta / std::sin(theta);
  std::vector<double> out(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    out[i] = scale * (psi.values()[i] - ip * base.values()[i]);
  }
  return TangentVector(base, std::move(out));
}

}  // namespace elastic
