#pragma once

// Metric-based boxplots for the amplitude, phase, and translation components:
// ordering, 50% central region, quartile pair search, IQR, outlier cutoffs,
// extremes, outlier flags, surface-display data, and the multiscale severity
// scan.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "elastic/alignment.hpp"
#include "elastic/medians.hpp"
#include "elastic/numerics.hpp"
#include "elastic/types.hpp"

namespace elastic {

inline constexpr double kEpsSpread = 1e-8;  // distances below this are zero spread
inline constexpr double kPi = 3.14159265358979323846;

enum class OutlierRule { kMax, kMin };

struct BoxplotOptions {
  double lambda = 0.5;
  OutlierRule rule = OutlierRule::kMax;
};

// Indices of the floor(n/2) samples closest to the median, ascending by
// distance; ties resolve to the smaller original index.
inline std::vector<std::size_t> central_region(const std::vector<double>& distances) {
  const std::size_t n = distances.size();
  if (n < 4) throw std::invalid_argument("central_region: need at least 4 samples");
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (distances[a] != distances[b]) return distances[a] < distances[b];
    return a < b;
  });
  order.resize(n / 2);
  return order;
}

struct QuartilePick {
  std::size_t first = 0;   // position within the central list
  std::size_t second = 0;  // position within the central list
  bool degenerate = false;
};

namespace detail {

// Exhaustive pair search shared by the amplitude and phase quartiles:
// maximize (1-lambda) (d_a + d_b)/d_max - lambda (<u_a, u_b> + 1) over pairs
// of central members, where u are the unit displacement directions. Members
// with near-zero displacement are skipped.
inline QuartilePick quartile_pair_search(const std::vector<double>& ts,
                                         const std::vector<std::vector<double>>& displacements,
                                         double lambda) {
  const std::size_t m = displacements.size();
  std::vector<double> ds(m);
  double dmax = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    ds[i] = norm_l2(ts, displacements[i]);
    dmax = std::max(dmax, ds[i]);
  }
  QuartilePick pick;
  if (dmax < kEpsSpread) {
    pick.degenerate = true;
    return pick;
  }
  std::vector<std::vector<double>> units(m);
  std::vector<bool> usable(m, false);
  std::size_t usable_count = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (ds[i] < kEpsSpread) continue;
    usable[i] = true;
    ++usable_count;
    units[i] = displacements[i];
    for (double& v : units[i]) v /= ds[i];
  }
  if (usable_count < 2) {
    pick.degenerate = true;
    return pick;
  }
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < m; ++a) {
    if (!usable[a]) continue;
    for (std::size_t b = a + 1; b < m; ++b) {
      if (!usable[b]) continue;
      const double spread = (1.0 - lambda) * (ds[a] + ds[b]) / dmax;
      const double angle = lambda * (inner_l2(ts, units[a], units[b]) + 1.0);
      const double objective = spread - angle;
      if (objective > best) {
        best = objective;
        pick.first = a;
        pick.second = b;
      }
    }
  }
  return pick;
}

inline std::vector<double> subtract(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

}  // namespace detail

// Quartile pair over the central amplitude region (positions into `central`).
inline QuartilePick amplitude_quartiles(const std::vector<Srsf>& central, const Srsf& q_bar,
                                        double lambda) {
  if (lambda < 0.0 || lambda > 1.0) throw std::invalid_argument("amplitude_quartiles: lambda");
  const auto& ts = q_bar.grid().points();
  std::vector<std::vector<double>> displacements;
  displacements.reserve(central.size());
  for (const auto& q : central) {
    require_same_grid(q.grid(), q_bar.grid(), "amplitude_quartiles");
    displacements.push_back(detail::subtract(q.values(), q_bar.values()));
  }
  return detail::quartile_pair_search(ts, displacements, lambda);
}

// Quartile pair over the central phase region, in the tangent space at the
// phase median (positions into `central_vs`).
inline QuartilePick phase_quartiles(const std::vector<TangentVector>& central_vs, double lambda) {
  if (lambda < 0.0 || lambda > 1.0) throw std::invalid_argument("phase_quartiles: lambda");
  if (central_vs.empty()) return QuartilePick{0, 0, true};
  const auto& ts = central_vs.front().base().grid().points();
  std::vector<std::vector<double>> displacements;
  displacements.reserve(central_vs.size());
  for (const auto& v : central_vs) displacements.push_back(v.values());
  return detail::quartile_pair_search(ts, displacements, lambda);
}

struct AmplitudeBoxplot {
  Srsf median_srsf;
  std::size_t q1_index = 0;  // original sample indices
  std::size_t q3_index = 0;
  Srsf q1;
  Srsf q3;
  Srsf w1;  // synthetic outlier cutoffs
  Srsf w3;
  std::optional<std::size_t> extreme1_index;
  std::optional<std::size_t> extreme3_index;
  double iqr = 0.0;
  std::vector<std::size_t> outlier_indices;
  double lambda = 0.5;
  double k_a = 1.3;
  std::vector<std::size_t> central_indices;
  bool degenerate = false;
};

inline AmplitudeBoxplot amplitude_boxplot(const Decomposition& dec, double k_a,
                                          const BoxplotOptions& opts = {}) {
  if (!(k_a > 0.0)) throw std::invalid_argument("amplitude_boxplot: k_a must be positive");
  const auto& ts = dec.grid.points();
  const std::size_t n = dec.size();
  AmplitudeBoxplot box{dec.amp_median_srsf, 0, 0, dec.amp_median_srsf, dec.amp_median_srsf,
                       dec.amp_median_srsf, dec.amp_median_srsf, std::nullopt, std::nullopt,
                       0.0, {}, opts.lambda, k_a, {}, false};
  box.central_indices = central_region(dec.amp_distances);

  std::vector<Srsf> central;
  central.reserve(box.central_indices.size());
  for (std::size_t idx : box.central_indices) central.push_back(dec.amplitude_srsfs[idx]);
  const QuartilePick pick = amplitude_quartiles(central, dec.amp_median_srsf, opts.lambda);
  if (pick.degenerate) {
    box.degenerate = true;
    return box;
  }
  box.q1_index = box.central_indices[pick.first];
  box.q3_index = box.central_indices[pick.second];
  box.q1 = dec.amplitude_srsfs[box.q1_index];
  box.q3 = dec.amplitude_srsfs[box.q3_index];

  const double d1 = distance_l2(ts, box.q1.values(), dec.amp_median_srsf.values());
  const double d3 = distance_l2(ts, box.q3.values(), dec.amp_median_srsf.values());
  box.iqr = d1 + d3;

  auto cutoff = [&](const Srsf& quartile, double d) {
    std::vector<double> w(quartile.size());
    const double scale = k_a * box.iqr / d;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double dir = quartile.values()[i] - dec.amp_median_srsf.values()[i];
      w[i] = quartile.values()[i] + scale * dir;
    }
    return Srsf(dec.grid, std::move(w));
  };
  box.w1 = cutoff(box.q1, d1);
  box.w3 = cutoff(box.q3, d3);

  const double r1 = distance_l2(ts, box.w1.values(), dec.amp_median_srsf.values());
  const double r3 = distance_l2(ts, box.w3.values(), dec.amp_median_srsf.values());
  const double fence = opts.rule == OutlierRule::kMax ? std::max(r1, r3) : std::min(r1, r3);

  for (std::size_t i = 0; i < n; ++i) {
    if (dec.amp_distances[i] > fence) box.outlier_indices.push_back(i);
  }

  // Extremes: nearest non-central, non-outlier samples to each cutoff.
  std::vector<bool> excluded(n, false);
  for (std::size_t idx : box.central_indices) excluded[idx] = true;
  for (std::size_t idx : box.outlier_indices) excluded[idx] = true;
  double best1 = std::numeric_limits<double>::infinity();
  double best3 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    if (excluded[i]) continue;
    const double to1 = distance_l2(ts, dec.amplitude_srsfs[i].values(), box.w1.values());
    const double to3 = distance_l2(ts, dec.amplitude_srsfs[i].values(), box.w3.values());
    if (to1 < best1) {
      best1 = to1;
      box.extreme1_index = i;
    }
    if (to3 < best3) {
      best3 = to3;
      box.extreme3_index = i;
    }
  }
  return box;
}

struct PhaseBoxplot {
  Warping median;
  Srt median_srt;
  std::size_t q1_index = 0;
  std::size_t q3_index = 0;
  Warping q1;
  Warping q3;
  Warping w1;
  Warping w3;
  std::optional<std::size_t> extreme1_index;
  std::optional<std::size_t> extreme3_index;
  double iqr = 0.0;
  std::vector<std::size_t> outlier_indices;
  double lambda = 0.5;
  double k_p = 0.9;
  std::vector<std::size_t> central_indices;
  bool degenerate = false;
  bool cutoff_clamped = false;  // tangent extension hit the sphere cut locus
};

inline PhaseBoxplot phase_boxplot(const Decomposition& dec, double k_p,
                                  const BoxplotOptions& opts = {}) {
  if (!(k_p > 0.0)) throw std::invalid_argument("phase_boxplot: k_p must be positive");
  const std::size_t n = dec.size();
  const Warping identity = Warping::identity(dec.grid);
  PhaseBoxplot box{dec.phase_median, dec.phase_median_srt, 0, 0, identity, identity,
                   identity, identity, std::nullopt, std::nullopt, 0.0, {}, opts.lambda,
                   k_p, {}, false, false};
  box.central_indices = central_region(dec.phase_distances);

  std::vector<Srt> psis;
  psis.reserve(n);
  for (const auto& g : dec.phases) psis.push_back(srt(g));

  std::vector<TangentVector> central_vs;
  central_vs.reserve(box.central_indices.size());
  for (std::size_t idx : box.central_indices) {
    central_vs.push_back(inv_exp_map(dec.phase_median_srt, psis[idx]));
  }
  const QuartilePick pick = phase_quartiles(central_vs, opts.lambda);
  if (pick.degenerate) {
    box.degenerate = true;
    return box;
  }
  box.q1_index = box.central_indices[pick.first];
  box.q3_index = box.central_indices[pick.second];
  box.q1 = dec.phases[box.q1_index];
  box.q3 = dec.phases[box.q3_index];

  const TangentVector& v1 = central_vs[pick.first];
  const TangentVector& v3 = central_vs[pick.second];
  const double n1 = v1.norm();
  const double n3 = v3.norm();
  box.iqr = n1 + n3;

  // Extends the quartile tangent by k_p * IQR_p, clamped below the sphere cut
  // locus. Far extensions can leave the valid-warping region once flooring to
  // the positive orthant kicks in; those retreat halfway toward the quartile
  // until the cutoff describes an actual warping.
  auto cutoff = [&](const TangentVector& v, double vnorm) {
    double target = vnorm + k_p * box.iqr;
    if (target >= kPi - kEpsTheta) {
      target = kPi - kEpsTheta;
      box.cutoff_clamped = true;
    }
    for (;;) {
      try {
        Srt psi = exp_map(dec.phase_median_srt, v.scaled(target / vnorm));
        Warping w = srt_inverse(psi);
        return std::make_pair(std::move(psi), std::move(w));
      } catch (const std::exception&) {
        box.cutoff_clamped = true;
        target = vnorm + 0.5 * (target - vnorm);
        if (target <= vnorm * (1.0 + 1e-12)) throw;
      }
    }
  };
  auto [psi_w1, warp_w1] = cutoff(v1, n1);
  auto [psi_w3, warp_w3] = cutoff(v3, n3);
  box.w1 = std::move(warp_w1);
  box.w3 = std::move(warp_w3);

  const double r1 = sphere_distance(dec.phase_median_srt, psi_w1);
  const double r3 = sphere_distance(dec.phase_median_srt, psi_w3);
  const double fence = opts.rule == OutlierRule::kMax ? std::max(r1, r3) : std::min(r1, r3);

  for (std::size_t i = 0; i < n; ++i) {
    if (dec.phase_distances[i] > fence) box.outlier_indices.push_back(i);
  }

  std::vector<bool> excluded(n, false);
  for (std::size_t idx : box.central_indices) excluded[idx] = true;
  for (std::size_t idx : box.outlier_indices) excluded[idx] = true;
  double best1 = std::numeric_limits<double>::infinity();
  double best3 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    if (excluded[i]) continue;
    const double to1 = sphere_distance(psis[i], psi_w1);
    const double to3 = sphere_distance(psis[i], psi_w3);
    if (to1 < best1) {
      best1 = to1;
      box.extreme1_index = i;
    }
    if (to3 < best3) {
      best3 = to3;
      box.extreme3_index = i;
    }
  }
  return box;
}

struct TranslationBoxplot {
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double lower_whisker = 0.0;
  double upper_whisker = 0.0;
  std::vector<std::size_t> outlier_indices;
  double k = 1.5;
};

// Standard Tukey boxplot with type-7 quartiles and whiskers anchored at the
// furthest data points within k * IQR of the quartiles.
inline TranslationBoxplot translation_boxplot(const std::vector<double>& cs, double k = 1.5) {
  if (cs.size() < 4) throw std::invalid_argument("translation_boxplot: need at least 4 values");
  TranslationBoxplot box;
  box.k = k;
  box.median = quantile_type7(cs, 0.5);
  box.q1 = quantile_type7(cs, 0.25);
  box.q3 = quantile_type7(cs, 0.75);
  const double iqr = box.q3 - box.q1;
  const double lo_fence = box.q1 - k * iqr;
  const double hi_fence = box.q3 + k * iqr;
  box.lower_whisker = box.q3;
  box.upper_whisker = box.q1;
  bool any_lower = false;
  bool any_upper = false;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (cs[i] < lo_fence || cs[i] > hi_fence) {
      box.outlier_indices.push_back(i);
      continue;
    }
    if (!any_lower || cs[i] < box.lower_whisker) {
      box.lower_whisker = cs[i];
      any_lower = true;
    }
    if (!any_upper || cs[i] > box.upper_whisker) {
      box.upper_whisker = cs[i];
      any_upper = true;
    }
  }
  return box;
}

enum class SurfaceMode { kAmplitude, kPhase };

struct SurfaceCurve {
  std::string name;
  double offset = 0.0;
  std::vector<double> values;
};

struct SurfaceDisplay {
  SurfaceMode mode = SurfaceMode::kAmplitude;
  std::vector<SurfaceCurve> curves;  // ordered from the W1 side to the W3 side
};

// Surface-display data for the amplitude boxplot: the five boxplot functions
// separated by the cumulative SRSF distances between adjacent curves.
inline SurfaceDisplay surface_display(const AmplitudeBoxplot& box, const Decomposition& dec) {
  if (box.degenerate) throw std::invalid_argument("surface_display: degenerate boxplot");
  const auto& ts = dec.grid.points();
  SurfaceDisplay surface;
  surface.mode = SurfaceMode::kAmplitude;

  const auto srsf_of = [&](std::size_t idx) { return dec.amplitude_srsfs[idx].values(); };
  const double dq1 = distance_l2(ts, srsf_of(box.q1_index), dec.amp_median_srsf.values());
  const double dq3 = distance_l2(ts, srsf_of(box.q3_index), dec.amp_median_srsf.values());

  if (box.extreme1_index) {
    const double de1 = distance_l2(ts, srsf_of(*box.extreme1_index), srsf_of(box.q1_index));
    surface.curves.push_back(
        {"extreme1", -(dq1 + de1), dec.amplitudes[*box.extreme1_index].values()});
  }
  surface.curves.push_back({"q1", -dq1, dec.amplitudes[box.q1_index].values()});
  surface.curves.push_back({"median", 0.0, dec.amp_median.values()});
  surface.curves.push_back({"q3", dq3, dec.amplitudes[box.q3_index].values()});
  if (box.extreme3_index) {
    const double de3 = distance_l2(ts, srsf_of(*box.extreme3_index), srsf_of(box.q3_index));
    surface.curves.push_back(
        {"extreme3", dq3 + de3, dec.amplitudes[*box.extreme3_index].values()});
  }
  return surface;
}

// Surface-display data for the phase boxplot: deviation functions
// h = gamma_id - gamma separated by cumulative phase distances.
inline SurfaceDisplay surface_display(const PhaseBoxplot& box, const Decomposition& dec) {
  if (box.degenerate) throw std::invalid_argument("surface_display: degenerate boxplot");
  SurfaceDisplay surface;
  surface.mode = SurfaceMode::kPhase;

  const auto deviation = [&](const Warping& g) {
    std::vector<double> h(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) h[i] = dec.grid[i] - g.values()[i];
    return h;
  };

  const double dq1 = phase_distance(box.median, box.q1);
  const double dq3 = phase_distance(box.median, box.q3);

  if (box.extreme1_index) {
    const double de1 = phase_distance(dec.phases[*box.extreme1_index], box.q1);
    surface.curves.push_back(
        {"extreme1", -(dq1 + de1), deviation(dec.phases[*box.extreme1_index])});
  }
  surface.curves.push_back({"q1", -dq1, deviation(box.q1)});
  surface.curves.push_back({"median", 0.0, deviation(box.median)});
  surface.curves.push_back({"q3", dq3, deviation(box.q3)});
  if (box.extreme3_index) {
    const double de3 = phase_distance(dec.phases[*box.extreme3_index], box.q3);
    surface.curves.push_back(
        {"extreme3", dq3 + de3, deviation(dec.phases[*box.extreme3_index])});
  }
  return surface;
}

enum class Severity { kNone, kMild, kRegular, kSevere };

inline const char* severity_name(Severity s) {
  switch (s) {
    case Severity::kMild: return "mild";
    case Severity::kRegular: return "regular";
    case Severity::kSevere: return "severe";
    default: return "none";
  }
}

// Scale boundaries for amplitude outliers: mild [0.6, 0.8), regular
// [0.8, 1.3), severe [1.3, inf).
inline Severity classify_amplitude_scale(double k) {
  if (k >= 1.3) return Severity::kSevere;
  if (k >= 0.8) return Severity::kRegular;
  if (k >= 0.6) return Severity::kMild;
  return Severity::kNone;
}

// Scale boundaries for phase outliers: mild [0.5, 0.7), regular [0.7, 0.9),
// severe [0.9, inf).
inline Severity classify_phase_scale(double k) {
  if (k >= 0.9) return Severity::kSevere;
  if (k >= 0.7) return Severity::kRegular;
  if (k >= 0.5) return Severity::kMild;
  return Severity::kNone;
}

struct SeverityEntry {
  std::size_t index = 0;
  double amplitude_distance = 0.0;
  double phase_distance = 0.0;
  Severity amplitude = Severity::kNone;
  Severity phase = Severity::kNone;
  bool translation_outlier = false;
};

struct SeverityReport {
  std::vector<double> k_a_grid;
  std::vector<double> k_p_grid;
  std::vector<SeverityEntry> entries;                   // one per sample
  std::vector<std::vector<std::size_t>> amp_flags_per_k;   // aligned with k_a_grid
  std::vector<std::vector<std::size_t>> phase_flags_per_k; // aligned with k_p_grid
};

// A sample's severity is determined by the largest scale value at which it is
// still flagged.
inline SeverityReport outlier_scan(const Decomposition& dec, std::vector<double> k_a_grid,
                                   std::vector<double> k_p_grid,
                                   const BoxplotOptions& opts = {}) {
  std::sort(k_a_grid.begin(), k_a_grid.end());
  std::sort(k_p_grid.begin(), k_p_grid.end());
  const std::size_t n = dec.size();

  SeverityReport report;
  report.k_a_grid = k_a_grid;
  report.k_p_grid = k_p_grid;
  report.entries.resize(n);

  std::vector<double> amp_max_k(n, -1.0);
  std::vector<double> phase_max_k(n, -1.0);
  for (double k : k_a_grid) {
    const auto box = amplitude_boxplot(dec, k, opts);
    report.amp_flags_per_k.push_back(box.outlier_indices);
    for (std::size_t idx : box.outlier_indices) amp_max_k[idx] = std::max(amp_max_k[idx], k);
  }
  for (double k : k_p_grid) {
    const auto box = phase_boxplot(dec, k, opts);
    report.phase_flags_per_k.push_back(box.outlier_indices);
    for (std::size_t idx : box.outlier_indices) phase_max_k[idx] = std::max(phase_max_k[idx], k);
  }

  const auto translation = translation_boxplot(dec.translations);
  std::vector<bool> is_translation_outlier(n, false);
  for (std::size_t idx : translation.outlier_indices) is_translation_outlier[idx] = true;

  for (std::size_t i = 0; i < n; ++i) {
    auto& entry = report.entries[i];
    entry.index = i;
    entry.amplitude_distance = dec.amp_distances[i];
    entry.phase_distance = dec.phase_distances[i];
    entry.amplitude = amp_max_k[i] < 0.0 ? Severity::kNone : classify_amplitude_scale(amp_max_k[i]);
    entry.phase = phase_max_k[i] < 0.0 ? Severity::kNone : classify_phase_scale(phase_max_k[i]);
    entry.translation_outlier = is_translation_outlier[i];
  }
  return report;
}

}  // namespace elastic
