#pragma once

// Geometric medians for the amplitude (function space, with alignment inside
// the iteration and orbit centering) and phase (unit sphere) components, and
// the full translation/amplitude/phase decomposition of a dataset.

#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "elastic/alignment.hpp"
#include "elastic/function_core.hpp"
#include "elastic/parallel.hpp"
#include "elastic/types.hpp"

namespace elastic {

struct MedianOptions {
  double tol = 1e-6;          // relative objective decrease
  int max_outer = 50;         // alignment iterations (amplitude)
  int max_sphere = 200;       // sphere iterations (phase, Karcher mean)
  double eps_distance = 1e-8; // Weiszfeld singularity guard
  int patience = 2;           // non-improving alignment iterations tolerated
  AlignOptions align;
};

// Karcher (Frechet) mean of warpings on the sphere of square-root transforms,
// by iterated tangent-space averaging.
struct KarcherMeanResult {
  Warping mean;
  Srt mean_srt;
  bool converged = true;
  int iterations = 0;
};

inline KarcherMeanResult warping_karcher_mean(const std::vector<Warping>& gammas,
                                              const MedianOptions& opts = {}) {
  if (gammas.empty()) throw std::invalid_argument("warping_karcher_mean: empty input");
  const Grid& grid = gammas.front().grid();
  std::vector<Srt> psis;
  psis.reserve(gammas.size());
  for (const auto& g : gammas) {
    require_same_grid(grid, g.grid(), "warping_karcher_mean");
    psis.push_back(srt(g));
  }
  // Start at the normalized extrinsic mean; all points lie on the positive
  // orthant so this is well defined.
  std::vector<double> acc(grid.size(), 0.0);
  for (const auto& p : psis) {
    for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += p.values()[k];
  }
  Srt mean(grid, std::move(acc));

  bool converged = false;
  int iter = 0;
  for (; iter < opts.max_sphere; ++iter) {
    std::vector<double> tangent(grid.size(), 0.0);
    for (const auto& p : psis) {
      const TangentVector v = inv_exp_map(mean, p);
      for (std::size_t k = 0; k < tangent.size(); ++k) tangent[k] += v.values()[k];
    }
    for (double& v : tangent) v /= static_cast<double>(psis.size());
    const double step = norm_l2(grid.points(), tangent);
    if (step < opts.tol) {
      converged = true;
      break;
    }
    mean = exp_map(mean, TangentVector::projected(mean, std::move(tangent)));
  }
  return KarcherMeanResult{srt_inverse(mean), mean, converged, iter};
}

struct OrbitCenterResult {
  Srsf centered;                // template re-warped so the mean warp is identity
  std::vector<Warping> warps;   // gamma_i composed with the inverse Karcher mean
  Warping karcher_mean;
  bool converged = true;
};

// Re-parameterizes the template so that the Karcher mean of the alignment
// warps becomes the identity. The warps are right-composed with the inverse
// mean; the template is acted on by the same inverse mean so the pair stays
// consistent: (q_i, gamma_i o mean^{-1}) still lands on the new template.
inline OrbitCenterResult orbit_center(const Srsf& q_bar, const std::vector<Warping>& gammas,
                                      const MedianOptions& opts = {}) {
  const KarcherMeanResult km = warping_karcher_mean(gammas, opts);
  const Warping mean_inv = warp_invert(km.mean);
  std::vector<Warping> centered_warps;
  centered_warps.reserve(gammas.size());
  for (const auto& g : gammas) centered_warps.push_back(warp_compose(g, mean_inv));
  Srsf centered = group_action(q_bar, mean_inv);
  return OrbitCenterResult{std::move(centered), std::move(centered_warps), km.mean,
                           km.converged};
}

struct AmplitudeMedianResult {
  SampledFunction representative;  // zero-mean-height element of the median orbit
  Srsf median_srsf;                // orbit-centered template
  std::vector<Warping> warps;      // per-sample warps onto the centered template
  double objective = 0.0;          // sum of amplitude distances at the best iterate
  bool converged = true;
  int iterations = 0;
};

namespace detail {

// Pairwise-distance medoid: the sample whose total distance to the others is
// minimal. Ties resolve to the smallest index.
inline std::size_t medoid_index(std::size_t n, const std::vector<double>& pairwise) {
  std::vector<double> totals(n, 0.0);
  std::size_t p = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++p) {
      totals[i] += pairwise[p];
      totals[j] += pairwise[p];
    }
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (totals[i] < totals[best]) best = i;
  }
  return best;
}

}  // namespace detail

// Geometric median of the amplitude components: Weiszfeld iteration on the
// aligned square-root slope functions with alignment refreshed every step,
// starting from the in-sample medoid. The iterate with the lowest measured
// objective wins; a couple of non-improving steps are tolerated because the
// re-alignment adds lattice noise on top of the monotone Weiszfeld descent.
// Orbit centering is applied to the winning template.
inline AmplitudeMedianResult amplitude_median(const std::vector<SampledFunction>& fs,
                                              const MedianOptions& opts = {}) {
  const std::size_t n = fs.size();
  if (n < 3) throw std::invalid_argument("amplitude_median: need at least 3 functions");
  const Grid& grid = fs.front().grid();
  std::vector<Srsf> qs;
  qs.reserve(n);
  for (const auto& f : fs) {
    require_same_grid(grid, f.grid(), "amplitude_median");
    qs.push_back(srsf(f));
  }

  // Medoid initialization from pairwise amplitude distances.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  std::vector<double> pairwise(pairs.size(), 0.0);
  parallel_for(pairs.size(), [&](std::size_t p) {
    pairwise[p] = align(qs[pairs[p].first], qs[pairs[p].second], opts.align).distance;
  });

  auto align_all = [&](const Srsf& target) {
    std::vector<AlignmentResult> res(n, AlignmentResult{Warping::identity(grid), qs[0], 0.0});
    parallel_for(n, [&](std::size_t i) { res[i] = align(target, qs[i], opts.align); });
    return res;
  };
  auto objective_of = [](const std::vector<AlignmentResult>& alignments) {
    double acc = 0.0;
    for (const auto& r : alignments) acc += r.distance;
    return acc;
  };

  Srsf best_median = qs[detail::medoid_index(n, pairwise)];
  std::vector<AlignmentResult> best_alignments = align_all(best_median);
  double best_objective = objective_of(best_alignments);

  Srsf median = best_median;
  std::vector<AlignmentResult> current = best_alignments;
  double objective = best_objective;

  bool converged = false;
  int iter = 0;
  int no_improvement = 0;
  for (; iter < opts.max_outer; ++iter) {
    // Weiszfeld update in the linear space of aligned SRSFs.
    std::vector<double> updated(grid.size(), 0.0);
    double weight_sum = 0.0;
    for (const auto& r : current) {
      if (r.distance < opts.eps_distance) continue;
      const double w = 1.0 / r.distance;
      weight_sum += w;
      for (std::size_t k = 0; k < updated.size(); ++k) {
        updated[k] += w * r.aligned.values()[k];
      }
    }
    if (weight_sum == 0.0) {
      converged = true;  // every sample sits at the template
      break;
    }
    for (double& v : updated) v /= weight_sum;

    median = Srsf(grid, std::move(updated));
    current = align_all(median);
    objective = objective_of(current);

    if (objective < best_objective - opts.tol * std::max(best_objective, 1e-12)) {
      best_objective = objective;
      best_median = median;
      best_alignments = current;
      no_improvement = 0;
    } else {
      ++no_improvement;
      if (no_improvement >= opts.patience) {
        converged = true;
        ++iter;
        break;
      }
    }
  }

  // Orbit centering on the winning template. The centered per-sample
  // alignments follow by composition (the group action is an isometry), so no
  // further lattice searches are needed.
  std::vector<Warping> gammas;
  gammas.reserve(n);
  for (const auto& r : best_alignments) gammas.push_back(r.gamma);
  OrbitCenterResult centered = orbit_center(best_median, gammas, opts);

  SampledFunction rep = srsf_inverse(centered.centered, 0.0);
  rep = rep.shifted(-mean_height(rep));
  return AmplitudeMedianResult{std::move(rep),
                               std::move(centered.centered),
                               std::move(centered.warps),
                               best_objective,
                               converged && centered.converged,
                               iter};
}

struct PhaseMedianResult {
  Warping median;
  Srt median_srt;
  double objective = 0.0;
  bool converged = true;
  int iterations = 0;
};

// Geometric median of warpings: Weiszfeld iteration on the sphere via the
// exponential and inverse-exponential maps, starting from the in-sample
// medoid under the phase distance.
inline PhaseMedianResult phase_median(const std::vector<Warping>& gammas,
                                      const MedianOptions& opts = {}) {
  const std::size_t n = gammas.size();
  if (n < 3) throw std::invalid_argument("phase_median: need at least 3 warpings");
  const Grid& grid = gammas.front().grid();
  std::vector<Srt> psis;
  psis.reserve(n);
  for (const auto& g : gammas) {
    require_same_grid(grid, g.grid(), "phase_median");
    psis.push_back(srt(g));
  }

  std::vector<double> pairwise;
  pairwise.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairwise.push_back(sphere_distance(psis[i], psis[j]));
  }
  Srt median = psis[detail::medoid_index(n, pairwise)];

  auto objective_at = [&](const Srt& m) {
    double acc = 0.0;
    for (const auto& p : psis) acc += sphere_distance(m, p);
    return acc;
  };
  double objective = objective_at(median);

  bool converged = false;
  int iter = 0;
  for (; iter < opts.max_sphere; ++iter) {
    std::vector<double> update(grid.size(), 0.0);
    double weight_sum = 0.0;
    for (const auto& p : psis) {
      const TangentVector v = inv_exp_map(median, p);
      const double d = v.norm();
      if (d < opts.eps_distance) continue;
      const double w = 1.0 / d;
      weight_sum += w;
      for (std::size_t k = 0; k < update.size(); ++k) update[k] += w * v.values()[k];
    }
    if (weight_sum == 0.0) {
      converged = true;
      break;
    }
    for (double& v : update) v /= weight_sum;
    const Srt candidate = exp_map(median, TangentVector::projected(median, std::move(update)));
    const double candidate_objective = objective_at(candidate);
    if (candidate_objective > objective) {
      converged = true;  // sphere distances are exact, so a rise means done
      break;
    }
    const double decrease = objective - candidate_objective;
    median = candidate;
    objective = candidate_objective;
    if (decrease <= opts.tol * std::max(objective, 1e-12)) {
      converged = true;
      ++iter;
      break;
    }
  }

  return PhaseMedianResult{srt_inverse(median), median, objective, converged, iter};
}

// Full three-way separation of a dataset into translation, amplitude, and
// phase components.
struct Decomposition {
  Grid grid;
  std::vector<double> translations;          // mean heights of the originals
  std::vector<SampledFunction> amplitudes;   // aligned, translation-removed
  std::vector<Srsf> amplitude_srsfs;         // aligned SRSFs
  std::vector<Warping> phases;               // optimal warps onto the median
  SampledFunction amp_median;
  Srsf amp_median_srsf;
  std::vector<double> amp_distances;         // ||q_i~ - q_bar||
  Warping phase_median;
  Srt phase_median_srt;
  std::vector<double> phase_distances;       // arccos<psi_i, psi_bar>
  bool amp_median_converged = true;
  bool phase_median_converged = true;

  std::size_t size() const { return translations.size(); }
};

inline Decomposition decompose(const std::vector<SampledFunction>& fs,
                               const MedianOptions& opts = {}) {
  const std::size_t n = fs.size();
  if (n < 3) throw std::invalid_argument("decompose: need at least 3 functions");
  const Grid& grid = fs.front().grid();

  std::vector<double> translations(n);
  std::vector<SampledFunction> detranslated;
  detranslated.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    require_same_grid(grid, fs[i].grid(), "decompose");
    translations[i] = mean_height(fs[i]);
    detranslated.push_back(fs[i].shifted(-translations[i]));
  }

  AmplitudeMedianResult amp = amplitude_median(detranslated, opts);

  std::vector<SampledFunction> amplitudes;
  std::vector<Srsf> amplitude_srsfs;
  std::vector<double> amp_distances(n);
  amplitudes.reserve(n);
  amplitude_srsfs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    amplitudes.push_back(warp_apply(detranslated[i], amp.warps[i]));
    amplitude_srsfs.push_back(group_action(srsf(detranslated[i]), amp.warps[i]));
    amp_distances[i] = distance_l2(grid.points(), amplitude_srsfs[i].values(),
                                   amp.median_srsf.values());
  }

  PhaseMedianResult ph = phase_median(amp.warps, opts);
  std::vector<double> phase_distances(n);
  for (std::size_t i = 0; i < n; ++i) {
    phase_distances[i] = sphere_distance(ph.median_srt, srt(amp.warps[i]));
  }

  return Decomposition{grid,
                       std::move(translations),
                       std::move(amplitudes),
                       std::move(amplitude_srsfs),
                       std::move(amp.warps),
                       std::move(amp.representative),
                       std::move(amp.median_srsf),
                       std::move(amp_distances),
                       std::move(ph.median),
                       std::move(ph.median_srt),
                       std::move(phase_distances),
                       amp.converged,
                       ph.converged};
}

}  // namespace elastic
