#pragma once

// Generators for the four benchmark simulations, a seeded replicate runner,
// and detection-rate estimation (true / false positive percentages).

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "elastic/boxplots.hpp"
#include "elastic/medians.hpp"
#include "elastic/parallel.hpp"
#include "elastic/types.hpp"

namespace elastic {

struct SimulationConfig {
  int sim_id = 1;                  // 1..4
  std::size_t n_functions = 100;
  std::size_t n_replicates = 100;
  std::size_t grid_size = 101;
  std::uint64_t seed = 0;
  double k_a = 1.3;
  double k_p = 0.9;
  double lambda = 0.5;
};

// Counter-style PRNG with one independent stream per (seed, sim, replicate,
// function). The stream state is derived by chaining splitmix64 finalizers
// over the identifiers, so streams never share output sequences and any
// replicate can be generated in isolation.
class StreamRng {
 public:
  StreamRng(std::uint64_t seed, std::uint64_t sim, std::uint64_t replicate,
            std::uint64_t function) {
    state_ = mix(seed);
    state_ = mix(state_ + kGolden * (sim + 1));
    state_ = mix(state_ + kGolden * (replicate + 1));
    state_ = mix(state_ + kGolden * (function + 1));
  }

  std::uint64_t next() {
    state_ += kGolden;
    return mix(state_);
  }

  double uniform() {  // [0, 1)
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t state_ = 0;
};

struct LabeledDataset {
  std::vector<SampledFunction> functions;
  std::vector<std::size_t> amplitude_truth;  // sorted
  std::vector<std::size_t> phase_truth;      // sorted
};

namespace detail {

constexpr double kTwoPi = 6.28318530717958647692;

// gamma_alpha(t) = t + alpha t (t - 1)
inline double warp_poly(double alpha, double t) { return t + alpha * t * (t - 1.0); }

// c1 sin(2 pi u) + c2 cos(2 pi u)
inline double sinusoid(double c1, double c2, double u) {
  return c1 * std::sin(kTwoPi * u) + c2 * std::cos(kTwoPi * u);
}

}  // namespace detail

// Deterministic dataset generation. Per-function draw order (one RNG stream
// per function):
//   sim 1: contamination u, coefficient 1, coefficient 2
//   sim 2: contamination u, coefficient 1, coefficient 2, warp alpha
//   sim 3: contamination u, warp alpha          (template coefficients come
//          from the stream with function index n_functions)
//   sim 4: coefficient 1, coefficient 2, warp alpha
inline LabeledDataset generate(const SimulationConfig& config, std::size_t replicate_index) {
  if (config.sim_id < 1 || config.sim_id > 4) {
    throw std::invalid_argument("generate: sim_id must be 1..4");
  }
  const Grid grid = Grid::uniform(config.grid_size);
  const auto& ts = grid.points();
  const std::size_t n = config.n_functions;
  const auto sim = static_cast<std::uint64_t>(config.sim_id);

  LabeledDataset dataset;
  dataset.functions.reserve(n);

  double tb1 = 0.0;
  double tb2 = 0.0;
  if (config.sim_id == 3) {
    StreamRng rng(config.seed, sim, replicate_index, n);
    tb1 = rng.uniform(0.1, 0.15);
    tb2 = rng.uniform(0.1, 0.15);
  }

  for (std::size_t i = 0; i < n; ++i) {
    StreamRng rng(config.seed, sim, replicate_index, i);
    std::vector<double> values(ts.size());
    switch (config.sim_id) {
      case 1: {
        const bool contaminated = rng.uniform() < 0.1;
        const auto lo = contaminated ? 0.1 : 0.0;
        const auto hi = contaminated ? 0.15 : 0.05;
        const double c1 = rng.uniform(lo, hi);
        const double c2 = rng.uniform(lo, hi);
        for (std::size_t k = 0; k < ts.size(); ++k) values[k] = detail::sinusoid(c1, c2, ts[k]);
        if (contaminated) dataset.amplitude_truth.push_back(i);
        break;
      }
      case 2: {
        const bool contaminated = rng.uniform() < 0.1;
        const auto lo = contaminated ? 0.1 : 0.0;
        const auto hi = contaminated ? 0.15 : 0.05;
        const double c1 = rng.uniform(lo, hi);
        const double c2 = rng.uniform(lo, hi);
        const double alpha = rng.uniform(-1.0, 1.0);
        for (std::size_t k = 0; k < ts.size(); ++k) {
          values[k] = detail::sinusoid(c1, c2, detail::warp_poly(alpha, ts[k]));
        }
        if (contaminated) dataset.amplitude_truth.push_back(i);
        break;
      }
      case 3: {
        const bool contaminated = rng.uniform() < 0.1;
        const double alpha = contaminated ? rng.uniform(0.9, 1.0) : rng.uniform(-0.6, 0.6);
        for (std::size_t k = 0; k < ts.size(); ++k) {
          values[k] = detail::sinusoid(tb1, tb2, detail::warp_poly(alpha, ts[k]));
        }
        if (contaminated) dataset.phase_truth.push_back(i);
        break;
      }
      default: {  // sim 4: no outliers of either kind
        const double c1 = rng.uniform(0.1, 0.11);
        const double c2 = rng.uniform(0.1, 0.11);
        const double alpha = rng.uniform(-1.0, 1.0);
        for (std::size_t k = 0; k < ts.size(); ++k) {
          values[k] = detail::sinusoid(c1, c2, detail::warp_poly(alpha, ts[k]));
        }
        break;
      }
    }
    dataset.functions.emplace_back(grid, std::move(values));
  }
  return dataset;
}

struct DetectionRates {
  std::optional<double> p_c;  // absent when the truth set is empty
  double p_f = 0.0;
};

struct EvaluatedFlags {
  DetectionRates amplitude;
  DetectionRates phase;
};

namespace detail {

inline DetectionRates rates_for(const std::vector<std::size_t>& truth,
                                const std::vector<std::size_t>& flagged, std::size_t n) {
  DetectionRates rates;
  std::size_t hits = 0;
  std::size_t false_hits = 0;
  for (std::size_t f : flagged) {
    if (std::binary_search(truth.begin(), truth.end(), f)) {
      ++hits;
    } else {
      ++false_hits;
    }
  }
  if (!truth.empty()) {
    rates.p_c = 100.0 * static_cast<double>(hits) / static_cast<double>(truth.size());
  }
  const std::size_t negatives = n - truth.size();
  rates.p_f = negatives == 0
                  ? 0.0
                  : 100.0 * static_cast<double>(false_hits) / static_cast<double>(negatives);
  return rates;
}

}  // namespace detail

inline EvaluatedFlags evaluate(const LabeledDataset& dataset,
                               const std::vector<std::size_t>& flagged_amplitude,
                               const std::vector<std::size_t>& flagged_phase) {
  const std::size_t n = dataset.functions.size();
  return EvaluatedFlags{
      detail::rates_for(dataset.amplitude_truth, flagged_amplitude, n),
      detail::rates_for(dataset.phase_truth, flagged_phase, n)};
}

struct DetectionSummary {
  double k = 0.0;
  std::optional<double> p_c_mean;
  std::optional<double> p_c_sd;
  double p_f_mean = 0.0;
  double p_f_sd = 0.0;
};

struct SimulationReport {
  SimulationConfig config;
  std::vector<double> k_a_grid;
  std::vector<double> k_p_grid;
  std::vector<DetectionSummary> amplitude;  // one entry per k_a
  std::vector<DetectionSummary> phase;      // one entry per k_p
  std::size_t replicates_used = 0;
  std::size_t replicates_failed = 0;
  std::string first_failure;
};

// Runs the full pipeline (generate -> decompose -> boxplot flags -> rates)
// over every replicate, reusing one decomposition per replicate across all k
// values. Failed replicates are excluded and counted.
inline SimulationReport run_table(const SimulationConfig& config, std::vector<double> k_a_grid,
                                  std::vector<double> k_p_grid,
                                  bool parallel_replicates = false) {
  SimulationReport report;
  report.config = config;
  report.k_a_grid = k_a_grid;
  report.k_p_grid = k_p_grid;

  const std::size_t R = config.n_replicates;
  struct ReplicateRow {
    bool ok = false;
    std::string error;
    std::vector<std::optional<double>> amp_pc, phase_pc;
    std::vector<double> amp_pf, phase_pf;
  };
  std::vector<ReplicateRow> rows(R);

  MedianOptions median_opts;
  BoxplotOptions box_opts;
  box_opts.lambda = config.lambda;

  auto run_replicate = [&](std::size_t r) {
    ReplicateRow& row = rows[r];
    try {
      const LabeledDataset dataset = generate(config, r);
      const Decomposition dec = decompose(dataset.functions, median_opts);
      for (double ka : k_a_grid) {
        const auto box = amplitude_boxplot(dec, ka, box_opts);
        const auto ev = evaluate(dataset, box.outlier_indices, {});
        row.amp_pc.push_back(ev.amplitude.p_c);
        row.amp_pf.push_back(ev.amplitude.p_f);
      }
      for (double kp : k_p_grid) {
        const auto box = phase_boxplot(dec, kp, box_opts);
        const auto ev = evaluate(dataset, {}, box.outlier_indices);
        row.phase_pc.push_back(ev.phase.p_c);
        row.phase_pf.push_back(ev.phase.p_f);
      }
      row.ok = true;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  };

  if (parallel_replicates) {
    parallel_for(R, run_replicate);
  } else {
    for (std::size_t r = 0; r < R; ++r) run_replicate(r);
  }

  for (const auto& row : rows) {
    if (row.ok) {
      ++report.replicates_used;
    } else {
      ++report.replicates_failed;
      if (report.first_failure.empty()) report.first_failure = row.error;
    }
  }

  auto summarize = [&](std::size_t k_index, bool is_amp, double k) {
    DetectionSummary summary;
    summary.k = k;
    std::vector<double> pcs, pfs;
    for (const auto& row : rows) {
      if (!row.ok) continue;
      const auto& pc = is_amp ? row.amp_pc[k_index] : row.phase_pc[k_index];
      if (pc) pcs.push_back(*pc);
      pfs.push_back(is_amp ? row.amp_pf[k_index] : row.phase_pf[k_index]);
    }
    if (!pcs.empty()) {
      summary.p_c_mean = mean(pcs);
      summary.p_c_sd = sample_sd(pcs);
    }
    if (!pfs.empty()) {
      summary.p_f_mean = mean(pfs);
      summary.p_f_sd = sample_sd(pfs);
    }
    return summary;
  };

  for (std::size_t k = 0; k < k_a_grid.size(); ++k) {
    report.amplitude.push_back(summarize(k, true, k_a_grid[k]));
  }
  for (std::size_t k = 0; k < k_p_grid.size(); ++k) {
    report.phase.push_back(summarize(k, false, k_p_grid[k]));
  }
  return report;
}

// Aligned-text rendering of the detection-rate table.
inline std::string to_text_table(const SimulationReport& report) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  const std::size_t used = report.replicates_used;
  auto emit = [&](const char* k_name, const std::vector<DetectionSummary>& rows) {
    if (rows.empty()) return;
    out << k_name;
    for (const auto& row : rows) {
      out.precision(2);
      out << '\t' << row.k;
    }
    out << '\n';
    out << "p_c";
    for (const auto& row : rows) {
      out.precision(2);
      if (row.p_c_mean) {
        out << '\t' << *row.p_c_mean << " (" << *row.p_c_sd << ")";
      } else {
        out << '\t' << "-";
      }
    }
    out << '\n';
    out << "p_f";
    for (const auto& row : rows) {
      out.precision(2);
      if (used == 0) {
        out << '\t' << "-";
      } else {
        out << '\t' << row.p_f_mean << " (" << row.p_f_sd << ")";
      }
    }
    out << '\n';
  };
  out << "simulation " << report.config.sim_id << ", replicates used "
      << report.replicates_used << " / " << report.config.n_replicates << "\n";
  if (!report.amplitude.empty()) {
    out << "[amplitude]\n";
    emit("k_a", report.amplitude);
  }
  if (!report.phase.empty()) {
    out << "[phase]\n";
    emit("k_p", report.phase);
  }
  if (report.replicates_failed > 0) {
    out << "failed replicates: " << report.replicates_failed;
    if (!report.first_failure.empty()) out << " (first: " << report.first_failure << ")";
    out << '\n';
  }
  return out.str();
}

// Default sweep grids matching the reported tables.
inline std::vector<double> default_k_a_grid(int sim_id) {
  if (sim_id == 4) return {0.6, 0.7, 0.8, 0.9, 1.0};
  if (sim_id == 3) return {};
  return {0.6, 0.8, 1.0, 1.2, 1.3, 1.5, 1.7};
}

inline std::vector<double> default_k_p_grid(int sim_id) {
  if (sim_id == 3) return {0.5, 0.6, 0.7, 0.8, 0.9};
  if (sim_id == 4) return {0.6, 0.7, 0.8, 0.9, 1.0};
  return {};
}

}  // namespace elastic
