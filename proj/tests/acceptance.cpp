// Acceptance suite: one pass/fail line per criterion, hard thresholds pinned
// in code. Run all criteria by default or a single one with --criterion N.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "elastic/elastic.hpp"

using namespace elastic;

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

struct CriterionResult {
  bool passed = true;
  std::string details;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      if (!details.empty()) details += "; ";
      details += "FAILED " + what;
    }
  }

  void note(const std::string& what) {
    if (!details.empty()) details += "; ";
    details += what;
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

SampledFunction random_smooth(const Grid& grid, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  const double a1 = coef(rng);
  const double a2 = coef(rng);
  const double a3 = 0.5 * coef(rng);
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid[i];
    v[i] = a1 * std::sin(kTwoPi * t) + a2 * std::cos(kTwoPi * t) + a3 * std::sin(2.0 * kTwoPi * t);
  }
  return SampledFunction(grid, std::move(v));
}

Warping poly_warp(const Grid& grid, double alpha) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid[i];
    v[i] = t + alpha * t * (t - 1.0);
  }
  v.front() = 0.0;
  v.back() = 1.0;
  return Warping(grid, std::move(v));
}

Warping random_warp(const Grid& grid, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coef(-0.7, 0.7);
  return warp_compose(poly_warp(grid, coef(rng)), poly_warp(grid, coef(rng)));
}

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

const DetectionSummary* row_for(const std::vector<DetectionSummary>& rows, double k) {
  for (const auto& row : rows) {
    if (std::abs(row.k - k) < 1e-12) return &row;
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// Criteria 1-4: simulation detection-rate tables.

CriterionResult criterion_1() {
  CriterionResult result;
  const auto start = std::chrono::steady_clock::now();
  SimulationConfig cfg;
  cfg.sim_id = 1;
  cfg.seed = 42;
  const auto table = run_table(cfg, {0.6, 1.3, 1.7}, {});
  result.require(table.replicates_failed == 0, "replicates failed");

  const auto* k13 = row_for(table.amplitude, 1.3);
  const auto* k06 = row_for(table.amplitude, 0.6);
  const auto* k17 = row_for(table.amplitude, 1.7);
  result.require(k13 && k13->p_c_mean && *k13->p_c_mean >= 99.0, "p_c at k_a=1.3 >= 99.0");
  result.require(k13 && k13->p_f_mean <= 0.5, "p_f at k_a=1.3 <= 0.5");
  result.require(k06 && k06->p_f_mean >= 2.0 && k06->p_f_mean <= 5.5,
                 "p_f at k_a=0.6 in [2.0, 5.5]");
  result.require(k17 && k17->p_c_mean && *k17->p_c_mean >= 80.0 && *k17->p_c_mean <= 98.0,
                 "p_c at k_a=1.7 in [80, 98]");
  if (k13 && k06 && k17 && k13->p_c_mean && k17->p_c_mean) {
    result.note("k13 p_c=" + fmt(*k13->p_c_mean) + " p_f=" + fmt(k13->p_f_mean) +
                ", k06 p_f=" + fmt(k06->p_f_mean) + ", k17 p_c=" + fmt(*k17->p_c_mean) +
                ", " + fmt(seconds_since(start)) + "s");
  }
  return result;
}

CriterionResult criterion_2() {
  CriterionResult result;
  const auto start = std::chrono::steady_clock::now();
  SimulationConfig cfg;
  cfg.sim_id = 2;
  cfg.seed = 42;
  const auto table = run_table(cfg, {1.3}, {});
  result.require(table.replicates_failed == 0, "replicates failed");
  const auto* k13 = row_for(table.amplitude, 1.3);
  result.require(k13 && k13->p_c_mean && *k13->p_c_mean >= 99.0, "p_c at k_a=1.3 >= 99.0");
  result.require(k13 && k13->p_f_mean <= 0.6, "p_f at k_a=1.3 <= 0.6");
  if (k13 && k13->p_c_mean) {
    result.note("p_c=" + fmt(*k13->p_c_mean) + " p_f=" + fmt(k13->p_f_mean) + ", " +
                fmt(seconds_since(start)) + "s");
  }
  return result;
}

CriterionResult criterion_3() {
  CriterionResult result;
  const auto start = std::chrono::steady_clock::now();
  SimulationConfig cfg;
  cfg.sim_id = 3;
  cfg.seed = 42;
  const auto table = run_table(cfg, {}, {0.5, 0.7});
  result.require(table.replicates_failed == 0, "replicates failed");
  const auto* k07 = row_for(table.phase, 0.7);
  const auto* k05 = row_for(table.phase, 0.5);
  result.require(k07 && k07->p_c_mean && *k07->p_c_mean >= 97.0, "p_c at k_p=0.7 >= 97.0");
  result.require(k07 && k07->p_f_mean <= 1.0, "p_f at k_p=0.7 <= 1.0");
  result.require(k05 && k05->p_c_mean && *k05->p_c_mean >= 99.5, "p_c at k_p=0.5 >= 99.5");
  result.require(k05 && k05->p_f_mean >= 1.0 && k05->p_f_mean <= 5.5,
                 "p_f at k_p=0.5 in [1.0, 5.5]");
  if (k07 && k05 && k07->p_c_mean && k05->p_c_mean) {
    result.note("k07 p_c=" + fmt(*k07->p_c_mean) + " p_f=" + fmt(k07->p_f_mean) +
                ", k05 p_c=" + fmt(*k05->p_c_mean) + " p_f=" + fmt(k05->p_f_mean) + ", " +
                fmt(seconds_since(start)) + "s");
  }
  return result;
}

CriterionResult criterion_4() {
  CriterionResult result;
  const auto start = std::chrono::steady_clock::now();
  SimulationConfig cfg;
  cfg.sim_id = 4;
  cfg.seed = 42;
  const auto table = run_table(cfg, {0.6, 0.7, 0.8, 0.9, 1.0}, {0.8, 0.9});
  result.require(table.replicates_failed == 0, "replicates failed");
  std::string amp_values;
  for (const auto& row : table.amplitude) {
    result.require(row.p_f_mean <= 0.2,
                   "amplitude p_f at k_a=" + fmt(row.k) + " <= 0.2 (got " + fmt(row.p_f_mean) +
                       ")");
    if (!amp_values.empty()) amp_values += "/";
    amp_values += fmt(row.p_f_mean);
  }
  const auto* k08 = row_for(table.phase, 0.8);
  const auto* k09 = row_for(table.phase, 0.9);
  result.require(k08 && k08->p_f_mean <= 1.5, "phase p_f at k_p=0.8 <= 1.5");
  result.require(k09 && k09->p_f_mean <= 0.3, "phase p_f at k_p=0.9 <= 0.3");
  if (k08 && k09) {
    result.note("amp p_f=" + amp_values + ", phase p_f k08=" + fmt(k08->p_f_mean) +
                " k09=" + fmt(k09->p_f_mean) + ", " + fmt(seconds_since(start)) + "s");
  }
  return result;
}

// ---------------------------------------------------------------------------
// Criterion 5: isometry and round trips.

CriterionResult criterion_5() {
  CriterionResult result;
  const Grid grid = Grid::uniform(201);
  std::mt19937_64 rng(20240817);
  double worst_iso = 0.0;
  double worst_srsf = 0.0;
  double worst_srt = 0.0;
  double worst_exp = 0.0;
  for (int rep = 0; rep < 200; ++rep) {
    const auto f1 = random_smooth(grid, rng);
    const auto f2 = random_smooth(grid, rng);
    const auto g = random_warp(grid, rng);
    const auto q1 = srsf(f1);
    const auto q2 = srsf(f2);
    const double before = distance_l2(grid.points(), q1.values(), q2.values());
    const double after = distance_l2(grid.points(), group_action(q1, g).values(),
                                     group_action(q2, g).values());
    worst_iso = std::max(worst_iso, std::abs(before - after));

    const auto back = srsf_inverse(q1, f1.values().front());
    worst_srsf = std::max(worst_srsf, sup_diff(back.values(), f1.values()));

    const auto g_back = srt_inverse(srt(g));
    worst_srt = std::max(worst_srt, sup_diff(g_back.values(), g.values()));

    // exp/log round trip on pairs within 1 radian.
    const auto psi1 = srt(g);
    const auto psi2 = srt(random_warp(grid, rng));
    if (sphere_distance(psi1, psi2) <= 1.0) {
      const auto v = inv_exp_map(psi1, psi2);
      worst_exp = std::max(worst_exp, sup_diff(exp_map(psi1, v).values(), psi2.values()));
    }
  }
  result.require(worst_iso <= 1e-2, "isometry gap <= 1e-2 (got " + fmt(worst_iso) + ")");
  result.require(worst_srsf <= 1e-2, "srsf round trip <= 1e-2");
  result.require(worst_srt <= 1e-2, "srt round trip <= 1e-2");
  result.require(worst_exp <= 1e-3, "exp/log round trip <= 1e-3");
  result.note("iso=" + fmt(worst_iso) + " srsf=" + fmt(worst_srsf) + " srt=" + fmt(worst_srt) +
              " explog=" + fmt(worst_exp));
  return result;
}

// ---------------------------------------------------------------------------
// Criterion 6: closed-form oracles.

CriterionResult criterion_6() {
  CriterionResult result;
  const Grid grid = Grid::uniform(101);
  std::vector<double> lin(grid.size());
  std::vector<double> lin2(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    lin[i] = grid[i];
    lin2[i] = 2.0 * grid[i];
  }
  const double da = amplitude_distance(SampledFunction(grid, lin), SampledFunction(grid, lin2));
  const double expected_da = std::sqrt(2.0) - 1.0;
  result.require(std::abs(da - expected_da) <= 1e-2,
                 "D_a(t, 2t) within 1e-2 of sqrt(2)-1 (got " + fmt(da) + ")");

  const double dp = phase_distance(Warping::identity(grid), poly_warp(grid, 1.0));
  const double expected_dp = std::acos(2.0 * std::sqrt(2.0) / 3.0);
  result.require(std::abs(dp - expected_dp) <= 1e-3,
                 "D_p(id, t^2) within 1e-3 of arccos(2*sqrt(2)/3) (got " + fmt(dp) + ")");

  // Quadrature route for the same inner product.
  std::vector<double> integrand(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) integrand[i] = std::sqrt(2.0 * grid[i]);
  const double quad = std::acos(std::min(1.0, trapezoid(grid.points(), integrand)));
  result.require(std::abs(quad - expected_dp) <= 1e-3, "quadrature route within 1e-3");
  result.note("D_a=" + fmt(da) + " (expect " + fmt(expected_da) + "), D_p=" + fmt(dp) +
              " (expect " + fmt(expected_dp) + ")");
  return result;
}

// ---------------------------------------------------------------------------
// Criterion 7: quartile selections match a brute-force oracle.

// Independent objective evaluation: explicit trapezoid sums, no shared
// helpers with the implementation.
std::pair<std::size_t, std::size_t> oracle_pair(const std::vector<double>& ts,
                                                const std::vector<std::vector<double>>& disp,
                                                double lambda) {
  auto dot = [&](const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
      acc += 0.5 * (ts[i + 1] - ts[i]) * (a[i] * b[i] + a[i + 1] * b[i + 1]);
    }
    return acc;
  };
  const std::size_t m = disp.size();
  std::vector<double> norms(m);
  double dmax = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    norms[i] = std::sqrt(dot(disp[i], disp[i]));
    dmax = std::max(dmax, norms[i]);
  }
  double best = -1e300;
  std::pair<std::size_t, std::size_t> pick{0, 0};
  for (std::size_t a = 0; a < m; ++a) {
    if (norms[a] < 1e-8) continue;
    for (std::size_t b = a + 1; b < m; ++b) {
      if (norms[b] < 1e-8) continue;
      const double cosab = dot(disp[a], disp[b]) / (norms[a] * norms[b]);
      const double objective =
          (1.0 - lambda) * (norms[a] + norms[b]) / dmax - lambda * (cosab + 1.0);
      if (objective > best) {
        best = objective;
        pick = {a, b};
      }
    }
  }
  return pick;
}

CriterionResult criterion_7() {
  CriterionResult result;
  const Grid grid = Grid::uniform(101);
  std::mt19937_64 rng(7777);
  std::uniform_real_distribution<double> coef(0.08, 0.18);
  std::uniform_real_distribution<double> alpha(-0.6, 0.6);
  std::uniform_real_distribution<double> shift(-1.0, 1.0);

  int checked = 0;
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = 8 + rng() % 13;  // up to 20
    std::vector<SampledFunction> fs;
    for (std::size_t i = 0; i < n; ++i) {
      const double c1 = coef(rng);
      const double c2 = coef(rng);
      const double a = alpha(rng);
      const double c = shift(rng);
      std::vector<double> v(grid.size());
      for (std::size_t k = 0; k < grid.size(); ++k) {
        const double u = grid[k] + a * grid[k] * (grid[k] - 1.0);
        v[k] = c1 * std::sin(kTwoPi * u) + c2 * std::cos(kTwoPi * u) + c;
      }
      fs.emplace_back(grid, std::move(v));
    }
    const auto dec = decompose(fs);

    // Amplitude route.
    const auto central = central_region(dec.amp_distances);
    std::vector<Srsf> central_srsfs;
    std::vector<std::vector<double>> disp;
    for (std::size_t idx : central) {
      central_srsfs.push_back(dec.amplitude_srsfs[idx]);
      std::vector<double> d(grid.size());
      for (std::size_t k = 0; k < grid.size(); ++k) {
        d[k] = dec.amplitude_srsfs[idx].values()[k] - dec.amp_median_srsf.values()[k];
      }
      disp.push_back(std::move(d));
    }
    const auto pick = amplitude_quartiles(central_srsfs, dec.amp_median_srsf, 0.5);
    if (!pick.degenerate) {
      const auto oracle = oracle_pair(grid.points(), disp, 0.5);
      result.require(pick.first == oracle.first && pick.second == oracle.second,
                     "amplitude quartile pair matches oracle (rep " + std::to_string(rep) + ")");
      ++checked;
    }

    // Phase route.
    const auto phase_central = central_region(dec.phase_distances);
    std::vector<TangentVector> vs;
    std::vector<std::vector<double>> tangent_disp;
    for (std::size_t idx : phase_central) {
      vs.push_back(inv_exp_map(dec.phase_median_srt, srt(dec.phases[idx])));
      tangent_disp.push_back(vs.back().values());
    }
    const auto phase_pick = phase_quartiles(vs, 0.5);
    if (!phase_pick.degenerate) {
      const auto oracle = oracle_pair(grid.points(), tangent_disp, 0.5);
      result.require(phase_pick.first == oracle.first && phase_pick.second == oracle.second,
                     "phase quartile pair matches oracle (rep " + std::to_string(rep) + ")");
      ++checked;
    }
  }
  result.require(checked >= 80, "enough non-degenerate comparisons");
  result.note(std::to_string(checked) + " pair selections compared");
  return result;
}

// ---------------------------------------------------------------------------
// Criterion 8: invariances.

CriterionResult criterion_8() {
  CriterionResult result;
  const Grid grid = Grid::uniform(101);
  std::mt19937_64 rng(20240818);
  std::uniform_real_distribution<double> coef(0.06, 0.18);
  std::uniform_real_distribution<double> alpha(-0.7, 0.7);
  std::uniform_real_distribution<double> shift(-0.5, 0.5);

  for (int dataset = 0; dataset < 3; ++dataset) {
    const std::size_t n = 24;
    std::vector<SampledFunction> fs;
    for (std::size_t i = 0; i < n; ++i) {
      const double c1 = coef(rng);
      const double c2 = coef(rng);
      const double a = alpha(rng);
      const double c = shift(rng);
      std::vector<double> v(grid.size());
      for (std::size_t k = 0; k < grid.size(); ++k) {
        const double u = grid[k] + a * grid[k] * (grid[k] - 1.0);
        v[k] = c1 * std::sin(kTwoPi * u) + c2 * std::cos(kTwoPi * u) + c;
      }
      fs.emplace_back(grid, std::move(v));
    }
    const auto dec = decompose(fs);

    // Common vertical shift leaves index selections identical and shifts the
    // translation boxplot exactly.
    const double c0 = 2.5;
    std::vector<SampledFunction> shifted;
    for (const auto& f : fs) shifted.push_back(f.shifted(c0));
    const auto dec_shift = decompose(shifted);

    const auto abox = amplitude_boxplot(dec, 1.0);
    const auto abox_shift = amplitude_boxplot(dec_shift, 1.0);
    result.require(abox.central_indices == abox_shift.central_indices &&
                       abox.q1_index == abox_shift.q1_index &&
                       abox.q3_index == abox_shift.q3_index &&
                       abox.extreme1_index == abox_shift.extreme1_index &&
                       abox.extreme3_index == abox_shift.extreme3_index &&
                       abox.outlier_indices == abox_shift.outlier_indices,
                   "amplitude boxplot indices identical under shift");

    const auto pbox = phase_boxplot(dec, 0.7);
    const auto pbox_shift = phase_boxplot(dec_shift, 0.7);
    result.require(pbox.central_indices == pbox_shift.central_indices &&
                       pbox.q1_index == pbox_shift.q1_index &&
                       pbox.q3_index == pbox_shift.q3_index &&
                       pbox.outlier_indices == pbox_shift.outlier_indices,
                   "phase boxplot indices identical under shift");

    const auto tbox = translation_boxplot(dec.translations);
    const auto tbox_shift = translation_boxplot(dec_shift.translations);
    auto close = [&](double a, double b) { return std::abs(a - b) <= 1e-10; };
    result.require(close(tbox.median + c0, tbox_shift.median) &&
                       close(tbox.q1 + c0, tbox_shift.q1) &&
                       close(tbox.q3 + c0, tbox_shift.q3) &&
                       close(tbox.lower_whisker + c0, tbox_shift.lower_whisker) &&
                       close(tbox.upper_whisker + c0, tbox_shift.upper_whisker) &&
                       tbox.outlier_indices == tbox_shift.outlier_indices,
                   "translation boxplot shifts exactly");

    // Common warp leaves amplitude distances within the alignment tolerance.
    const auto g0 = poly_warp(grid, 0.4);
    std::vector<SampledFunction> warped;
    for (const auto& f : fs) warped.push_back(warp_apply(f, g0));
    const auto dec_warp = decompose(warped);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      worst = std::max(worst, std::abs(dec_warp.amp_distances[i] - dec.amp_distances[i]));
    }
    result.require(worst <= 5e-2, "amplitude distances stable under a common warp (worst " +
                                      fmt(worst) + ")");

    // Outlier-set monotonicity in k for both components.
    auto subset = [](const std::vector<std::size_t>& small, const std::vector<std::size_t>& big) {
      for (std::size_t idx : small) {
        if (std::find(big.begin(), big.end(), idx) == big.end()) return false;
      }
      return true;
    };
    std::vector<std::size_t> previous_amp;
    std::vector<std::size_t> previous_phase;
    bool first = true;
    for (double k : {0.4, 0.6, 0.9, 1.3, 1.8}) {
      const auto a = amplitude_boxplot(dec, k);
      const auto p = phase_boxplot(dec, k);
      if (!first) {
        result.require(subset(a.outlier_indices, previous_amp),
                       "amplitude outlier sets nested in k");
        result.require(subset(p.outlier_indices, previous_phase),
                       "phase outlier sets nested in k");
      }
      previous_amp = a.outlier_indices;
      previous_phase = p.outlier_indices;
      first = false;
    }
  }
  result.note("3 datasets checked");
  return result;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[i + 1]);
    }
  }

  struct Criterion {
    int id;
    const char* name;
    CriterionResult (*run)();
  };
  const std::vector<Criterion> criteria{
      {1, "simulation 1 detection rates", criterion_1},
      {2, "simulation 2 detection rates", criterion_2},
      {3, "simulation 3 detection rates", criterion_3},
      {4, "simulation 4 false-positive rates", criterion_4},
      {5, "isometry and round-trip suite", criterion_5},
      {6, "closed-form distance oracles", criterion_6},
      {7, "quartile oracle equivalence", criterion_7},
      {8, "invariance suite", criterion_8},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    if (only != 0 && criterion.id != only) continue;
    const CriterionResult result = criterion.run();
    std::printf("[%s] criterion %d: %s%s%s\n", result.passed ? "PASS" : "FAIL", criterion.id,
                criterion.name, result.details.empty() ? "" : " — ",
                result.details.c_str());
    std::fflush(stdout);
    if (!result.passed) ++failures;
  }
  return failures;
}
