// Command-line front end: decompose functional datasets into translation,
// amplitude, and phase components; build metric boxplots; scan for outliers;
// and reproduce the simulation detection-rate tables.
//
// Exit codes: 0 success, 2 malformed CSV input, 3 median non-convergence
// (a partial report is still written), 4 simulation replicate failures beyond
// the 5% budget, 1 other runtime errors. Usage errors return CLI11's standard
// nonzero codes.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "elastic/elastic.hpp"

namespace {

using namespace elastic;

struct IoOptions {
  std::string input;
  std::size_t grid_size = 101;
  std::string resample = "linear";
  std::string out;
};

bool has_json_extension(const std::string& path) {
  return std::filesystem::path(path).extension() == ".json";
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << text;
}

void emit_report(const Report& report, const std::string& out_path) {
  const std::string text = serialize_report(report);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_text(out_path, text);
  }
}

// Loads either a raw CSV dataset (decomposing it) or a previously written
// report (reusing its decomposition).
Report load_or_decompose(const IoOptions& io) {
  if (has_json_extension(io.input)) {
    std::ifstream in(io.input);
    if (!in) throw std::runtime_error("cannot open input file: " + io.input);
    Json j = Json::parse(in);
    return report_from_json(j);
  }
  const Dataset ds = load_dataset_csv(io.input);
  const auto mode = io.resample == "spline" ? ResampleMode::kSpline : ResampleMode::kLinear;
  const WorkingSet ws = to_working_set(ds, io.grid_size, mode);
  return Report{ws.labels,     ws.time_min,  ws.time_max,  decompose(ws.functions),
                std::nullopt,  std::nullopt, std::nullopt, std::nullopt,
                std::nullopt,  std::nullopt};
}

int convergence_exit(const Report& report) {
  if (!report.decomposition.amp_median_converged || !report.decomposition.phase_median_converged) {
    std::cerr << "warning: median computation did not converge; report is partial\n";
    return 3;
  }
  return 0;
}

int run_decompose(const IoOptions& io) {
  Report report = load_or_decompose(io);
  emit_report(report, io.out);
  return convergence_exit(report);
}

int run_boxplot(const IoOptions& io, double ka, double kp, double lambda,
                const std::string& rule, const std::string& svg_dir,
                const std::string& mesh_dir) {
  Report report = load_or_decompose(io);
  const Decomposition& dec = report.decomposition;

  BoxplotOptions opts;
  opts.lambda = lambda;
  opts.rule = rule == "min" ? OutlierRule::kMin : OutlierRule::kMax;
  report.amplitude_box = amplitude_boxplot(dec, ka, opts);
  report.phase_box = phase_boxplot(dec, kp, opts);
  report.translation_box = translation_boxplot(dec.translations);
  if (report.amplitude_box->degenerate) {
    std::cerr << "warning: amplitude boxplot is degenerate (zero spread)\n";
  } else {
    report.amplitude_surface = surface_display(*report.amplitude_box, dec);
  }
  if (report.phase_box->degenerate) {
    std::cerr << "warning: phase boxplot is degenerate (zero spread)\n";
  } else {
    report.phase_surface = surface_display(*report.phase_box, dec);
  }

  if (!svg_dir.empty()) {
    std::filesystem::create_directories(svg_dir);
    const auto dir = std::filesystem::path(svg_dir);
    write_text((dir / "amplitude.svg").string(),
               render_curves_svg(dec.grid.points(),
                                 amplitude_boxplot_curves(*report.amplitude_box, dec),
                                 "Amplitude boxplot"));
    write_text((dir / "phase.svg").string(),
               render_curves_svg(dec.grid.points(),
                                 phase_boxplot_curves(*report.phase_box, dec),
                                 "Phase boxplot"));
    write_text((dir / "translation.svg").string(),
               render_translation_svg(*report.translation_box, dec.translations,
                                      "Translation boxplot"));
  }
  if (!mesh_dir.empty()) {
    std::filesystem::create_directories(mesh_dir);
    const auto dir = std::filesystem::path(mesh_dir);
    if (report.amplitude_surface) {
      write_text((dir / "amplitude_surface.json").string(),
                 to_json(*report.amplitude_surface).dump(2) + "\n");
    }
    if (report.phase_surface) {
      write_text((dir / "phase_surface.json").string(),
                 to_json(*report.phase_surface).dump(2) + "\n");
    }
  }

  emit_report(report, io.out);
  return convergence_exit(report);
}

int run_outliers(const IoOptions& io, bool scan, std::vector<double> ka_grid,
                 std::vector<double> kp_grid, const std::string& json_path) {
  Report report = load_or_decompose(io);
  const Decomposition& dec = report.decomposition;

  if (ka_grid.empty()) ka_grid = {0.6, 0.8, 1.3};
  if (kp_grid.empty()) kp_grid = {0.5, 0.7, 0.9};
  report.severity = outlier_scan(dec, ka_grid, kp_grid);
  report.translation_box = translation_boxplot(dec.translations);

  auto label_of = [&](std::size_t i) {
    return i < report.labels.size() ? report.labels[i] : std::to_string(i);
  };
  std::printf("%-6s %-16s %12s %12s %10s %10s %12s\n", "index", "label", "D_p", "D_a",
              "amplitude", "phase", "translation");
  for (const auto& e : report.severity->entries) {
    std::printf("%-6zu %-16s %12.6f %12.6f %10s %10s %12s\n", e.index,
                label_of(e.index).c_str(), e.phase_distance, e.amplitude_distance,
                severity_name(e.amplitude), severity_name(e.phase),
                e.translation_outlier ? "outlier" : "-");
  }
  if (scan) {
    for (std::size_t k = 0; k < ka_grid.size(); ++k) {
      std::printf("flags at k_a=%.2f:", ka_grid[k]);
      for (std::size_t idx : report.severity->amp_flags_per_k[k]) std::printf(" %zu", idx);
      std::printf("\n");
    }
    for (std::size_t k = 0; k < kp_grid.size(); ++k) {
      std::printf("flags at k_p=%.2f:", kp_grid[k]);
      for (std::size_t idx : report.severity->phase_flags_per_k[k]) std::printf(" %zu", idx);
      std::printf("\n");
    }
  }
  if (!json_path.empty()) write_text(json_path, serialize_report(report));
  return convergence_exit(report);
}

int run_simulate(int sim, std::uint64_t seed, std::size_t replicates, std::size_t functions,
                 std::size_t grid_size, double lambda, std::vector<double> ka_grid,
                 std::vector<double> kp_grid, const std::string& json_path,
                 bool parallel_replicates) {
  SimulationConfig cfg;
  cfg.sim_id = sim;
  cfg.seed = seed;
  cfg.n_replicates = replicates;
  cfg.n_functions = functions;
  cfg.grid_size = grid_size;
  cfg.lambda = lambda;
  if (ka_grid.empty()) ka_grid = default_k_a_grid(sim);
  if (kp_grid.empty()) kp_grid = default_k_p_grid(sim);

  const SimulationReport report = run_table(cfg, ka_grid, kp_grid, parallel_replicates);
  std::cout << to_text_table(report);
  if (!json_path.empty()) write_text(json_path, to_json(report).dump(2) + "\n");

  if (report.replicates_failed * 20 > cfg.n_replicates) {  // above the 5% budget
    std::cerr << "error: " << report.replicates_failed << " of " << cfg.n_replicates
              << " replicates failed";
    if (!report.first_failure.empty()) std::cerr << " (first: " << report.first_failure << ")";
    std::cerr << "\n";
    return 4;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elastic functional boxplots: translation/amplitude/phase decomposition, "
               "metric boxplot displays, and outlier detection"};
  app.require_subcommand(1);

  IoOptions io;
  double ka = 1.3;
  double kp = 0.9;
  double lambda = 0.5;
  std::string rule = "max";
  std::string svg_dir;
  std::string mesh_dir;
  std::string json_path;
  bool scan = false;
  std::vector<double> ka_grid;
  std::vector<double> kp_grid;
  int sim = 1;
  std::uint64_t seed = 0;
  std::size_t replicates = 100;
  std::size_t functions = 100;
  bool parallel_replicates = false;

  auto add_input_options = [&](CLI::App* cmd, bool accepts_report) {
    const char* desc = accepts_report ? "Input dataset (.csv) or report (.json)"
                                      : "Input dataset (.csv)";
    cmd->add_option("input", io.input, desc)->required();
    cmd->add_option("--grid", io.grid_size, "Working grid size (uniform)")
        ->check(CLI::Range(std::size_t{3}, std::size_t{100000}));
    cmd->add_option("--resample", io.resample, "Resampling of raw samples onto the grid")
        ->check(CLI::IsMember({"linear", "spline"}));
  };

  auto* cmd_decompose = app.add_subcommand(
      "decompose", "Separate translation, amplitude, and phase components");
  add_input_options(cmd_decompose, false);
  cmd_decompose->add_option("--out", io.out, "Write the JSON report here (default: stdout)");

  auto* cmd_boxplot = app.add_subcommand(
      "boxplot", "Build amplitude/phase/translation boxplots, SVG plots, and surface meshes");
  add_input_options(cmd_boxplot, true);
  cmd_boxplot->add_option("--out", io.out, "Write the JSON report here (default: stdout)");
  cmd_boxplot->add_option("--ka", ka, "Amplitude cutoff constant");
  cmd_boxplot->add_option("--kp", kp, "Phase cutoff constant");
  cmd_boxplot->add_option("--lambda", lambda, "Quartile objective weight in [0,1]");
  cmd_boxplot->add_option("--rule", rule, "Outlier fence rule")
      ->check(CLI::IsMember({"max", "min"}));
  cmd_boxplot->add_option("--svg", svg_dir, "Directory for SVG plots");
  cmd_boxplot->add_option("--mesh", mesh_dir, "Directory for surface-mesh JSON");

  auto* cmd_outliers = app.add_subcommand(
      "outliers", "Severity labels per sample plus phase-vs-amplitude distances");
  add_input_options(cmd_outliers, true);
  cmd_outliers->add_flag("--scan", scan, "Also print the flagged sets per scale value");
  cmd_outliers->add_option("--ka-grid", ka_grid, "Amplitude scale grid")->delimiter(',');
  cmd_outliers->add_option("--kp-grid", kp_grid, "Phase scale grid")->delimiter(',');
  cmd_outliers->add_option("--json", json_path, "Write the JSON report here");

  auto* cmd_simulate = app.add_subcommand(
      "simulate", "Run the benchmark simulations and report detection rates");
  cmd_simulate->add_option("--sim", sim, "Simulation id")->check(CLI::Range(1, 4))->required();
  cmd_simulate->add_option("--seed", seed, "Base seed");
  cmd_simulate->add_option("--replicates", replicates, "Number of replicates");
  cmd_simulate->add_option("--functions", functions, "Functions per replicate");
  cmd_simulate->add_option("--grid", io.grid_size, "Grid size");
  cmd_simulate->add_option("--lambda", lambda, "Quartile objective weight");
  cmd_simulate->add_option("--ka-grid", ka_grid, "Amplitude cutoff grid")->delimiter(',');
  cmd_simulate->add_option("--kp-grid", kp_grid, "Phase cutoff grid")->delimiter(',');
  cmd_simulate->add_option("--json", json_path, "Write the JSON table here");
  cmd_simulate->add_flag("--parallel-replicates", parallel_replicates,
                         "Distribute replicates over threads");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_decompose->parsed()) return run_decompose(io);
    if (cmd_boxplot->parsed()) return run_boxplot(io, ka, kp, lambda, rule, svg_dir, mesh_dir);
    if (cmd_outliers->parsed()) return run_outliers(io, scan, ka_grid, kp_grid, json_path);
    if (cmd_simulate->parsed()) {
      return run_simulate(sim, seed, replicates, functions, io.grid_size, lambda, ka_grid,
                          kp_grid, json_path, parallel_replicates);
    }
  } catch (const CsvError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
