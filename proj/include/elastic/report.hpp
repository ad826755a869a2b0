#pragma once

// JSON serialization for decomposition reports, boxplots, surface meshes,
// severity scans, and simulation tables. Reports round-trip losslessly: every
// curve is stored as raw samples on the shared working grid and reloaded
// verbatim.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "elastic/boxplots.hpp"
#include "elastic/csv.hpp"
#include "elastic/medians.hpp"
#include "elastic/simulation.hpp"
#include "elastic/types.hpp"

namespace elastic {

using Json = nlohmann::ordered_json;

struct Report {
  std::vector<std::string> labels;
  double time_min = 0.0;
  double time_max = 1.0;
  Decomposition decomposition;
  std::optional<AmplitudeBoxplot> amplitude_box;
  std::optional<PhaseBoxplot> phase_box;
  std::optional<TranslationBoxplot> translation_box;
  std::optional<SurfaceDisplay> amplitude_surface;
  std::optional<SurfaceDisplay> phase_surface;
  std::optional<SeverityReport> severity;
};

namespace detail {

inline Json indices_json(const std::vector<std::size_t>& idx) {
  Json out = Json::array();
  for (std::size_t i : idx) out.push_back(i);
  return out;
}

inline std::vector<std::size_t> indices_from(const Json& j) {
  std::vector<std::size_t> out;
  for (const auto& v : j) out.push_back(v.get<std::size_t>());
  return out;
}

inline Json curves_json(const std::vector<SampledFunction>& fs) {
  Json out = Json::array();
  for (const auto& f : fs) out.push_back(f.values());
  return out;
}

template <typename T>
Json typed_curves_json(const std::vector<T>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(x.values());
  return out;
}

}  // namespace detail

inline Json to_json(const Decomposition& dec) {
  Json j;
  j["grid"] = dec.grid.points();
  j["translations"] = dec.translations;
  j["amplitudes"] = detail::curves_json(dec.amplitudes);
  j["amplitude_srsfs"] = detail::typed_curves_json(dec.amplitude_srsfs);
  j["phases"] = detail::typed_curves_json(dec.phases);
  j["amp_median"] = dec.amp_median.values();
  j["amp_median_srsf"] = dec.amp_median_srsf.values();
  j["amp_distances"] = dec.amp_distances;
  j["phase_median"] = dec.phase_median.values();
  j["phase_median_srt"] = dec.phase_median_srt.values();
  j["phase_distances"] = dec.phase_distances;
  j["amp_median_converged"] = dec.amp_median_converged;
  j["phase_median_converged"] = dec.phase_median_converged;
  return j;
}

inline Decomposition decomposition_from_json(const Json& j) {
  Grid grid(j.at("grid").get<std::vector<double>>());
  auto functions_from = [&](const Json& arr) {
    std::vector<SampledFunction> out;
    for (const auto& v : arr) out.emplace_back(grid, v.get<std::vector<double>>());
    return out;
  };
  std::vector<Srsf> srsfs;
  for (const auto& v : j.at("amplitude_srsfs")) {
    srsfs.emplace_back(grid, v.get<std::vector<double>>());
  }
  std::vector<Warping> phases;
  for (const auto& v : j.at("phases")) phases.emplace_back(grid, v.get<std::vector<double>>());
  return Decomposition{
      grid,
      j.at("translations").get<std::vector<double>>(),
      functions_from(j.at("amplitudes")),
      std::move(srsfs),
      std::move(phases),
      SampledFunction(grid, j.at("amp_median").get<std::vector<double>>()),
      Srsf(grid, j.at("amp_median_srsf").get<std::vector<double>>()),
      j.at("amp_distances").get<std::vector<double>>(),
      Warping(grid, j.at("phase_median").get<std::vector<double>>()),
      Srt::from_raw(grid, j.at("phase_median_srt").get<std::vector<double>>()),
      j.at("phase_distances").get<std::vector<double>>(),
      j.at("amp_median_converged").get<bool>(),
      j.at("phase_median_converged").get<bool>()};
}

inline Json to_json(const AmplitudeBoxplot& box) {
  Json j;
  j["k_a"] = box.k_a;
  j["lambda"] = box.lambda;
  j["degenerate"] = box.degenerate;
  j["central_indices"] = detail::indices_json(box.central_indices);
  j["q1_index"] = box.q1_index;
  j["q3_index"] = box.q3_index;
  j["q1_srsf"] = box.q1.values();
  j["q3_srsf"] = box.q3.values();
  j["w1_srsf"] = box.w1.values();
  j["w3_srsf"] = box.w3.values();
  j["iqr"] = box.iqr;
  if (box.extreme1_index) j["extreme1_index"] = *box.extreme1_index;
  if (box.extreme3_index) j["extreme3_index"] = *box.extreme3_index;
  j["outlier_indices"] = detail::indices_json(box.outlier_indices);
  return j;
}

inline AmplitudeBoxplot amplitude_box_from_json(const Json& j, const Decomposition& dec) {
  const Grid& grid = dec.grid;
  AmplitudeBoxplot box{dec.amp_median_srsf,
                       j.at("q1_index").get<std::size_t>(),
                       j.at("q3_index").get<std::size_t>(),
                       Srsf(grid, j.at("q1_srsf").get<std::vector<double>>()),
                       Srsf(grid, j.at("q3_srsf").get<std::vector<double>>()),
                       Srsf(grid, j.at("w1_srsf").get<std::vector<double>>()),
                       Srsf(grid, j.at("w3_srsf").get<std::vector<double>>()),
                       std::nullopt,
                       std::nullopt,
                       j.at("iqr").get<double>(),
                       detail::indices_from(j.at("outlier_indices")),
                       j.at("lambda").get<double>(),
                       j.at("k_a").get<double>(),
                       detail::indices_from(j.at("central_indices")),
                       j.at("degenerate").get<bool>()};
  if (j.contains("extreme1_index")) box.extreme1_index = j.at("extreme1_index").get<std::size_t>();
  if (j.contains("extreme3_index")) box.extreme3_index = j.at("extreme3_index").get<std::size_t>();
  return box;
}

inline Json to_json(const PhaseBoxplot& box) {
  Json j;
  j["k_p"] = box.k_p;
  j["lambda"] = box.lambda;
  j["degenerate"] = box.degenerate;
  j["cutoff_clamped"] = box.cutoff_clamped;
  j["central_indices"] = detail::indices_json(box.central_indices);
  j["q1_index"] = box.q1_index;
  j["q3_index"] = box.q3_index;
  j["q1"] = box.q1.values();
  j["q3"] = box.q3.values();
  j["w1"] = box.w1.values();
  j["w3"] = box.w3.values();
  j["iqr"] = box.iqr;
  if (box.extreme1_index) j["extreme1_index"] = *box.extreme1_index;
  if (box.extreme3_index) j["extreme3_index"] = *box.extreme3_index;
  j["outlier_indices"] = detail::indices_json(box.outlier_indices);
  return j;
}

inline PhaseBoxplot phase_box_from_json(const Json& j, const Decomposition& dec) {
  const Grid& grid = dec.grid;
  PhaseBoxplot box{dec.phase_median,
                   dec.phase_median_srt,
                   j.at("q1_index").get<std::size_t>(),
                   j.at("q3_index").get<std::size_t>(),
                   Warping(grid, j.at("q1").get<std::vector<double>>()),
                   Warping(grid, j.at("q3").get<std::vector<double>>()),
                   Warping(grid, j.at("w1").get<std::vector<double>>()),
                   Warping(grid, j.at("w3").get<std::vector<double>>()),
                   std::nullopt,
                   std::nullopt,
                   j.at("iqr").get<double>(),
                   detail::indices_from(j.at("outlier_indices")),
                   j.at("lambda").get<double>(),
                   j.at("k_p").get<double>(),
                   detail::indices_from(j.at("central_indices")),
                   j.at("degenerate").get<bool>(),
                   j.at("cutoff_clamped").get<bool>()};
  if (j.contains("extreme1_index")) box.extreme1_index = j.at("extreme1_index").get<std::size_t>();
  if (j.contains("extreme3_index")) box.extreme3_index = j.at("extreme3_index").get<std::size_t>();
  return box;
}

inline Json to_json(const TranslationBoxplot& box) {
  Json j;
  j["k"] = box.k;
  j["median"] = box.median;
  j["q1"] = box.q1;
  j["q3"] = box.q3;
  j["lower_whisker"] = box.lower_whisker;
  j["upper_whisker"] = box.upper_whisker;
  j["outlier_indices"] = detail::indices_json(box.outlier_indices);
  return j;
}

inline TranslationBoxplot translation_box_from_json(const Json& j) {
  return TranslationBoxplot{j.at("median").get<double>(),
                            j.at("q1").get<double>(),
                            j.at("q3").get<double>(),
                            j.at("lower_whisker").get<double>(),
                            j.at("upper_whisker").get<double>(),
                            detail::indices_from(j.at("outlier_indices")),
                            j.at("k").get<double>()};
}

inline Json to_json(const SurfaceDisplay& surface) {
  Json j;
  j["mode"] = surface.mode == SurfaceMode::kAmplitude ? "amplitude" : "phase";
  Json curves = Json::array();
  for (const auto& c : surface.curves) {
    Json entry;
    entry["name"] = c.name;
    entry["offset"] = c.offset;
    entry["values"] = c.values;
    curves.push_back(std::move(entry));
  }
  j["curves"] = std::move(curves);
  return j;
}

inline SurfaceDisplay surface_from_json(const Json& j) {
  SurfaceDisplay surface;
  surface.mode =
      j.at("mode").get<std::string>() == "amplitude" ? SurfaceMode::kAmplitude : SurfaceMode::kPhase;
  for (const auto& c : j.at("curves")) {
    surface.curves.push_back(SurfaceCurve{c.at("name").get<std::string>(),
                                          c.at("offset").get<double>(),
                                          c.at("values").get<std::vector<double>>()});
  }
  return surface;
}

inline Json to_json(const SeverityReport& report) {
  Json j;
  j["k_a_grid"] = report.k_a_grid;
  j["k_p_grid"] = report.k_p_grid;
  Json entries = Json::array();
  for (const auto& e : report.entries) {
    Json entry;
    entry["index"] = e.index;
    entry["amplitude_distance"] = e.amplitude_distance;
    entry["phase_distance"] = e.phase_distance;
    entry["amplitude_severity"] = severity_name(e.amplitude);
    entry["phase_severity"] = severity_name(e.phase);
    entry["translation_outlier"] = e.translation_outlier;
    entries.push_back(std::move(entry));
  }
  j["samples"] = std::move(entries);
  Json amp_flags = Json::array();
  for (const auto& flags : report.amp_flags_per_k) amp_flags.push_back(detail::indices_json(flags));
  j["amplitude_flags_per_k"] = std::move(amp_flags);
  Json phase_flags = Json::array();
  for (const auto& flags : report.phase_flags_per_k) {
    phase_flags.push_back(detail::indices_json(flags));
  }
  j["phase_flags_per_k"] = std::move(phase_flags);
  return j;
}

inline Severity severity_from_name(const std::string& name) {
  if (name == "mild") return Severity::kMild;
  if (name == "regular") return Severity::kRegular;
  if (name == "severe") return Severity::kSevere;
  return Severity::kNone;
}

inline SeverityReport severity_from_json(const Json& j) {
  SeverityReport report;
  report.k_a_grid = j.at("k_a_grid").get<std::vector<double>>();
  report.k_p_grid = j.at("k_p_grid").get<std::vector<double>>();
  for (const auto& e : j.at("samples")) {
    report.entries.push_back(SeverityEntry{
        e.at("index").get<std::size_t>(), e.at("amplitude_distance").get<double>(),
        e.at("phase_distance").get<double>(),
        severity_from_name(e.at("amplitude_severity").get<std::string>()),
        severity_from_name(e.at("phase_severity").get<std::string>()),
        e.at("translation_outlier").get<bool>()});
  }
  for (const auto& flags : j.at("amplitude_flags_per_k")) {
    report.amp_flags_per_k.push_back(detail::indices_from(flags));
  }
  for (const auto& flags : j.at("phase_flags_per_k")) {
    report.phase_flags_per_k.push_back(detail::indices_from(flags));
  }
  return report;
}

inline Json to_json(const Report& report) {
  Json j;
  j["labels"] = report.labels;
  j["time_min"] = report.time_min;
  j["time_max"] = report.time_max;
  j["decomposition"] = to_json(report.decomposition);
  if (report.amplitude_box) j["amplitude_boxplot"] = to_json(*report.amplitude_box);
  if (report.phase_box) j["phase_boxplot"] = to_json(*report.phase_box);
  if (report.translation_box) j["translation_boxplot"] = to_json(*report.translation_box);
  if (report.amplitude_surface) j["amplitude_surface"] = to_json(*report.amplitude_surface);
  if (report.phase_surface) j["phase_surface"] = to_json(*report.phase_surface);
  if (report.severity) j["severity"] = to_json(*report.severity);
  return j;
}

inline Report report_from_json(const Json& j) {
  Report report{j.at("labels").get<std::vector<std::string>>(),
                j.at("time_min").get<double>(),
                j.at("time_max").get<double>(),
                decomposition_from_json(j.at("decomposition")),
                std::nullopt,
                std::nullopt,
                std::nullopt,
                std::nullopt,
                std::nullopt,
                std::nullopt};
  if (j.contains("amplitude_boxplot")) {
    report.amplitude_box = amplitude_box_from_json(j.at("amplitude_boxplot"), report.decomposition);
  }
  if (j.contains("phase_boxplot")) {
    report.phase_box = phase_box_from_json(j.at("phase_boxplot"), report.decomposition);
  }
  if (j.contains("translation_boxplot")) {
    report.translation_box = translation_box_from_json(j.at("translation_boxplot"));
  }
  if (j.contains("amplitude_surface")) {
    report.amplitude_surface = surface_from_json(j.at("amplitude_surface"));
  }
  if (j.contains("phase_surface")) {
    report.phase_surface = surface_from_json(j.at("phase_surface"));
  }
  if (j.contains("severity")) report.severity = severity_from_json(j.at("severity"));
  return report;
}

inline std::string serialize_report(const Report& report) { return to_json(report).dump(2) + "\n"; }

inline Json to_json(const SimulationReport& report) {
  Json j;
  j["sim_id"] = report.config.sim_id;
  j["seed"] = report.config.seed;
  j["n_functions"] = report.config.n_functions;
  j["n_replicates"] = report.config.n_replicates;
  j["grid_size"] = report.config.grid_size;
  j["lambda"] = report.config.lambda;
  j["replicates_used"] = report.replicates_used;
  j["replicates_failed"] = report.replicates_failed;
  if (!report.first_failure.empty()) j["first_failure"] = report.first_failure;
  auto rows = [](const std::vector<DetectionSummary>& summaries) {
    Json arr = Json::array();
    for (const auto& s : summaries) {
      Json row;
      row["k"] = s.k;
      if (s.p_c_mean) {
        row["p_c_mean"] = *s.p_c_mean;
        row["p_c_sd"] = *s.p_c_sd;
      }
      row["p_f_mean"] = s.p_f_mean;
      row["p_f_sd"] = s.p_f_sd;
      arr.push_back(std::move(row));
    }
    return arr;
  };
  j["amplitude"] = rows(report.amplitude);
  j["phase"] = rows(report.phase);
  return j;
}

}  // namespace elastic
