#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "netlanch/meanfield.hpp"
#include "netlanch/scenarios.hpp"
#include "netlanch/topology_io.hpp"

namespace netlanch {

/// Random seed network used when a manifest gives no explicit topology.
struct RandomNetworkSection {
  std::size_t n{50};
  std::size_t l_manoeuvre{100};
  std::size_t l_engage{10};
  std::uint64_t seed{1};
  double initial_level{1.0};
};

struct OptimizerSection {
  double lambda{0.5};
  std::vector<double> lambdas{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::vector<double> kappas{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  std::size_t iterations{100000};
  std::uint64_t seed{1};
  std::size_t replicas{20};
  std::size_t best_k{5};
  std::size_t sacrificial_threshold{10};
  MoveSet moves{};
};

struct HeatmapSection {
  HeatmapSpec spec{};
  /// Number of random seed networks averaged per cell.
  std::size_t ensemble{1};
  /// Also add each network's mirror (Blue and Red swapped) to the ensemble.
  bool mirrored{false};
};

struct CaseStudySection {
  CaseStudySpec spec{};
  std::vector<double> f_values{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0, 1.1, 1.2, 1.3, 1.4, 1.5};
  Bracket bracket{0.0, 4.0};
  double tol{1e-3};
};

struct MeanFieldSection {
  meanfield::MeanFieldSpec spec{10, 5, 5, 1, 10, 1.0, 1.0, 1.0, 1.0};
  double dt{0.01};
  double t_end{50.0};
};

struct OutputSection {
  std::string dir{"out"};
  std::size_t workers{1};
  /// Trajectory sampling stride in steps; 0 picks one automatically.
  std::size_t record_every{0};
  /// Data file format, "csv" or "json".
  std::string format{"csv"};
};

/// Everything a CLI run needs. Sections not relevant to the chosen command
/// are carried along with their defaults.
struct RunManifest {
  BattleConfig battle{};
  std::optional<Topology> topology;
  std::optional<ForceState> initial;
  RandomNetworkSection random{};
  OptimizerSection optimizer{};
  HeatmapSection heatmap{};
  CaseStudySection case_study{};
  MeanFieldSection meanfield{};
  OutputSection output{};
};

/// Every problem found in `j`, each prefixed with its JSON pointer. Unknown
/// keys are reported too.
[[nodiscard]] std::vector<std::string> validate_config(const Json& j);

/// Parses a manifest; throws ConfigError listing every problem.
[[nodiscard]] RunManifest parse_manifest(const Json& j);

/// Parses manifest text. Syntax errors are reported with line and column.
[[nodiscard]] RunManifest parse_manifest_text(const std::string& text, const std::string& source = "<input>");

[[nodiscard]] Json manifest_to_json(const RunManifest& m);

/// The default manifest, fully expanded.
[[nodiscard]] Json default_manifest();

[[nodiscard]] Json battle_config_to_json(const BattleConfig& c);
[[nodiscard]] Json move_set_to_json(const MoveSet& m);

/// Scenario from the manifest: the explicit topology if given, otherwise a
/// random seed network; the explicit initial state if given, otherwise
/// uniform at random.initial_level.
[[nodiscard]] ScenarioSpec scenario_from_manifest(const RunManifest& m);

[[nodiscard]] OptimizationSetup optimization_setup(const RunManifest& m);

}  // namespace netlanch
