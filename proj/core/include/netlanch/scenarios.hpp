#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "netlanch/integrator.hpp"
#include "netlanch/metrics.hpp"
#include "netlanch/optimizer.hpp"
#include "netlanch/types.hpp"

namespace netlanch {

// --- Two Blue against four Red ----------------------------------------------

/// Reserve arrangements for the 2-vs-4 study. Red nodes 0, 1 are combat
/// units (engaging Blue 0 and 1 respectively); 2, 3 are reserves.
enum class CaseId {
  equal_plus_reserves = 1,  ///< R_combat = 1/2, reserves f_R/2 each
  equal_total = 2,          ///< R_combat = f_R/2, reserves max(0, (1 - f_R)/2)
  extra_reserves = 3,       ///< every Red node f_R/2
};

[[nodiscard]] CaseId case_from_int(int id);
[[nodiscard]] std::string_view to_string(CaseId c) noexcept;

/// Default Red manoeuvre wiring: reserve 2 - combat 0, reserve 3 - combat 1,
/// reserve 2 - reserve 3.
[[nodiscard]] std::vector<Edge> default_case_wiring();

struct CaseStudySpec {
  CaseId case_id{CaseId::extra_reserves};
  double f_R{0.8};
  double kappa_R{0.9};
  std::vector<Edge> red_wiring{default_case_wiring()};
  /// kappa_R is overwritten from the field above.
  BattleConfig config{};
};

[[nodiscard]] ScenarioSpec build_case_study(const CaseStudySpec& spec);

enum class Winner { Blue, Red, stalemate };

[[nodiscard]] std::string_view to_string(Winner w) noexcept;

/// Winner recorded in an integration outcome.
[[nodiscard]] Winner winner_of(const IntegrationOutcome& outcome) noexcept;

/// Integrates the scenario; the winner is the side whose opponent's combat
/// force is annihilated first. Stalemate if neither is by the horizon.
[[nodiscard]] Winner winner(const ScenarioSpec& spec);

struct Bracket {
  double lo{0.0};
  double hi{0.0};
};

/// Bisection on kappa_R until the bracket is narrower than `tol`; returns the
/// midpoint. Throws ConfigError when both ends give the same winner.
[[nodiscard]] double critical_kappa(const CaseStudySpec& base, Bracket bracket, double tol);

struct CriticalPoint {
  double f_R{0.0};
  /// Unset when the bracket does not straddle a change of winner.
  std::optional<double> kappa_star;
};

[[nodiscard]] std::vector<CriticalPoint> critical_curve(const CaseStudySpec& base, const std::vector<double>& f_values,
                                                        Bracket bracket, double tol, std::size_t workers = 1);

// --- Battle-outcome heatmaps ------------------------------------------------

enum class Param { kappa_R, kappa_B, gamma_R, gamma_B };

[[nodiscard]] std::string_view to_string(Param p) noexcept;
[[nodiscard]] Param param_from_string(std::string_view s);
void set_param(BattleConfig& config, Param p, double value);

struct Axis {
  Param param{Param::kappa_R};
  double min{0.0};
  double max{2.0};
  std::size_t count{21};

  [[nodiscard]] std::vector<double> values() const;
};

struct TopologySource {
  enum class Kind { optimized, random_seed } kind{Kind::random_seed};
  double lambda{0.5};
};

struct HeatmapSpec {
  Axis x{Param::kappa_R, 0.0, 2.0, 21};
  Axis y{Param::kappa_B, 0.0, 2.0, 21};
  std::map<Param, double> overrides;
  TopologySource source;
  std::size_t workers{1};

  void validate() const;
};

struct HeatmapGrid {
  std::vector<double> xs;
  std::vector<double> ys;
  /// values[iy * xs.size() + ix] = red_mean - blue_mean at (xs[ix], ys[iy]).
  std::vector<double> values;

  [[nodiscard]] double at(std::size_t ix, std::size_t iy) const { return values.at(iy * xs.size() + ix); }
};

/// Integrates `base` (its topology and initial state held fixed) at every grid
/// point after applying the overrides and the two axis parameters.
[[nodiscard]] HeatmapGrid heatmap(const HeatmapSpec& spec, const ScenarioSpec& base);

/// Blue and Red swap roles: topology, initial state and the side-specific
/// rates.
[[nodiscard]] ScenarioSpec mirrored_scenario(const ScenarioSpec& spec);

/// `count` random seed networks (topology RNG derive_seed(seed, k)) at a
/// uniform initial level. With `add_mirrors`, each network is followed by its
/// mirror, doubling the ensemble.
[[nodiscard]] std::vector<ScenarioSpec> random_ensemble(std::size_t n, std::size_t l_manoeuvre, std::size_t l_engage,
                                                        const BattleConfig& config, double level, std::uint64_t seed,
                                                        std::size_t count, bool add_mirrors);

/// Cell-wise mean of heatmap() over several scenarios.
[[nodiscard]] HeatmapGrid heatmap_ensemble(const HeatmapSpec& spec, const std::vector<ScenarioSpec>& ensemble);

// --- Optimisation sweeps ----------------------------------------------------

/// Everything needed to run replicated optimisations from random seed networks.
struct OptimizationSetup {
  std::size_t n{50};
  std::size_t l_manoeuvre{100};
  std::size_t l_engage{10};
  BattleConfig config{};
  double initial_level{1.0};
  MoveSet moves{};
  std::size_t iterations{100000};
  std::uint64_t seed{1};
  std::size_t replicas{20};
  std::size_t best_k{5};
  std::size_t sacrificial_threshold{10};
  std::size_t workers{1};

  void validate() const;
};

/// Seed topology + initial state for replica `r`. The topology RNG is
/// derive_seed(seed, 2r); the optimiser RNG is derive_seed(seed, 2r + 1).
[[nodiscard]] ScenarioSpec seeded_scenario(const OptimizationSetup& setup, std::size_t replica);
[[nodiscard]] std::uint64_t optimizer_seed(const OptimizationSetup& setup, std::size_t replica) noexcept;

struct ReplicaResult {
  double lambda{0.0};
  double kappa_R{0.0};
  std::size_t replica{0};
  std::uint64_t topology_seed{0};
  std::uint64_t optimizer_seed{0};
  OptimizationRun run;
  StructuralMetrics metrics;
  StructuralMetrics seed_metrics;
};

struct SweepRow {
  double lambda{0.0};
  double kappa_R{0.0};
  std::size_t replicas{0};
  std::size_t best_k{0};
  /// Replica indices of the top-ranked runs, best first.
  std::vector<std::size_t> selected;
  StructuralMetrics best;
  /// Same averages for the seed networks of the selected runs.
  StructuralMetrics seed;
};

/// Rank replica results by best utility (ties by replica index) and keep the
/// first `best_k`.
[[nodiscard]] std::vector<std::size_t> rank_replicas(const std::vector<ReplicaResult>& results, std::size_t best_k);

/// For each lambda: optimise `replicas` seeds, rank by utility and average the
/// metrics of the best `best_k`. Replica results are appended to `all` if given.
[[nodiscard]] std::vector<SweepRow> lambda_sweep(const OptimizationSetup& setup, const std::vector<double>& lambdas,
                                                 std::vector<ReplicaResult>* all = nullptr);

/// Same as lambda_sweep at fixed lambda, varying Red's kill rate.
[[nodiscard]] std::vector<SweepRow> kappa_sweep(const OptimizationSetup& setup, double lambda,
                                                const std::vector<double>& kappas,
                                                std::vector<ReplicaResult>* all = nullptr);

}  // namespace netlanch
