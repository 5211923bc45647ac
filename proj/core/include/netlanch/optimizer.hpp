#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string_view>
#include <vector>

#include "netlanch/integrator.hpp"
#include "netlanch/types.hpp"

namespace netlanch {

using Rng = std::mt19937_64;

/// splitmix64 finaliser; derives independent per-replica seeds from a base seed.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) noexcept;

struct UtilityParams {
  double lambda{0.5};
  /// Mean Blue force at t = 0, B(0).
  double initial_blue_mean{1.0};

  void validate() const;
};

/// lambda * mean(R) + (1 - lambda) * (B(0) - mean(B)).
[[nodiscard]] double utility(const ForceState& terminal, const UtilityParams& params);

struct MoveSet {
  double p_manoeuvre{0.5};
  double p_engage_rewire{0.25};
  double p_engage_add{0.125};
  double p_engage_remove{0.125};
  /// Off freezes the number of engagement links (add/remove never drawn).
  bool allow_link_count_change{true};

  [[nodiscard]] std::vector<std::string> problems() const;
  void validate() const;
};

enum class MoveKind { manoeuvre_rewire, engage_rewire, engage_add, engage_remove };

[[nodiscard]] std::string_view to_string(MoveKind k) noexcept;

/// Both sides get n nodes; the two manoeuvre networks are independent uniform
/// random simple graphs with exactly `l_manoeuvre` links, and `l_engage`
/// distinct Blue-Red pairs are drawn uniformly from the n*n slots.
[[nodiscard]] Topology seed_topology(std::size_t n, std::size_t l_manoeuvre, std::size_t l_engage, Rng& rng);

struct Proposal {
  Topology topology;
  MoveKind kind{MoveKind::manoeuvre_rewire};
};

/// One random modification of Red's configuration. Rewires move a uniformly
/// chosen link to a uniformly chosen vacancy; add fills a vacancy; remove
/// deletes a link. Move classes that are infeasible for `topo` are skipped
/// and the class is redrawn among the feasible ones. Blue's manoeuvre network
/// is never touched.
[[nodiscard]] Proposal propose_move(const Topology& topo, const MoveSet& moves, Rng& rng);

struct TraceRecord {
  std::size_t iteration{0};
  double utility{0.0};
  double blue_mean{0.0};
  double red_mean{0.0};
  bool accepted{false};
  std::size_t l_rb{0};
};

struct OptimizationRun {
  std::uint64_t seed{0};
  std::size_t iterations{0};
  Topology seed_topology;
  double seed_utility{0.0};
  Topology best_topology;
  double best_utility{0.0};
  IntegrationOutcome best_outcome;
  /// One record per proposal: the proposal's evaluated utility and means.
  std::vector<TraceRecord> trace;
  std::size_t accepted{0};
  /// Proposals whose integration blew up (rejected).
  std::size_t aborted{0};
};

struct OptimizeOptions {
  std::size_t iterations{0};
  std::uint64_t seed{0};
  /// Called every `progress_every` iterations when set.
  std::function<void(std::size_t iteration, double best_utility)> progress;
  std::size_t progress_every{1000};
};

/// Stochastic hill-climbing on Red's manoeuvre and engagement networks.
/// Each iteration proposes one move from the current configuration,
/// integrates it to its terminal state and keeps it only if the utility
/// strictly improves; otherwise the previous configuration is restored.
[[nodiscard]] OptimizationRun optimize(const ScenarioSpec& spec, const UtilityParams& params, const MoveSet& moves,
                                       const OptimizeOptions& options);

[[nodiscard]] OptimizationRun optimize(const ScenarioSpec& spec, const UtilityParams& params, const MoveSet& moves,
                                       std::size_t iterations, std::uint64_t seed);

}  // namespace netlanch
