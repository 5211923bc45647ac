#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "netlanch/types.hpp"

namespace netlanch {

/// Smoothed Heaviside step (1 + tanh(x / eps)) / 2.
[[nodiscard]] inline double smoothed_step(double x, double eps) noexcept {
  return 0.5 * (1.0 + std::tanh(x / eps));
}

struct ForceTotals {
  double sum{0.0};
  double mean{0.0};
};

/// Raw sum and per-node mean of one side. The mean of an empty side is 0.
[[nodiscard]] ForceTotals total_force(const ForceState& state, Side side) noexcept;

/// Manoeuvre weight 1 / (S + eps_delta), where S is the summed resource of
/// the adversary nodes engaged with `node`. Negative (smeared-out) adversary
/// totals are clamped to zero.
[[nodiscard]] double manoeuvre_weight(std::size_t node, Side side, const ForceState& state, const Topology& topo,
                                      const BattleConfig& config);

struct Derivative {
  std::vector<double> blue;
  std::vector<double> red;
};

/// Precompiled form of a Topology + BattleConfig for repeated right-hand-side
/// evaluation. Edge lists replace the dense matrices so one evaluation costs
/// O(N + L) instead of O(N^2).
///
/// Each side's derivative is
///
///   dx_i = -gamma * sum_j A_ij (delta_i x_i - delta_j x_j) T(x_i - floor) T(x_j - floor)
///          -kappa' * sum_m E_im (y_m / k_m) T(x_i) T(y_m)
///
/// with T the smoothed step, delta the manoeuvre weight, kappa' the
/// adversary's kill rate and k_m the engagement degree of the attacking node
/// m. Attackers with no engagement links contribute nothing.
class BattleSystem {
 public:
  BattleSystem(const Topology& topo, const BattleConfig& config);

  /// Per-evaluation scratch. One per thread.
  struct Workspace {
    std::vector<double> step_blue, step_red;          // T(x)
    std::vector<double> step_blue_sh, step_red_sh;    // T(x - floor)
    std::vector<double> weighted_blue, weighted_red;  // delta * x
  };

  [[nodiscard]] std::size_t n_blue() const noexcept { return n_blue_; }
  [[nodiscard]] std::size_t n_red() const noexcept { return n_red_; }
  [[nodiscard]] std::size_t dimension() const noexcept { return n_blue_ + n_red_; }
  [[nodiscard]] const BattleConfig& config() const noexcept { return config_; }

  [[nodiscard]] Workspace make_workspace() const;

  /// `y` is the packed state (blue nodes first, then red); writes dy.
  void evaluate(std::span<const double> y, std::span<double> dy, Workspace& ws) const;

  [[nodiscard]] Derivative evaluate(const ForceState& state) const;

  /// Engagement degree of each node, as used for fire splitting.
  [[nodiscard]] const std::vector<std::size_t>& engagement_degree(Side s) const noexcept {
    return s == Side::Blue ? deg_blue_ : deg_red_;
  }

 private:
  std::size_t n_blue_;
  std::size_t n_red_;
  BattleConfig config_;
  std::vector<Edge> blue_edges_;
  std::vector<Edge> red_edges_;
  std::vector<Edge> engage_edges_;
  std::vector<std::size_t> deg_blue_;
  std::vector<std::size_t> deg_red_;
  std::vector<double> inv_deg_blue_;
  std::vector<double> inv_deg_red_;
};

/// Convenience form: compiles the topology and evaluates once.
[[nodiscard]] Derivative rhs(const ForceState& state, const Topology& topo, const BattleConfig& config);

/// Pack a ForceState into the (blue, red) layout used by BattleSystem.
[[nodiscard]] std::vector<double> pack(const ForceState& state);
[[nodiscard]] ForceState unpack(std::span<const double> y, std::size_t n_blue, double time);

}  // namespace netlanch
