#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "netlanch/model.hpp"
#include "netlanch/types.hpp"

namespace netlanch {

/// Classical fourth-order Runge-Kutta over a packed state vector. `f` is any
/// callable `f(std::span<const double> y, std::span<double> dy)`.
class Rk4 {
 public:
  explicit Rk4(std::size_t dim) : k1_(dim), k2_(dim), k3_(dim), k4_(dim), tmp_(dim) {}

  /// Advance `y` by `h`. `k1` must already hold f(y) (callers usually need it
  /// for a residual check anyway).
  template <class F>
  void step_from(std::span<double> y, std::span<const double> k1, double h, F&& f) {
    const std::size_t n = y.size();
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + 0.5 * h * k1[i];
    f(std::span<const double>(tmp_), std::span<double>(k2_));
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + 0.5 * h * k2_[i];
    f(std::span<const double>(tmp_), std::span<double>(k3_));
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + h * k3_[i];
    f(std::span<const double>(tmp_), std::span<double>(k4_));
    const double h6 = h / 6.0;
    for (std::size_t i = 0; i < n; ++i) y[i] += h6 * (k1[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
  }

  template <class F>
  void step(std::span<double> y, double h, F&& f) {
    f(std::span<const double>(y), std::span<double>(k1_));
    step_from(y, std::span<const double>(k1_), h, f);
  }

 private:
  std::vector<double> k1_, k2_, k3_, k4_, tmp_;
};

enum class TerminationReason { converged, horizon, annihilation_blue, annihilation_red };

[[nodiscard]] std::string_view to_string(TerminationReason r) noexcept;

/// Summary of one integration without the sampled path.
struct IntegrationOutcome {
  ForceState terminal;
  TerminationReason reason{TerminationReason::horizon};
  /// The rhs max-norm fell below term_tol before the horizon.
  bool equilibrated{false};
  double final_rhs_norm{0.0};
  std::size_t steps{0};
  /// First time the side's combat force (mean over its engaged nodes) fell
  /// below annihilation_tol.
  std::optional<double> blue_annihilated_at;
  std::optional<double> red_annihilated_at;
};

struct Trajectory {
  std::vector<double> sample_times;
  std::vector<ForceState> states;
  ForceState terminal;
  TerminationReason termination_reason{TerminationReason::horizon};
  IntegrationOutcome outcome;
};

/// One RK4 step of the networked model; time advances by dt. Throws
/// NumericalError on a non-finite result.
[[nodiscard]] ForceState rk4_step(const ForceState& state, const ScenarioSpec& spec, double dt);

/// Integrate until the battle settles or the horizon is reached:
///  - converged: rhs max-norm < term_tol with neither combat force annihilated;
///  - annihilation_blue / annihilation_red: that side's combat force dropped
///    below annihilation_tol first; integration then continues until the rhs
///    max-norm drops below term_tol (reserves equilibrating) or the horizon;
///  - horizon: t reached t_max with neither of the above.
///
/// `record_every` is the sampling stride in steps; 0 picks a stride giving at
/// most 2000 samples. The terminal state is always the last sample.
[[nodiscard]] Trajectory integrate(const ScenarioSpec& spec, std::size_t record_every = 0);

/// Same termination logic as integrate() but keeps only the terminal state.
[[nodiscard]] IntegrationOutcome settle(const ScenarioSpec& spec);

/// Mean force over the side's engaged nodes; nullopt if it has none.
[[nodiscard]] std::optional<double> combat_mean(const ForceState& state, const Topology& topo, Side side);

}  // namespace netlanch
