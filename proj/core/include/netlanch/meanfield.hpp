#pragma once

#include <cstddef>
#include <vector>

#include "netlanch/types.hpp"

/// Two-group mean-field reduction of the engagement-only model: Red splits
/// into groups of n1 and n2 nodes that attack k1 and k2 Blue nodes each,
/// against n Blue nodes attacked at random. Provides the closed-form
/// invariant, the optimal split and the resulting victory conditions, and is
/// used as an analytic oracle for the network engine.
namespace netlanch::meanfield {

struct MeanFieldSpec {
  double n{2};
  double n1{1};
  double n2{1};
  double k1{1};
  double k2{1};
  double kappa_R{1.0};
  double kappa_B{1.0};
  double R0{1.0};
  double B0{1.0};

  /// Total attacks L = n1 k1 + n2 k2.
  [[nodiscard]] double links() const noexcept { return n1 * k1 + n2 * k2; }
  void validate() const;
};

struct MeanFieldState {
  double R1{0.0};
  double R2{0.0};
  double B{0.0};
};

/// dR1 = -kB k1 B n/L, dR2 = -kB k2 B n/L,
/// dB  = -kR (L1/n)(R1/k1) - kR (L2/n)(R2/k2).
[[nodiscard]] MeanFieldState meanfield_rhs(const MeanFieldState& s, const MeanFieldSpec& spec);

/// -kR (L/n^2)((n1/k1) R1^2 + (n2/k2) R2^2) + kB B^2; conserved by meanfield_rhs.
[[nodiscard]] double meanfield_invariant(const MeanFieldState& s, const MeanFieldSpec& spec);

/// f(k1, k2, n1) = (L/n^2)(n1/k1 + n2/k2) with n2 = n - n1. Real arguments.
[[nodiscard]] double split_objective(double k1, double k2, double n1, double n);

struct Split {
  std::size_t n1{0};
  std::size_t k1{0};
  std::size_t k2{0};
  /// False when n is odd and n1 is the floor of n/2.
  bool exact{true};
};

/// Maximiser of split_objective over integer splits: (n/2, 1, n).
[[nodiscard]] Split optimal_split(std::size_t n);

/// 1/2 + n/4 + 1/(4n): Red's effective square-law multiplier at the optimal split.
[[nodiscard]] double victory_factor(double n);

/// Left minus right side of Red's victory condition; positive predicts a Red
/// win. Optimised: kR R0^2 victory_factor(n) vs kB B0^2; otherwise kR R0^2 vs kB B0^2.
[[nodiscard]] double victory_margin(double n, double kappa_R, double kappa_B, double R0, double B0, bool optimized);

/// Victory margin for an arbitrary split: kR R0^2 f(k1, k2, n1) - kB B0^2.
/// Equals the optimised form at the optimal split and the plain square law
/// when k1 = k2.
[[nodiscard]] double victory_margin(const MeanFieldSpec& spec);

/// Red force (relative to the non-optimised requirement) that suffices at the
/// optimal split, 1/sqrt(victory_factor(n)); tends to 2/sqrt(n).
[[nodiscard]] double required_force_fraction(double n);

struct Sample {
  double t{0.0};
  MeanFieldState state;
};

/// RK4 on the mean-field equations. With `stop_at_zero`, integration ends at
/// the first step where B or both Red groups become non-positive.
[[nodiscard]] std::vector<Sample> integrate(const MeanFieldSpec& spec, double dt, double t_end,
                                            bool stop_at_zero = true);

/// Network realisation of a two-group split with no manoeuvre links: Red
/// nodes [0, n1) attack k1 Blue nodes each, [n1, n) attack k2 each. Targets
/// are dealt cyclically so Blue attack counts differ by at most one.
[[nodiscard]] Topology split_topology(std::size_t n, std::size_t n1, std::size_t k1, std::size_t k2);

}  // namespace netlanch::meanfield
