#include "netlanch/meanfield.hpp"

#include <array>
#include <cmath>
#include <span>
#include <string>

#include "netlanch/integrator.hpp"

namespace netlanch::meanfield {

void MeanFieldSpec::validate() const {
  if (!(n > 0 && n1 >= 0 && n2 >= 0)) throw ConfigError("group sizes must be non-negative and n > 0");
  if (std::abs(n1 + n2 - n) > 1e-9) throw ConfigError("n1 + n2 must equal n");
  if (!(k1 > 0 && k2 > 0)) throw ConfigError("k1 and k2 must be positive");
  if (!(kappa_R >= 0 && kappa_B >= 0)) throw ConfigError("kill rates must be >= 0");
}

MeanFieldState meanfield_rhs(const MeanFieldState& s, const MeanFieldSpec& spec) {
  const double L = spec.links();
  if (!(L > 0)) throw ConfigError("mean-field model needs L = n1 k1 + n2 k2 > 0");
  const double n = spec.n;
  const double L1 = spec.n1 * spec.k1;
  const double L2 = spec.n2 * spec.k2;
  MeanFieldState d;
  d.R1 = -spec.kappa_B * spec.k1 * s.B * n / L;
  d.R2 = -spec.kappa_B * spec.k2 * s.B * n / L;
  d.B = -spec.kappa_R * (L1 / n) * (s.R1 / spec.k1) - spec.kappa_R * (L2 / n) * (s.R2 / spec.k2);
  return d;
}

double meanfield_invariant(const MeanFieldState& s, const MeanFieldSpec& spec) {
  const double n = spec.n;
  const double L = spec.links();
  const double red = (spec.n1 / spec.k1) * s.R1 * s.R1 + (spec.n2 / spec.k2) * s.R2 * s.R2;
  return -spec.kappa_R * (L / (n * n)) * red + spec.kappa_B * s.B * s.B;
}

double split_objective(double k1, double k2, double n1, double n) {
  const double n2 = n - n1;
  const double L = n1 * k1 + n2 * k2;
  return L / (n * n) * (n1 / k1 + n2 / k2);
}

Split optimal_split(std::size_t n) {
  if (n < 2) throw ConfigError("optimal_split needs n >= 2");
  return Split{n / 2, 1, n, n % 2 == 0};
}

double victory_factor(double n) { return 0.5 + n / 4.0 + 1.0 / (4.0 * n); }

double victory_margin(double n, double kappa_R, double kappa_B, double R0, double B0, bool optimized) {
  if (!(n >= 1)) throw ConfigError("victory_margin needs n >= 1");
  const double factor = optimized ? victory_factor(n) : 1.0;
  return kappa_R * R0 * R0 * factor - kappa_B * B0 * B0;
}

double victory_margin(const MeanFieldSpec& spec) {
  spec.validate();
  const double f = split_objective(spec.k1, spec.k2, spec.n1, spec.n);
  return spec.kappa_R * spec.R0 * spec.R0 * f - spec.kappa_B * spec.B0 * spec.B0;
}

double required_force_fraction(double n) { return 1.0 / std::sqrt(victory_factor(n)); }

std::vector<Sample> integrate(const MeanFieldSpec& spec, double dt, double t_end, bool stop_at_zero) {
  spec.validate();
  if (!(dt > 0)) throw ConfigError("dt must be > 0");
  std::array<double, 3> y{spec.R0, spec.R0, spec.B0};
  Rk4 rk(3);
  auto f = [&](std::span<const double> in, std::span<double> out) {
    const auto d = meanfield_rhs({in[0], in[1], in[2]}, spec);
    out[0] = d.R1;
    out[1] = d.R2;
    out[2] = d.B;
  };
  std::vector<Sample> out;
  out.push_back({0.0, {y[0], y[1], y[2]}});
  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
  for (std::size_t k = 1; k <= steps; ++k) {
    rk.step(std::span<double>(y), dt, f);
    out.push_back({static_cast<double>(k) * dt, {y[0], y[1], y[2]}});
    if (stop_at_zero && (y[2] <= 0.0 || (y[0] <= 0.0 && y[1] <= 0.0))) break;
  }
  return out;
}

Topology split_topology(std::size_t n, std::size_t n1, std::size_t k1, std::size_t k2) {
  if (n1 > n) throw ConfigError("n1 exceeds n");
  if (k1 < 1 || k2 < 1 || k1 > n || k2 > n) throw ConfigError("k1, k2 must lie in [1, n]");
  Topology topo(n, n);
  std::size_t cursor = 0;
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t k = r < n1 ? k1 : k2;
    for (std::size_t j = 0; j < k; ++j) topo.engagement.set((cursor + j) % n, r, true);
    cursor = (cursor + k) % n;
  }
  return topo;
}

}  // namespace netlanch::meanfield
