#include "netlanch/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace netlanch {

std::string_view to_string(TerminationReason r) noexcept {
  switch (r) {
    case TerminationReason::converged: return "converged";
    case TerminationReason::horizon: return "horizon";
    case TerminationReason::annihilation_blue: return "annihilation_blue";
    case TerminationReason::annihilation_red: return "annihilation_red";
  }
  return "unknown";
}

ForceState rk4_step(const ForceState& state, const ScenarioSpec& spec, double dt) {
  if (!(dt > 0.0)) throw ConfigError("dt must be > 0");
  const BattleSystem sys(spec.topology, spec.config);
  if (state.blue.size() != sys.n_blue() || state.red.size() != sys.n_red())
    throw ConfigError("state dimensions do not match topology");
  auto ws = sys.make_workspace();
  auto y = pack(state);
  Rk4 rk(y.size());
  rk.step(std::span<double>(y), dt, [&](std::span<const double> in, std::span<double> out) { sys.evaluate(in, out, ws); });
  ForceState next = unpack(y, sys.n_blue(), state.time + dt);
  if (!next.all_finite()) throw NumericalError("non-finite state after RK4 step at t=" + std::to_string(state.time));
  return next;
}

namespace {

struct CombatIndex {
  std::vector<std::size_t> blue;
  std::vector<std::size_t> red;
};

CombatIndex engaged_nodes(const Topology& topo) {
  CombatIndex c;
  const auto db = topo.engagement.row_degrees();
  const auto dr = topo.engagement.col_degrees();
  for (std::size_t i = 0; i < db.size(); ++i)
    if (db[i] > 0) c.blue.push_back(i);
  for (std::size_t m = 0; m < dr.size(); ++m)
    if (dr[m] > 0) c.red.push_back(m);
  return c;
}

double mean_over(std::span<const double> y, std::size_t offset, const std::vector<std::size_t>& nodes) {
  double s = 0.0;
  for (auto k : nodes) s += y[offset + k];
  return s / static_cast<double>(nodes.size());
}

using Recorder = std::function<void(std::span<const double>, double)>;

IntegrationOutcome run(const ScenarioSpec& spec, std::size_t stride, const Recorder& record) {
  spec.validate();
  const BattleConfig& cfg = spec.config;
  const BattleSystem sys(spec.topology, cfg);
  const std::size_t n_blue = sys.n_blue();
  const CombatIndex combat = engaged_nodes(spec.topology);
  auto ws = sys.make_workspace();
  auto f = [&](std::span<const double> in, std::span<double> out) { sys.evaluate(in, out, ws); };

  std::vector<double> y = pack(spec.initial);
  std::vector<double> k1(y.size());
  Rk4 rk(y.size());

  const auto max_steps = static_cast<std::size_t>(std::ceil(cfg.t_max / cfg.dt - 1e-9));
  const double t0 = spec.initial.time;
  IntegrationOutcome out;
  std::size_t step = 0;
  double t = t0;

  if (record) record(y, t);
  for (;;) {
    f(y, k1);
    double norm = 0.0;
    for (double v : k1) norm = std::max(norm, std::abs(v));
    if (!std::isfinite(norm)) {
      std::ostringstream os;
      os << "non-finite right-hand side at t=" << t;
      throw NumericalError(os.str());
    }
    out.final_rhs_norm = norm;

    if (!out.blue_annihilated_at && !combat.blue.empty() && mean_over(y, 0, combat.blue) < cfg.annihilation_tol)
      out.blue_annihilated_at = t;
    if (!out.red_annihilated_at && !combat.red.empty() &&
        mean_over(y, n_blue, combat.red) < cfg.annihilation_tol)
      out.red_annihilated_at = t;

    if (norm < cfg.term_tol) {
      out.equilibrated = true;
      break;
    }
    if (step >= max_steps) break;

    rk.step_from(std::span<double>(y), std::span<const double>(k1), cfg.dt, f);
    ++step;
    t = t0 + static_cast<double>(step) * cfg.dt;
    for (double v : y) {
      if (!std::isfinite(v)) {
        std::ostringstream os;
        os << "integration blew up at t=" << t << " (dt=" << cfg.dt << ")";
        throw NumericalError(os.str());
      }
    }
    if (record && step % stride == 0) record(y, t);
  }

  out.steps = step;
  out.terminal = unpack(y, n_blue, t);

  const auto& ba = out.blue_annihilated_at;
  const auto& ra = out.red_annihilated_at;
  if (ba && ra) {
    if (*ba < *ra) {
      out.reason = TerminationReason::annihilation_blue;
    } else if (*ra < *ba) {
      out.reason = TerminationReason::annihilation_red;
    } else {
      // Same step: the side with less left is taken as the first to go.
      const double mb = mean_over(y, 0, combat.blue);
      const double mr = mean_over(y, n_blue, combat.red);
      out.reason = mb <= mr ? TerminationReason::annihilation_blue : TerminationReason::annihilation_red;
    }
  } else if (ba) {
    out.reason = TerminationReason::annihilation_blue;
  } else if (ra) {
    out.reason = TerminationReason::annihilation_red;
  } else {
    out.reason = out.equilibrated ? TerminationReason::converged : TerminationReason::horizon;
  }
  return out;
}

}  // namespace

Trajectory integrate(const ScenarioSpec& spec, std::size_t record_every) {
  spec.validate();
  std::size_t stride = record_every;
  if (stride == 0) {
    const auto max_steps = static_cast<std::size_t>(std::ceil(spec.config.t_max / spec.config.dt - 1e-9));
    stride = std::max<std::size_t>(1, (max_steps + 1997) / 1998);
  }
  Trajectory traj;
  const std::size_t n_blue = spec.topology.n_blue();
  Recorder rec = [&](std::span<const double> y, double t) {
    traj.sample_times.push_back(t);
    traj.states.push_back(unpack(y, n_blue, t));
  };
  traj.outcome = run(spec, stride, rec);
  if (traj.sample_times.empty() || traj.sample_times.back() < traj.outcome.terminal.time) {
    traj.sample_times.push_back(traj.outcome.terminal.time);
    traj.states.push_back(traj.outcome.terminal);
  }
  traj.terminal = traj.outcome.terminal;
  traj.termination_reason = traj.outcome.reason;
  return traj;
}

IntegrationOutcome settle(const ScenarioSpec& spec) { return run(spec, 1, Recorder{}); }

std::optional<double> combat_mean(const ForceState& state, const Topology& topo, Side side) {
  const auto degrees = topo.engagement_degrees(side);
  const auto& v = state.side(side);
  double s = 0.0;
  std::size_t count = 0;
  for (std::size_t k = 0; k < degrees.size(); ++k) {
    if (degrees[k] > 0) {
      s += v.at(k);
      ++count;
    }
  }
  if (count == 0) return std::nullopt;
  return s / static_cast<double>(count);
}

}  // namespace netlanch
