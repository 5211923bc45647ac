#include "netlanch/model.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace netlanch {

ForceTotals total_force(const ForceState& state, Side side) noexcept {
  const auto& v = state.side(side);
  ForceTotals t;
  t.sum = std::accumulate(v.begin(), v.end(), 0.0);
  t.mean = v.empty() ? 0.0 : t.sum / static_cast<double>(v.size());
  return t;
}

double manoeuvre_weight(std::size_t node, Side side, const ForceState& state, const Topology& topo,
                        const BattleConfig& config) {
  topo.check_consistent();
  if (node >= topo.n(side)) throw ConfigError("node index out of range");
  const auto& adversary = state.side(opponent(side));
  if (adversary.size() != topo.n(opponent(side))) throw ConfigError("state does not match topology");
  double engaged = 0.0;
  if (side == Side::Blue) {
    for (std::size_t m = 0; m < topo.n_red(); ++m)
      if (topo.engagement.has(node, m)) engaged += adversary[m];
  } else {
    for (std::size_t i = 0; i < topo.n_blue(); ++i)
      if (topo.engagement.has(i, node)) engaged += adversary[i];
  }
  return 1.0 / (std::max(engaged, 0.0) + config.eps_delta);
}

// ---------------------------------------------------------------------------

BattleSystem::BattleSystem(const Topology& topo, const BattleConfig& config)
    : n_blue_(topo.n_blue()), n_red_(topo.n_red()), config_(config) {
  topo.check_consistent();
  config.validate();
  blue_edges_ = topo.blue_manoeuvre.edges();
  red_edges_ = topo.red_manoeuvre.edges();
  engage_edges_ = topo.engagement.edges();
  deg_blue_ = topo.engagement.row_degrees();
  deg_red_ = topo.engagement.col_degrees();
  auto inverse = [](const std::vector<std::size_t>& d) {
    std::vector<double> inv(d.size(), 0.0);
    for (std::size_t k = 0; k < d.size(); ++k)
      if (d[k] > 0) inv[k] = 1.0 / static_cast<double>(d[k]);
    return inv;
  };
  inv_deg_blue_ = inverse(deg_blue_);
  inv_deg_red_ = inverse(deg_red_);
}

BattleSystem::Workspace BattleSystem::make_workspace() const {
  Workspace ws;
  ws.step_blue.resize(n_blue_);
  ws.step_red.resize(n_red_);
  ws.step_blue_sh.resize(n_blue_);
  ws.step_red_sh.resize(n_red_);
  ws.weighted_blue.resize(n_blue_);
  ws.weighted_red.resize(n_red_);
  return ws;
}

void BattleSystem::evaluate(std::span<const double> y, std::span<double> dy, Workspace& ws) const {
  const auto blue = y.first(n_blue_);
  const auto red = y.subspan(n_blue_, n_red_);
  auto dblue = dy.first(n_blue_);
  auto dred = dy.subspan(n_blue_, n_red_);

  const double eps = config_.eps_theta;
  const double floor = config_.theta_floor;
  for (std::size_t i = 0; i < n_blue_; ++i) ws.step_blue[i] = smoothed_step(blue[i], eps);
  for (std::size_t m = 0; m < n_red_; ++m) ws.step_red[m] = smoothed_step(red[m], eps);
  if (floor == 0.0) {
    std::copy(ws.step_blue.begin(), ws.step_blue.end(), ws.step_blue_sh.begin());
    std::copy(ws.step_red.begin(), ws.step_red.end(), ws.step_red_sh.begin());
  } else {
    for (std::size_t i = 0; i < n_blue_; ++i) ws.step_blue_sh[i] = smoothed_step(blue[i] - floor, eps);
    for (std::size_t m = 0; m < n_red_; ++m) ws.step_red_sh[m] = smoothed_step(red[m] - floor, eps);
  }

  // Engaged adversary strength; reuse the weighted buffers for the sums.
  std::fill(ws.weighted_blue.begin(), ws.weighted_blue.end(), 0.0);
  std::fill(ws.weighted_red.begin(), ws.weighted_red.end(), 0.0);
  for (const auto& [i, m] : engage_edges_) {
    ws.weighted_blue[i] += red[m];
    ws.weighted_red[m] += blue[i];
  }
  const double eps_delta = config_.eps_delta;
  for (std::size_t i = 0; i < n_blue_; ++i)
    ws.weighted_blue[i] = blue[i] / (std::max(ws.weighted_blue[i], 0.0) + eps_delta);
  for (std::size_t m = 0; m < n_red_; ++m)
    ws.weighted_red[m] = red[m] / (std::max(ws.weighted_red[m], 0.0) + eps_delta);

  std::fill(dy.begin(), dy.end(), 0.0);

  const double gamma_B = config_.gamma_B;
  for (const auto& [i, j] : blue_edges_) {
    const double flow =
        gamma_B * (ws.weighted_blue[i] - ws.weighted_blue[j]) * ws.step_blue_sh[i] * ws.step_blue_sh[j];
    dblue[i] -= flow;
    dblue[j] += flow;
  }
  const double gamma_R = config_.gamma_R;
  for (const auto& [l, m] : red_edges_) {
    const double flow = gamma_R * (ws.weighted_red[l] - ws.weighted_red[m]) * ws.step_red_sh[l] * ws.step_red_sh[m];
    dred[l] -= flow;
    dred[m] += flow;
  }

  const double kappa_B = config_.kappa_B;
  const double kappa_R = config_.kappa_R;
  for (const auto& [i, m] : engage_edges_) {
    const double both = ws.step_blue[i] * ws.step_red[m];
    dblue[i] -= kappa_R * red[m] * inv_deg_red_[m] * both;
    dred[m] -= kappa_B * blue[i] * inv_deg_blue_[i] * both;
  }
}

Derivative BattleSystem::evaluate(const ForceState& state) const {
  if (state.blue.size() != n_blue_ || state.red.size() != n_red_)
    throw ConfigError("state dimensions (" + std::to_string(state.blue.size()) + ", " +
                      std::to_string(state.red.size()) + ") do not match topology (" + std::to_string(n_blue_) +
                      ", " + std::to_string(n_red_) + ")");
  const auto y = pack(state);
  std::vector<double> dy(y.size());
  auto ws = make_workspace();
  evaluate(y, dy, ws);
  Derivative d;
  d.blue.assign(dy.begin(), dy.begin() + static_cast<std::ptrdiff_t>(n_blue_));
  d.red.assign(dy.begin() + static_cast<std::ptrdiff_t>(n_blue_), dy.end());
  return d;
}

Derivative rhs(const ForceState& state, const Topology& topo, const BattleConfig& config) {
  return BattleSystem(topo, config).evaluate(state);
}

std::vector<double> pack(const ForceState& state) {
  std::vector<double> y;
  y.reserve(state.blue.size() + state.red.size());
  y.insert(y.end(), state.blue.begin(), state.blue.end());
  y.insert(y.end(), state.red.begin(), state.red.end());
  return y;
}

ForceState unpack(std::span<const double> y, std::size_t n_blue, double time) {
  ForceState s;
  s.blue.assign(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n_blue));
  s.red.assign(y.begin() + static_cast<std::ptrdiff_t>(n_blue), y.end());
  s.time = time;
  return s;
}

}  // namespace netlanch
