#include "netlanch/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "netlanch/integrator.hpp"
#include "netlanch/topology_io.hpp"
#include "netlanch/model.hpp"
#include "netlanch/parallel.hpp"

namespace netlanch {

CaseId case_from_int(int id) {
  switch (id) {
    case 1:
      return CaseId::equal_plus_reserves;
    case 2:
      return CaseId::equal_total;
    case 3:
      return CaseId::extra_reserves;
    default:
      throw ConfigError("case id must be 1, 2 or 3, got " + std::to_string(id));
  }
}

std::string_view to_string(CaseId c) noexcept {
  switch (c) {
    case CaseId::equal_plus_reserves:
      return "equal_plus_reserves";
    case CaseId::equal_total:
      return "equal_total";
    case CaseId::extra_reserves:
      return "extra_reserves";
  }
  return "?";
}

std::vector<Edge> default_case_wiring() { return {{0, 2}, {1, 3}, {2, 3}}; }

ScenarioSpec build_case_study(const CaseStudySpec& spec) {
  if (!(spec.f_R > 0) || !std::isfinite(spec.f_R)) throw ConfigError("f_R must be > 0");
  Topology topo(2, 4);
  topo.engagement.set(0, 0, true);
  topo.engagement.set(1, 1, true);
  for (const auto& [a, b] : spec.red_wiring) {
    if (a >= 4 || b >= 4) throw ConfigError("red_wiring refers to a node outside 0..3");
    topo.red_manoeuvre.set(a, b, true);
  }

  ForceState s;
  s.blue = {0.5, 0.5};
  const double f = spec.f_R;
  switch (spec.case_id) {
    case CaseId::equal_plus_reserves:
      s.red = {0.5, 0.5, f / 2, f / 2};
      break;
    case CaseId::equal_total: {
      const double reserve = std::max(0.0, (1.0 - f) / 2);
      s.red = {f / 2, f / 2, reserve, reserve};
      break;
    }
    case CaseId::extra_reserves:
      s.red = {f / 2, f / 2, f / 2, f / 2};
      break;
    default:
      throw ConfigError("invalid case id");
  }

  ScenarioSpec out{std::move(topo), spec.config, std::move(s)};
  out.config.kappa_R = spec.kappa_R;
  out.validate();
  return out;
}

std::string_view to_string(Winner w) noexcept {
  switch (w) {
    case Winner::Blue:
      return "Blue";
    case Winner::Red:
      return "Red";
    case Winner::stalemate:
      return "stalemate";
  }
  return "?";
}

Winner winner(const ScenarioSpec& spec) { return winner_of(settle(spec)); }

Winner winner_of(const IntegrationOutcome& out) noexcept {
  const auto& b = out.blue_annihilated_at;
  const auto& r = out.red_annihilated_at;
  if (r && (!b || *r < *b)) return Winner::Blue;
  if (b && (!r || *b < *r)) return Winner::Red;
  if (out.reason == TerminationReason::annihilation_red) return Winner::Blue;
  if (out.reason == TerminationReason::annihilation_blue) return Winner::Red;
  return Winner::stalemate;
}

namespace {

Winner case_winner(CaseStudySpec spec, double kappa_R) {
  spec.kappa_R = kappa_R;
  return winner(build_case_study(spec));
}

}  // namespace

double critical_kappa(const CaseStudySpec& base, Bracket bracket, double tol) {
  if (!(tol > 0)) throw ConfigError("tol must be > 0");
  if (!(bracket.lo < bracket.hi)) throw ConfigError("bracket must satisfy lo < hi");
  if (bracket.lo < 0) throw ConfigError("bracket must be non-negative");
  double lo = bracket.lo;
  double hi = bracket.hi;
  const Winner w_lo = case_winner(base, lo);
  const Winner w_hi = case_winner(base, hi);
  if (w_lo == w_hi)
    throw ConfigError("bracket [" + std::to_string(lo) + ", " + std::to_string(hi) + "] does not straddle a change of winner (both " +
                      std::string(to_string(w_lo)) + ")");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (case_winner(base, mid) == w_lo)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<CriticalPoint> critical_curve(const CaseStudySpec& base, const std::vector<double>& f_values,
                                          Bracket bracket, double tol, std::size_t workers) {
  return parallel_map(f_values.size(), workers, [&](std::size_t k) {
    CaseStudySpec spec = base;
    spec.f_R = f_values[k];
    CriticalPoint p{f_values[k], std::nullopt};
    if (case_winner(spec, bracket.lo) != case_winner(spec, bracket.hi)) p.kappa_star = critical_kappa(spec, bracket, tol);
    return p;
  });
}

std::string_view to_string(Param p) noexcept {
  switch (p) {
    case Param::kappa_R:
      return "kappa_R";
    case Param::kappa_B:
      return "kappa_B";
    case Param::gamma_R:
      return "gamma_R";
    case Param::gamma_B:
      return "gamma_B";
  }
  return "?";
}

Param param_from_string(std::string_view s) {
  for (Param p : {Param::kappa_R, Param::kappa_B, Param::gamma_R, Param::gamma_B})
    if (to_string(p) == s) return p;
  throw ConfigError("unknown parameter '" + std::string(s) + "' (expected kappa_R, kappa_B, gamma_R or gamma_B)");
}

void set_param(BattleConfig& config, Param p, double value) {
  switch (p) {
    case Param::kappa_R:
      config.kappa_R = value;
      break;
    case Param::kappa_B:
      config.kappa_B = value;
      break;
    case Param::gamma_R:
      config.gamma_R = value;
      break;
    case Param::gamma_B:
      config.gamma_B = value;
      break;
  }
}

std::vector<double> Axis::values() const {
  std::vector<double> v(count);
  for (std::size_t i = 0; i < count; ++i)
    v[i] = count == 1 ? min : min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
  return v;
}

void HeatmapSpec::validate() const {
  std::vector<std::string> errs;
  if (x.count < 2) errs.push_back("x axis resolution must be >= 2");
  if (y.count < 2) errs.push_back("y axis resolution must be >= 2");
  if (!(x.min < x.max)) errs.push_back("x axis needs min < max");
  if (!(y.min < y.max)) errs.push_back("y axis needs min < max");
  if (x.param == y.param) errs.push_back("x and y axes must be different parameters");
  if (x.min < 0 || y.min < 0) errs.push_back("axis ranges must be non-negative");
  for (const auto& [p, v] : overrides)
    if (!(v >= 0)) errs.push_back("override " + std::string(to_string(p)) + " must be >= 0");
  if (!errs.empty()) throw ConfigError(join_errors(errs));
}

ScenarioSpec mirrored_scenario(const ScenarioSpec& spec) {
  ScenarioSpec out = spec;
  out.topology = mirrored(spec.topology);
  out.initial.blue = spec.initial.red;
  out.initial.red = spec.initial.blue;
  std::swap(out.config.kappa_B, out.config.kappa_R);
  std::swap(out.config.gamma_B, out.config.gamma_R);
  return out;
}

std::vector<ScenarioSpec> random_ensemble(std::size_t n, std::size_t l_manoeuvre, std::size_t l_engage,
                                          const BattleConfig& config, double level, std::uint64_t seed,
                                          std::size_t count, bool add_mirrors) {
  std::vector<ScenarioSpec> out;
  for (std::size_t k = 0; k < count; ++k) {
    Rng rng(derive_seed(seed, k));
    ScenarioSpec s{seed_topology(n, l_manoeuvre, l_engage, rng), config, uniform_state(n, n, level)};
    if (add_mirrors) {
      ScenarioSpec m = mirrored_scenario(s);
      out.push_back(std::move(s));
      out.push_back(std::move(m));
    } else {
      out.push_back(std::move(s));
    }
  }
  return out;
}

HeatmapGrid heatmap(const HeatmapSpec& spec, const ScenarioSpec& base) {
  return heatmap_ensemble(spec, {base});
}

HeatmapGrid heatmap_ensemble(const HeatmapSpec& spec, const std::vector<ScenarioSpec>& ensemble) {
  spec.validate();
  if (ensemble.empty()) throw ConfigError("heatmap needs at least one scenario");
  HeatmapGrid grid;
  grid.xs = spec.x.values();
  grid.ys = spec.y.values();
  const std::size_t nx = grid.xs.size();
  const std::size_t cells = nx * grid.ys.size();
  const auto values = parallel_map(cells * ensemble.size(), spec.workers, [&](std::size_t job) {
    const std::size_t cell = job % cells;
    ScenarioSpec s = ensemble[job / cells];
    for (const auto& [p, v] : spec.overrides) set_param(s.config, p, v);
    set_param(s.config, spec.x.param, grid.xs[cell % nx]);
    set_param(s.config, spec.y.param, grid.ys[cell / nx]);
    const auto out = settle(s);
    return total_force(out.terminal, Side::Red).mean - total_force(out.terminal, Side::Blue).mean;
  });
  grid.values.assign(cells, 0.0);
  for (std::size_t job = 0; job < values.size(); ++job) grid.values[job % cells] += values[job];
  for (double& v : grid.values) v /= static_cast<double>(ensemble.size());
  return grid;
}

void OptimizationSetup::validate() const {
  std::vector<std::string> errs;
  if (n < 2) errs.push_back("n must be >= 2");
  if (l_manoeuvre > n * (n - 1) / 2) errs.push_back("l_manoeuvre exceeds n(n-1)/2");
  if (l_engage > n * n) errs.push_back("l_engage exceeds n*n");
  if (!(initial_level > 0)) errs.push_back("initial_level must be > 0");
  if (iterations < 1) errs.push_back("iterations must be >= 1");
  if (replicas < 1) errs.push_back("replicas must be >= 1");
  if (best_k < 1) errs.push_back("best_k must be >= 1");
  if (replicas < best_k) errs.push_back("replicas must be >= best_k");
  if (sacrificial_threshold < 1) errs.push_back("sacrificial_threshold must be >= 1");
  for (auto& e : config.problems()) errs.push_back(e);
  for (auto& e : moves.problems()) errs.push_back(e);
  if (!errs.empty()) throw ConfigError(join_errors(errs));
}

ScenarioSpec seeded_scenario(const OptimizationSetup& setup, std::size_t replica) {
  Rng rng(derive_seed(setup.seed, 2 * replica));
  ScenarioSpec s{seed_topology(setup.n, setup.l_manoeuvre, setup.l_engage, rng), setup.config,
                 uniform_state(setup.n, setup.n, setup.initial_level)};
  return s;
}

std::uint64_t optimizer_seed(const OptimizationSetup& setup, std::size_t replica) noexcept {
  return derive_seed(setup.seed, 2 * replica + 1);
}

std::vector<std::size_t> rank_replicas(const std::vector<ReplicaResult>& results, std::size_t best_k) {
  std::vector<std::size_t> order(results.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (results[a].run.best_utility != results[b].run.best_utility)
      return results[a].run.best_utility > results[b].run.best_utility;
    return results[a].replica < results[b].replica;
  });
  order.resize(std::min(best_k, order.size()));
  return order;
}

namespace {

struct SweepPoint {
  double lambda;
  double kappa_R;
};

std::vector<SweepRow> run_sweep(const OptimizationSetup& setup, const std::vector<SweepPoint>& points,
                                std::vector<ReplicaResult>* all) {
  setup.validate();
  for (const auto& p : points) {
    UtilityParams{p.lambda, setup.initial_level}.validate();
    if (!(p.kappa_R >= 0)) throw ConfigError("kappa_R must be >= 0");
  }
  const std::size_t R = setup.replicas;
  auto results = parallel_map(points.size() * R, setup.workers, [&](std::size_t job) {
    const auto& pt = points[job / R];
    const std::size_t r = job % R;
    OptimizationSetup local = setup;
    local.config.kappa_R = pt.kappa_R;
    const ScenarioSpec base = seeded_scenario(local, r);
    const UtilityParams params{pt.lambda, setup.initial_level};

    ReplicaResult res;
    res.lambda = pt.lambda;
    res.kappa_R = pt.kappa_R;
    res.replica = r;
    res.topology_seed = derive_seed(setup.seed, 2 * r);
    res.optimizer_seed = optimizer_seed(setup, r);
    res.run = optimize(base, params, setup.moves, setup.iterations, res.optimizer_seed);
    res.metrics = compute_metrics(res.run.best_topology, res.run.best_outcome.terminal, params,
                                  setup.sacrificial_threshold);
    ScenarioSpec seed_spec = base;
    const auto seed_out = settle(seed_spec);
    res.seed_metrics = compute_metrics(base.topology, seed_out.terminal, params, setup.sacrificial_threshold);
    return res;
  });

  std::vector<SweepRow> rows;
  rows.reserve(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    std::vector<ReplicaResult> group(results.begin() + static_cast<std::ptrdiff_t>(p * R),
                                     results.begin() + static_cast<std::ptrdiff_t>((p + 1) * R));
    SweepRow row;
    row.lambda = points[p].lambda;
    row.kappa_R = points[p].kappa_R;
    row.replicas = R;
    row.best_k = std::min(setup.best_k, R);
    std::vector<StructuralMetrics> best, seed;
    for (std::size_t idx : rank_replicas(group, setup.best_k)) {
      row.selected.push_back(group[idx].replica);
      best.push_back(group[idx].metrics);
      seed.push_back(group[idx].seed_metrics);
    }
    row.best = average_metrics(best);
    row.seed = average_metrics(seed);
    rows.push_back(std::move(row));
  }
  if (all)
    for (auto& r : results) all->push_back(std::move(r));
  return rows;
}

}  // namespace

std::vector<SweepRow> lambda_sweep(const OptimizationSetup& setup, const std::vector<double>& lambdas,
                                   std::vector<ReplicaResult>* all) {
  std::vector<SweepPoint> pts;
  for (double l : lambdas) pts.push_back({l, setup.config.kappa_R});
  return run_sweep(setup, pts, all);
}

std::vector<SweepRow> kappa_sweep(const OptimizationSetup& setup, double lambda, const std::vector<double>& kappas,
                                  std::vector<ReplicaResult>* all) {
  std::vector<SweepPoint> pts;
  for (double k : kappas) pts.push_back({lambda, k});
  return run_sweep(setup, pts, all);
}

}  // namespace netlanch
