#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <iostream>
#include <map>

#include "netlanch/metrics.hpp"
#include "netlanch/model.hpp"
#include "netlanch/version.hpp"

namespace netlanch::cli {

namespace {

using Clock = std::chrono::steady_clock;

struct Session {
  const RunRequest& req;
  std::filesystem::path dir;
  Format format;
  Stamp stamp;
  Json artifacts = Json::array();

  void table(const std::string& stem, const Table& t) {
    const auto file = write_table(dir, stem, t, format, stamp);
    artifacts.push_back(file.filename().string());
  }
  void json(const std::string& name, const Json& j) {
    write_json(dir / name, j);
    artifacts.push_back(name);
  }
  void log(const std::string& msg) const {
    if (!req.quiet) std::cerr << "[netlanch] " << msg << '\n';
  }
};

std::string seeds_string(const RunManifest& m) {
  return "random:" + std::to_string(m.random.seed) + ";optimizer:" + std::to_string(m.optimizer.seed);
}

Json outcome_json(const IntegrationOutcome& o) {
  Json j{{"reason", std::string(to_string(o.reason))},
         {"winner", std::string(to_string(winner_of(o)))},
         {"equilibrated", o.equilibrated},
         {"final_time", o.terminal.time},
         {"final_rhs_norm", o.final_rhs_norm},
         {"steps", o.steps},
         {"blue_mean", total_force(o.terminal, Side::Blue).mean},
         {"red_mean", total_force(o.terminal, Side::Red).mean}};
  j["blue_annihilated_at"] = o.blue_annihilated_at ? Json(*o.blue_annihilated_at) : Json(nullptr);
  j["red_annihilated_at"] = o.red_annihilated_at ? Json(*o.red_annihilated_at) : Json(nullptr);
  return j;
}

Json metrics_json(const StructuralMetrics& m) {
  Json j;
  const auto vals = metric_values(m);
  for (std::size_t k = 0; k < kMetricColumns.size(); ++k)
    j[std::string(kMetricColumns[k])] = vals[k] ? Json(*vals[k]) : Json(nullptr);
  return j;
}

UtilityParams utility_params(const ScenarioSpec& spec, double lambda) {
  return UtilityParams{lambda, total_force(spec.initial, Side::Blue).mean};
}

Json run_simulate(Session& s) {
  const auto& m = s.req.manifest;
  const ScenarioSpec spec = scenario_from_manifest(m);
  const auto traj = integrate(spec, m.output.record_every);
  s.table("trajectory", trajectory_table(traj));
  s.json("topology.json", topology_to_json(spec.topology));
  return {{"outcome", outcome_json(traj.outcome)},
          {"termination", {{std::string(to_string(traj.outcome.reason)), 1}}}};
}

Json run_optimize(Session& s) {
  const auto& m = s.req.manifest;
  const ScenarioSpec spec = scenario_from_manifest(m);
  const UtilityParams params = utility_params(spec, m.optimizer.lambda);
  OptimizeOptions opts;
  opts.iterations = m.optimizer.iterations;
  opts.seed = m.optimizer.seed;
  if (!s.req.quiet)
    opts.progress = [&](std::size_t it, double best) {
      s.log("iteration " + std::to_string(it) + " best utility " + std::to_string(best));
    };
  const auto run = optimize(spec, params, m.optimizer.moves, opts);
  s.table("trace", trace_table(run.trace));
  s.json("seed_topology.json", topology_to_json(run.seed_topology));
  s.json("best_topology.json", topology_to_json(run.best_topology));
  const auto metrics = compute_metrics(run.best_topology, run.best_outcome.terminal, params,
                                       m.optimizer.sacrificial_threshold);
  return {{"seed_utility", run.seed_utility},
          {"best_utility", run.best_utility},
          {"accepted", run.accepted},
          {"aborted", run.aborted},
          {"metrics", metrics_json(metrics)},
          {"outcome", outcome_json(run.best_outcome)},
          {"termination", {{std::string(to_string(run.best_outcome.reason)), 1}}}};
}

Json sweep_summary(const std::vector<SweepRow>& rows, const std::vector<ReplicaResult>& all) {
  std::size_t aborted = 0;
  Json replicas = Json::array();
  std::map<std::string, std::size_t> reasons;
  for (const auto& r : all) {
    aborted += r.run.aborted;
    ++reasons[std::string(to_string(r.run.best_outcome.reason))];
    replicas.push_back({{"lambda", r.lambda},
                        {"kappa_R", r.kappa_R},
                        {"replica", r.replica},
                        {"topology_seed", r.topology_seed},
                        {"optimizer_seed", r.optimizer_seed},
                        {"best_utility", r.run.best_utility}});
  }
  Json selected = Json::array();
  for (const auto& row : rows)
    selected.push_back({{"lambda", row.lambda}, {"kappa_R", row.kappa_R}, {"selected", row.selected}});
  return {{"aborted_proposals", aborted}, {"termination", reasons}, {"replicas", replicas}, {"selected", selected}};
}

Json run_sweep_lambda(Session& s) {
  const auto& m = s.req.manifest;
  std::vector<ReplicaResult> all;
  const auto rows = lambda_sweep(optimization_setup(m), m.optimizer.lambdas, &all);
  s.table("lambda_sweep", sweep_table(rows));
  s.table("replicas", replica_table(all));
  return sweep_summary(rows, all);
}

Json run_sweep_kappa(Session& s) {
  const auto& m = s.req.manifest;
  std::vector<ReplicaResult> all;
  const auto rows = kappa_sweep(optimization_setup(m), m.optimizer.lambda, m.optimizer.kappas, &all);
  s.table("kappa_sweep", sweep_table(rows));
  s.table("replicas", replica_table(all));
  return sweep_summary(rows, all);
}

Json run_sweep_heatmap(Session& s) {
  const auto& m = s.req.manifest;
  HeatmapSpec spec = m.heatmap.spec;
  spec.workers = m.output.workers;

  std::vector<ScenarioSpec> ensemble;
  if (m.topology) {
    ensemble.push_back(scenario_from_manifest(m));
    if (m.heatmap.mirrored) ensemble.push_back(mirrored_scenario(ensemble.front()));
  } else {
    ensemble = random_ensemble(m.random.n, m.random.l_manoeuvre, m.random.l_engage, m.battle,
                               m.random.initial_level, m.random.seed, m.heatmap.ensemble, false);
    if (spec.source.kind == TopologySource::Kind::optimized) {
      for (std::size_t k = 0; k < ensemble.size(); ++k) {
        auto& sc = ensemble[k];
        s.log("optimising ensemble member " + std::to_string(k));
        const auto run = optimize(sc, utility_params(sc, spec.source.lambda), m.optimizer.moves,
                                  m.optimizer.iterations, derive_seed(m.optimizer.seed, k));
        sc.topology = run.best_topology;
        s.json("topology_" + std::to_string(k) + ".json", topology_to_json(sc.topology));
      }
    }
    if (m.heatmap.mirrored) {
      std::vector<ScenarioSpec> with;
      for (auto& sc : ensemble) {
        with.push_back(sc);
        with.push_back(mirrored_scenario(sc));
      }
      ensemble = std::move(with);
    }
  }
  const auto grid = heatmap_ensemble(spec, ensemble);
  s.table("heatmap", heatmap_table(grid));
  return {{"x", std::string(to_string(spec.x.param))},
          {"y", std::string(to_string(spec.y.param))},
          {"ensemble_size", ensemble.size()},
          {"cells", grid.values.size()}};
}

Json run_casestudy(Session& s) {
  const auto& m = s.req.manifest;
  const ScenarioSpec spec = build_case_study(m.case_study.spec);
  const auto traj = integrate(spec, m.output.record_every);
  s.table("trajectory", trajectory_table(traj));
  return {{"case", static_cast<int>(m.case_study.spec.case_id)},
          {"case_name", std::string(to_string(m.case_study.spec.case_id))},
          {"f_R", m.case_study.spec.f_R},
          {"kappa_R", m.case_study.spec.kappa_R},
          {"winner", std::string(to_string(winner_of(traj.outcome)))},
          {"outcome", outcome_json(traj.outcome)},
          {"termination", {{std::string(to_string(traj.outcome.reason)), 1}}}};
}

Json run_casestudy_critical(Session& s) {
  const auto& m = s.req.manifest;
  const auto& c = m.case_study;
  const auto points = critical_curve(c.spec, c.f_values, c.bracket, c.tol, m.output.workers);
  s.table("critical", critical_table(points));
  std::size_t bracketed = 0;
  for (const auto& p : points) bracketed += p.kappa_star.has_value();
  return {{"case", static_cast<int>(c.spec.case_id)}, {"points", points.size()}, {"bracketed", bracketed}};
}

Json run_meanfield(Session& s) {
  const auto& m = s.req.manifest;
  const auto& spec = m.meanfield.spec;
  const auto samples = meanfield::integrate(spec, m.meanfield.dt, m.meanfield.t_end);
  s.table("meanfield_trajectory", meanfield_table(samples, spec));

  const auto n = static_cast<std::size_t>(std::llround(spec.n));
  Table surface;
  surface.columns = {"n1", "k1", "k2", "f"};
  for (std::size_t n1 = 0; n1 <= n; ++n1)
    for (std::size_t k1 = 1; k1 <= n; ++k1)
      for (std::size_t k2 = 1; k2 <= n; ++k2)
        surface.rows.push_back({static_cast<double>(n1), static_cast<double>(k1), static_cast<double>(k2),
                                meanfield::split_objective(static_cast<double>(k1), static_cast<double>(k2),
                                                           static_cast<double>(n1), spec.n)});
  s.table("f_surface", surface);

  Table victory;
  victory.columns = {"n", "victory_factor", "required_force_fraction", "two_over_sqrt_n", "margin_optimized",
                     "margin_plain"};
  for (std::size_t k = 2; k <= std::max<std::size_t>(n, 100); ++k) {
    const double nk = static_cast<double>(k);
    victory.rows.push_back({nk, meanfield::victory_factor(nk), meanfield::required_force_fraction(nk),
                            2.0 / std::sqrt(nk),
                            meanfield::victory_margin(nk, spec.kappa_R, spec.kappa_B, spec.R0, spec.B0, true),
                            meanfield::victory_margin(nk, spec.kappa_R, spec.kappa_B, spec.R0, spec.B0, false)});
  }
  s.table("victory", victory);

  const double i0 = meanfield::meanfield_invariant(samples.front().state, spec);
  double drift = 0.0;
  for (const auto& smp : samples) drift = std::max(drift, std::abs(meanfield::meanfield_invariant(smp.state, spec) - i0));
  Json out{{"victory_factor", meanfield::victory_factor(spec.n)},
           {"required_force_fraction", meanfield::required_force_fraction(spec.n)},
           {"margin_optimized", meanfield::victory_margin(spec.n, spec.kappa_R, spec.kappa_B, spec.R0, spec.B0, true)},
           {"margin_plain", meanfield::victory_margin(spec.n, spec.kappa_R, spec.kappa_B, spec.R0, spec.B0, false)},
           {"split_objective", meanfield::split_objective(spec.k1, spec.k2, spec.n1, spec.n)},
           {"invariant_initial", i0},
           {"invariant_max_drift", drift},
           {"final", {{"t", samples.back().t},
                      {"R1", samples.back().state.R1},
                      {"R2", samples.back().state.R2},
                      {"B", samples.back().state.B}}}};
  if (n >= 2) {
    const auto split = meanfield::optimal_split(n);
    out["optimal_split"] = {{"n1", split.n1}, {"k1", split.k1}, {"k2", split.k2}, {"exact", split.exact}};
  }
  return out;
}

std::string iso_now() {
  const std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

}  // namespace

Json run_command(const RunRequest& request) {
  const auto& m = request.manifest;
  Session s{request, m.output.dir, format_from_string(m.output.format),
            Stamp{request.command, NETLANCH_VERSION, seeds_string(m)}};
  ensure_directory(s.dir);

  const std::string started = iso_now();
  const auto t0 = Clock::now();
  Json results;
  const auto& c = request.command;
  if (c == "simulate")
    results = run_simulate(s);
  else if (c == "optimize")
    results = run_optimize(s);
  else if (c == "sweep lambda")
    results = run_sweep_lambda(s);
  else if (c == "sweep kappa")
    results = run_sweep_kappa(s);
  else if (c == "sweep heatmap")
    results = run_sweep_heatmap(s);
  else if (c == "casestudy")
    results = run_casestudy(s);
  else if (c == "casestudy critical")
    results = run_casestudy_critical(s);
  else if (c == "meanfield")
    results = run_meanfield(s);
  else
    throw ConfigError("unknown command '" + c + "'");
  const double wall = std::chrono::duration<double>(Clock::now() - t0).count();

  Json summary{{"tool", "netlanch"},
               {"version", NETLANCH_VERSION},
               {"command", c},
               {"config", manifest_to_json(m)},
               {"seeds", {{"random", m.random.seed}, {"optimizer", m.optimizer.seed}}},
               {"timings", {{"started_at", started}, {"wall_seconds", wall}, {"workers", m.output.workers}}},
               {"results", results},
               {"artifacts", s.artifacts}};
  summary["termination"] = results.contains("termination") ? results["termination"] : Json::object();
  write_json(s.dir / "summary.json", summary);
  return summary;
}

RunRequest request_from_summary(const Json& summary) {
  if (!summary.is_object() || !summary.contains("command") || !summary["command"].is_string() ||
      !summary.contains("config"))
    throw ConfigError("not a run summary: expected \"command\" and \"config\"");
  RunRequest r;
  r.command = summary["command"].get<std::string>();
  r.manifest = parse_manifest(summary["config"]);
  return r;
}

}  // namespace netlanch::cli
