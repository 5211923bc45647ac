// Acceptance suite: one PASS/FAIL line per criterion.
// Usage: netlanch_acceptance [criterion ...]   (default: all)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "netlanch/integrator.hpp"
#include "netlanch/meanfield.hpp"
#include "netlanch/metrics.hpp"
#include "netlanch/model.hpp"
#include "netlanch/optimizer.hpp"
#include "netlanch/parallel.hpp"
#include "netlanch/scenarios.hpp"

using namespace netlanch;

namespace {

struct Verdict {
  bool pass{false};
  std::string detail;
};

double side_sum(const ForceState& s, Side side) {
  const auto& v = s.side(side);
  return std::accumulate(v.begin(), v.end(), 0.0);
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Verdict conservation() {
  double worst = 0.0;
  int runs = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const std::size_t n = 10 * seed;
    Rng rng(derive_seed(2024, seed));
    auto topo = seed_topology(n, 2 * n, 0, rng);
    ScenarioSpec spec{topo, BattleConfig{}, {}};
    std::uniform_real_distribution<double> u(0.1, 2.0);
    for (std::size_t i = 0; i < n; ++i) spec.initial.blue.push_back(u(rng));
    for (std::size_t i = 0; i < n; ++i) spec.initial.red.push_back(u(rng));
    const double b0 = side_sum(spec.initial, Side::Blue);
    const double r0 = side_sum(spec.initial, Side::Red);
    ForceState s = spec.initial;
    for (int k = 0; k < 10000; ++k) {
      s = rk4_step(s, spec, spec.config.dt);
      worst = std::max({worst, std::abs(side_sum(s, Side::Blue) - b0), std::abs(side_sum(s, Side::Red) - r0)});
    }
    ++runs;
  }
  return {worst < 1e-9, std::to_string(runs) + " networks N=10..50 to t=100, max drift " + fmt("%.2e", worst)};
}

Verdict square_law() {
  const double kappas[] = {0.3, 0.6, 1.2, 1.6, 2.5};
  const double levels[] = {0.5, 0.8, 1.1, 1.4, 1.7};
  int ok = 0, total = 0;
  double worst = 0.0;
  for (double kR : kappas)
    for (double R0 : levels) {
      const double kB = 1.0, B0 = 1.0;
      const double margin = kB * B0 * B0 - kR * R0 * R0;
      Topology t(1, 1);
      t.engagement.set(0, 0, true);
      BattleConfig c;
      c.kappa_R = kR;
      c.kappa_B = kB;
      const auto out = settle({t, c, ForceState{{B0}, {R0}, 0.0}});
      const Winner expect = margin > 0 ? Winner::Blue : Winner::Red;
      const double survivor = margin > 0 ? out.terminal.blue[0] : out.terminal.red[0];
      const double closed = std::sqrt(std::abs(margin) / (margin > 0 ? kB : kR));
      const double err = std::abs(survivor - closed);
      worst = std::max(worst, err);
      ++total;
      if (winner_of(out) == expect && err < 2e-3) ++ok;
    }
  return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + " cells, max survivor error " +
                           fmt("%.2e", worst)};
}

CaseStudySpec case_spec(CaseId id, double f_R, double kappa_R) {
  CaseStudySpec cs;
  cs.case_id = id;
  cs.f_R = f_R;
  cs.kappa_R = kappa_R;
  return cs;
}

Verdict case_flip() {
  const auto lo = winner(build_case_study(case_spec(CaseId::extra_reserves, 0.8, 0.91)));
  const auto hi = winner(build_case_study(case_spec(CaseId::extra_reserves, 0.8, 0.92)));
  const double k = critical_kappa(case_spec(CaseId::extra_reserves, 0.8, 0.0), {0.0, 4.0}, 1e-3);
  const bool pass = lo == Winner::Blue && hi == Winner::Red && k >= 0.90 && k <= 0.93;
  return {pass, "kR=0.91 -> " + std::string(to_string(lo)) + ", kR=0.92 -> " + std::string(to_string(hi)) +
                    ", kR* = " + fmt("%.4f", k)};
}

Verdict critical_shape() {
  std::vector<double> f;
  for (int k = 1; k <= 15; ++k) f.push_back(0.1 * k);
  const Bracket bracket{0.0, 4.0};
  const auto workers = default_workers();
  std::ostringstream detail;
  bool pass = true;
  for (CaseId id : {CaseId::equal_plus_reserves, CaseId::equal_total, CaseId::extra_reserves}) {
    const auto curve = critical_curve(case_spec(id, 0.0, 0.0), f, bracket, 1e-3, workers);
    // Unbracketed points: Blue still wins at the top of the bracket, so kR* > 4.
    auto above_one = [&](const CriticalPoint& p) {
      if (p.kappa_star) return *p.kappa_star > 1.0;
      return winner(build_case_study(case_spec(id, p.f_R, bracket.hi))) == Winner::Blue;
    };
    std::optional<double> cross;
    for (const auto& p : curve)
      if (!above_one(p)) {
        cross = p.f_R;
        break;
      }
    bool grey = false;
    for (const auto& p : curve)
      if (p.f_R < 1.0 - 1e-9 && p.kappa_star && *p.kappa_star < 1.0) grey = true;
    const bool ok = id == CaseId::equal_total ? (cross && *cross > 1.0 + 1e-9) : grey;
    pass = pass && ok;
    if (!detail.str().empty()) detail << "; ";
    detail << "case " << static_cast<int>(id) << ": first f_R with kR*<=1 = "
           << (cross ? fmt("%.1f", *cross) : std::string("none")) << (ok ? "" : " (bad)");
  }
  return {pass, detail.str()};
}

struct DeskRuns {
  std::vector<OptimizationRun> runs;
  std::vector<StructuralMetrics> metrics;
  std::vector<std::uint64_t> topology_seeds;
};

constexpr std::size_t kDeskN = 20;
constexpr std::size_t kDeskThreshold = 4;  // 10 * 20 / 50

DeskRuns desk_runs(double lambda) {
  OptimizationSetup setup;
  setup.n = kDeskN;
  setup.l_manoeuvre = 40;
  setup.l_engage = 4;
  setup.config.kappa_R = 0.5;
  setup.config.kappa_B = 1.0;
  setup.iterations = 10000;
  setup.seed = 20240;
  setup.replicas = 5;
  setup.best_k = 5;
  setup.sacrificial_threshold = kDeskThreshold;
  const UtilityParams params{lambda, setup.initial_level};
  DeskRuns out;
  out.runs = parallel_map(setup.replicas, default_workers(), [&](std::size_t r) {
    return optimize(seeded_scenario(setup, r), params, setup.moves, setup.iterations, optimizer_seed(setup, r));
  });
  for (const auto& run : out.runs)
    out.metrics.push_back(compute_metrics(run.best_topology, run.best_outcome.terminal, params, kDeskThreshold));
  return out;
}

const DeskRuns& runs_at(double lambda) {
  static std::map<double, DeskRuns> cache;
  auto it = cache.find(lambda);
  if (it == cache.end()) it = cache.emplace(lambda, desk_runs(lambda)).first;
  return it->second;
}

Verdict optimizer_improvement() {
  const auto& d = runs_at(0.5);
  bool monotone = true;
  int red_ahead = 0, blue_low = 0;
  std::ostringstream detail;
  for (std::size_t r = 0; r < d.runs.size(); ++r) {
    const auto& run = d.runs[r];
    double last = run.seed_utility;
    for (const auto& t : run.trace) {
      if (!t.accepted) continue;
      if (!(t.utility > last)) monotone = false;
      last = t.utility;
    }
    const auto& m = d.metrics[r];
    red_ahead += m.red_mean > m.blue_mean;
    blue_low += m.blue_mean < 0.2;
    detail << "[U=" << fmt("%.3f", m.utility) << " B=" << fmt("%.3f", m.blue_mean) << " R=" << fmt("%.3f", m.red_mean)
           << "] ";
  }
  const std::size_t n = d.runs.size();
  const bool pass = monotone && red_ahead >= 4 && static_cast<std::size_t>(blue_low) * 2 > n;
  return {pass, std::string(monotone ? "monotone" : "NOT monotone") + ", red>blue in " + std::to_string(red_ahead) +
                    "/5, blue<0.2 in " + std::to_string(blue_low) + "/5 " + detail.str()};
}

Verdict lambda_transition() {
  const auto a = average_metrics(runs_at(0.5).metrics);
  const auto b = average_metrics(runs_at(0.9).metrics);
  const bool pass = a.n_sacrificial > b.n_sacrificial && b.max_red_manoeuvre_degree > a.max_red_manoeuvre_degree;
  return {pass, "n_sacrificial(k>" + std::to_string(kDeskThreshold) + ") " + fmt("%.2f", a.n_sacrificial) +
                    " @0.5 vs " + fmt("%.2f", b.n_sacrificial) + " @0.9; max_red_degree " +
                    fmt("%.2f", a.max_red_manoeuvre_degree) + " @0.5 vs " + fmt("%.2f", b.max_red_manoeuvre_degree) +
                    " @0.9; l_rb/node " + fmt("%.2f", a.l_rb_per_node) + " vs " + fmt("%.2f", b.l_rb_per_node)};
}

Verdict heatmap_diagonal() {
  HeatmapSpec spec;
  spec.x = {Param::kappa_R, 0.0, 2.0, 11};
  spec.y = {Param::kappa_B, 0.0, 2.0, 11};
  spec.workers = default_workers();
  const auto ensemble = random_ensemble(50, 100, 10, BattleConfig{}, 1.0, 77, 4, false);
  const auto g = heatmap_ensemble(spec, ensemble);
  int ok = 0, total = 0;
  for (std::size_t ix = 0; ix < g.xs.size(); ++ix)
    for (std::size_t iy = 0; iy < g.ys.size(); ++iy) {
      const double d = g.xs[ix] - g.ys[iy];
      if (std::abs(d) <= 0.1) continue;
      ++total;
      const double v = g.at(ix, iy);
      if ((v > 0) == (d > 0) && v != 0.0) ++ok;
    }
  return {ok == total, std::to_string(ok) + "/" + std::to_string(total) +
                           " off-diagonal cells agree (4 random N=50 networks)"};
}

Verdict meanfield_suite() {
  using namespace netlanch::meanfield;
  std::ostringstream detail;
  double drift = 0.0;
  for (const MeanFieldSpec& s : {MeanFieldSpec{10, 5, 5, 1, 10, 1.0, 1.0, 1.0, 1.0},
                                 MeanFieldSpec{50, 25, 25, 1, 50, 0.1, 1.0, 1.0, 1.0},
                                 MeanFieldSpec{20, 7, 13, 3, 5, 0.4, 1.3, 1.2, 0.9}}) {
    const auto traj = meanfield::integrate(s, 0.01, 50.0);
    const double h0 = meanfield_invariant(traj.front().state, s);
    for (const auto& p : traj) drift = std::max(drift, std::abs(meanfield_invariant(p.state, s) - h0));
  }
  bool split_ok = true;
  for (std::size_t n = 2; n <= 12; n += 2) {
    double best = -1.0;
    for (std::size_t n1 = 1; n1 < n; ++n1)
      for (std::size_t k1 = 1; k1 <= n; ++k1)
        for (std::size_t k2 = 1; k2 <= n; ++k2)
          best = std::max(best, split_objective(double(k1), double(k2), double(n1), double(n)));
    const auto sp = optimal_split(n);
    const double at = split_objective(double(sp.k1), double(sp.k2), double(sp.n1), double(n));
    if (std::abs(at - best) > 1e-12) split_ok = false;
  }
  const double factor = victory_factor(50);
  const bool factor_ok = factor == 13.005;

  const double kRs[] = {0.25, 0.5, 1.0, 2.0, 4.0};
  const double kBs[] = {0.3, 0.6, 1.2, 2.4, 4.8};
  auto engine_winner = [](const Topology& topo, double kR, double kB) {
    BattleConfig c;
    c.kappa_R = kR;
    c.kappa_B = kB;
    return winner({topo, c, uniform_state(topo.n_blue(), topo.n_red(), 1.0)});
  };
  auto agrees = [](double margin, Winner w) {
    return (margin > 0 && w == Winner::Red) || (margin < 0 && w == Winner::Blue);
  };

  // Splits at n = 10 where every Blue node is attacked equally often.
  struct SplitCase {
    std::size_t n1, k1, k2;
  };
  int agree = 0, cells = 0;
  for (const SplitCase sc : {SplitCase{5, 3, 3}, SplitCase{5, 2, 10}, SplitCase{5, 2, 4}}) {
    const auto topo = split_topology(10, sc.n1, sc.k1, sc.k2);
    for (double kR : kRs)
      for (double kB : kBs) {
        const MeanFieldSpec mf{10, double(sc.n1), double(10 - sc.n1), double(sc.k1), double(sc.k2), kR, kB, 1.0, 1.0};
        const double m = sc.k1 == sc.k2 ? victory_margin(10, kR, kB, 1.0, 1.0, false) : victory_margin(mf);
        agree += agrees(m, engine_winner(topo, kR, kB));
        ++cells;
      }
  }

  // The optimal split itself leaves half of Blue with one attacker fewer, so
  // a side can survive untouched; only decided battles are compared.
  const auto sp = optimal_split(10);
  const auto opt_topo = split_topology(10, sp.n1, sp.k1, sp.k2);
  int decided = 0, contradicted = 0, stalemates = 0;
  for (double kR : kRs)
    for (double kB : kBs) {
      const auto w = engine_winner(opt_topo, kR, kB);
      if (w == Winner::stalemate) {
        ++stalemates;
        continue;
      }
      ++decided;
      contradicted += !agrees(victory_margin(10, kR, kB, 1.0, 1.0, true), w);
    }

  const bool pass = drift < 1e-8 && split_ok && factor_ok && agree == cells && contradicted == 0;
  detail << "invariant drift " << fmt("%.1e", drift) << ", split " << (split_ok ? "ok" : "MISMATCH") << ", factor(50) "
         << fmt("%.6f", factor) << (factor_ok ? "" : " (not exact)") << ", engine/margin agree " << agree << "/"
         << cells << " on uniform-coverage splits; optimal split (5,1,10): " << decided - contradicted << "/" << decided
         << " decided agree, " << stalemates << " stalemates";
  return {pass, detail.str()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"manoeuvre_conservation", conservation},
      {"square_law_oracle", square_law},
      {"case_study_flip", case_flip},
      {"critical_curve_shape", critical_shape},
      {"optimizer_improvement", optimizer_improvement},
      {"lambda_transition", lambda_transition},
      {"heatmap_diagonal", heatmap_diagonal},
      {"meanfield_suite", meanfield_suite},
  };
  std::set<std::string> only(argv + 1, argv + argc);
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    if (!only.empty() && !only.count(name)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %s: %s (%.1fs)\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !v.pass;
  }
  return failed == 0 ? 0 : 1;
}
