#include "netlanch/optimizer.hpp"

#include <array>
#include <cmath>
#include <numeric>

#include "netlanch/model.hpp"

namespace netlanch {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) noexcept {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void UtilityParams::validate() const {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ConfigError("lambda must lie in [0, 1]");
  if (!std::isfinite(initial_blue_mean)) throw ConfigError("initial_blue_mean must be finite");
}

double utility(const ForceState& terminal, const UtilityParams& params) {
  const double red = total_force(terminal, Side::Red).mean;
  const double blue = total_force(terminal, Side::Blue).mean;
  return params.lambda * red + (1.0 - params.lambda) * (params.initial_blue_mean - blue);
}

std::vector<std::string> MoveSet::problems() const {
  std::vector<std::string> out;
  const std::array<std::pair<const char*, double>, 4> ps{{{"p_manoeuvre", p_manoeuvre},
                                                           {"p_engage_rewire", p_engage_rewire},
                                                           {"p_engage_add", p_engage_add},
                                                           {"p_engage_remove", p_engage_remove}}};
  double sum = 0.0;
  for (const auto& [name, p] : ps) {
    if (!std::isfinite(p) || p < 0.0) out.push_back(std::string(name) + " must be >= 0");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) out.push_back("move probabilities must sum to 1 (got " + std::to_string(sum) + ")");
  return out;
}

void MoveSet::validate() const {
  const auto p = problems();
  if (!p.empty()) throw ConfigError(p.front());
}

std::string_view to_string(MoveKind k) noexcept {
  switch (k) {
    case MoveKind::manoeuvre_rewire: return "manoeuvre_rewire";
    case MoveKind::engage_rewire: return "engage_rewire";
    case MoveKind::engage_add: return "engage_add";
    case MoveKind::engage_remove: return "engage_remove";
  }
  return "unknown";
}

namespace {

std::size_t pick(std::size_t n, Rng& rng) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

// First `k` entries of a uniform random permutation of [0, n).
std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + pick(n - i, rng);
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  return idx;
}

void fill_random_graph(SymmetricAdjacency& adj, std::size_t links, Rng& rng) {
  const auto slots = adj.vacancies();
  for (auto k : sample_without_replacement(slots.size(), links, rng)) adj.set(slots[k].first, slots[k].second, true);
}

}  // namespace

Topology seed_topology(std::size_t n, std::size_t l_manoeuvre, std::size_t l_engage, Rng& rng) {
  const std::size_t max_manoeuvre = n < 2 ? 0 : n * (n - 1) / 2;
  if (l_manoeuvre > max_manoeuvre)
    throw ConfigError("l_manoeuvre=" + std::to_string(l_manoeuvre) + " exceeds n(n-1)/2=" +
                      std::to_string(max_manoeuvre));
  if (l_engage > n * n)
    throw ConfigError("l_engage=" + std::to_string(l_engage) + " exceeds n*n=" + std::to_string(n * n));
  Topology topo(n, n);
  fill_random_graph(topo.blue_manoeuvre, l_manoeuvre, rng);
  fill_random_graph(topo.red_manoeuvre, l_manoeuvre, rng);
  for (auto k : sample_without_replacement(n * n, l_engage, rng)) topo.engagement.set(k / n, k % n, true);
  return topo;
}

Proposal propose_move(const Topology& topo, const MoveSet& moves, Rng& rng) {
  moves.validate();
  const std::size_t l_red = topo.red_manoeuvre.edge_count();
  const std::size_t l_rb = topo.engagement.edge_count();
  const bool manoeuvre_ok = l_red > 0 && l_red < topo.red_manoeuvre.max_edges();
  const bool engage_ok = l_rb > 0 && l_rb < topo.engagement.capacity();
  const bool add_ok = moves.allow_link_count_change && l_rb < topo.engagement.capacity();
  const bool remove_ok = moves.allow_link_count_change && l_rb > 0;

  // Drawing among feasible classes with renormalised weights is the same
  // distribution as redrawing until a feasible class comes up.
  const std::array<double, 4> weights{manoeuvre_ok ? moves.p_manoeuvre : 0.0, engage_ok ? moves.p_engage_rewire : 0.0,
                                      add_ok ? moves.p_engage_add : 0.0, remove_ok ? moves.p_engage_remove : 0.0};
  if (std::accumulate(weights.begin(), weights.end(), 0.0) <= 0.0)
    throw ConfigError("no feasible move for this topology and move set");
  std::discrete_distribution<int> cls(weights.begin(), weights.end());

  Proposal out{topo, static_cast<MoveKind>(cls(rng))};
  Topology& t = out.topology;
  switch (out.kind) {
    case MoveKind::manoeuvre_rewire: {
      const auto links = t.red_manoeuvre.edges();
      const auto holes = t.red_manoeuvre.vacancies();
      const auto from = links[pick(links.size(), rng)];
      const auto to = holes[pick(holes.size(), rng)];
      t.red_manoeuvre.set(from.first, from.second, false);
      t.red_manoeuvre.set(to.first, to.second, true);
      break;
    }
    case MoveKind::engage_rewire: {
      const auto links = t.engagement.edges();
      const auto holes = t.engagement.vacancies();
      const auto from = links[pick(links.size(), rng)];
      const auto to = holes[pick(holes.size(), rng)];
      t.engagement.set(from.first, from.second, false);
      t.engagement.set(to.first, to.second, true);
      break;
    }
    case MoveKind::engage_add: {
      const auto holes = t.engagement.vacancies();
      const auto to = holes[pick(holes.size(), rng)];
      t.engagement.set(to.first, to.second, true);
      break;
    }
    case MoveKind::engage_remove: {
      const auto links = t.engagement.edges();
      const auto from = links[pick(links.size(), rng)];
      t.engagement.set(from.first, from.second, false);
      break;
    }
  }
  return out;
}

OptimizationRun optimize(const ScenarioSpec& spec, const UtilityParams& params, const MoveSet& moves,
                         const OptimizeOptions& options) {
  spec.validate();
  params.validate();
  moves.validate();

  OptimizationRun run;
  run.seed = options.seed;
  run.iterations = options.iterations;
  run.seed_topology = spec.topology;

  ScenarioSpec current = spec;
  run.best_outcome = settle(current);
  run.seed_utility = utility(run.best_outcome.terminal, params);
  run.best_utility = run.seed_utility;
  run.trace.reserve(options.iterations);

  Rng rng(options.seed);
  ScenarioSpec candidate = spec;
  for (std::size_t it = 0; it < options.iterations; ++it) {
    Proposal prop = propose_move(current.topology, moves, rng);
    candidate.topology = std::move(prop.topology);

    TraceRecord rec;
    rec.iteration = it + 1;
    rec.l_rb = candidate.topology.engagement.edge_count();
    try {
      IntegrationOutcome outcome = settle(candidate);
      rec.utility = utility(outcome.terminal, params);
      rec.blue_mean = total_force(outcome.terminal, Side::Blue).mean;
      rec.red_mean = total_force(outcome.terminal, Side::Red).mean;
      if (rec.utility > run.best_utility) {
        rec.accepted = true;
        run.best_utility = rec.utility;
        run.best_outcome = std::move(outcome);
        std::swap(current.topology, candidate.topology);
        ++run.accepted;
      }
    } catch (const NumericalError&) {
      rec.utility = std::nan("");
      rec.blue_mean = std::nan("");
      rec.red_mean = std::nan("");
      ++run.aborted;
    }
    run.trace.push_back(rec);
    if (options.progress && options.progress_every > 0 && (it + 1) % options.progress_every == 0)
      options.progress(it + 1, run.best_utility);
  }
  run.best_topology = current.topology;
  return run;
}

OptimizationRun optimize(const ScenarioSpec& spec, const UtilityParams& params, const MoveSet& moves,
                         std::size_t iterations, std::uint64_t seed) {
  OptimizeOptions opts;
  opts.iterations = iterations;
  opts.seed = seed;
  return optimize(spec, params, moves, opts);
}

}  // namespace netlanch
