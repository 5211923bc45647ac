#include "netlanch/config.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

namespace netlanch {

namespace {

class Reader {
 public:
  explicit Reader(std::vector<std::string>& errors) : errors_(errors) {}

  void error(const std::string& path, const std::string& msg) { errors_.push_back(path + ": " + msg); }
  /// Problems of the form "<field> ..." are filed under the field's pointer.
  void problems(const std::string& path, const std::vector<std::string>& msgs, std::initializer_list<const char*> keys) {
    for (const auto& m : msgs) {
      const auto field = m.substr(0, m.find(' '));
      const bool known = std::any_of(keys.begin(), keys.end(), [&](const char* k) { return field == k; });
      error(known ? path + "/" + field : path, m);
    }
  }

  // False (and an error) unless `j` is an object; flags keys outside `allowed`.
  bool object(const Json& j, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) {
      error(path.empty() ? "/" : path, "expected an object");
      return false;
    }
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [k, v] : j.items())
      if (!ok.count(k)) error(path + "/" + k, "unknown key");
    return true;
  }

  void number(const Json& j, const char* key, const std::string& path, double& out) {
    if (!j.contains(key)) return;
    const Json& v = j.at(key);
    if (!v.is_number()) return error(path + "/" + key, "expected a number");
    out = v.get<double>();
  }

  void count(const Json& j, const char* key, const std::string& path, std::size_t& out) {
    if (!j.contains(key)) return;
    const Json& v = j.at(key);
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<long long>() < 0))
      return error(path + "/" + key, "expected a non-negative integer");
    out = v.get<std::size_t>();
  }

  void seed(const Json& j, const char* key, const std::string& path, std::uint64_t& out) {
    if (!j.contains(key)) return;
    const Json& v = j.at(key);
    if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<long long>() < 0))
      return error(path + "/" + key, "expected a non-negative integer");
    out = v.get<std::uint64_t>();
  }

  void boolean(const Json& j, const char* key, const std::string& path, bool& out) {
    if (!j.contains(key)) return;
    const Json& v = j.at(key);
    if (!v.is_boolean()) return error(path + "/" + key, "expected true or false");
    out = v.get<bool>();
  }

  void string(const Json& j, const char* key, const std::string& path, std::string& out) {
    if (!j.contains(key)) return;
    const Json& v = j.at(key);
    if (!v.is_string()) return error(path + "/" + key, "expected a string");
    out = v.get<std::string>();
  }

  void numbers(const Json& j, const char* key, const std::string& path, std::vector<double>& out) {
    if (!j.contains(key)) return;
    const Json& v = j.at(key);
    const std::string at = path + "/" + key;
    if (!v.is_array()) return error(at, "expected an array of numbers");
    std::vector<double> tmp;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) return error(at + "/" + std::to_string(i), "expected a number");
      tmp.push_back(v[i].get<double>());
    }
    out = std::move(tmp);
  }

  void param(const Json& j, const char* key, const std::string& path, Param& out) {
    std::string s;
    if (!j.contains(key)) return;
    if (!j.at(key).is_string()) return error(path + "/" + key, "expected a parameter name");
    s = j.at(key).get<std::string>();
    try {
      out = param_from_string(s);
    } catch (const ConfigError& e) {
      error(path + "/" + key, e.what());
    }
  }

 private:
  std::vector<std::string>& errors_;
};

void read_battle(Reader& r, const Json& j, const std::string& p, BattleConfig& c) {
  static constexpr std::initializer_list<const char*> keys{
      "kappa_B", "kappa_R", "gamma_B", "gamma_R", "eps_theta", "eps_delta", "theta_floor", "dt", "t_max",
      "term_tol", "annihilation_tol"};
  if (!r.object(j, p, keys)) return;
  r.number(j, "kappa_B", p, c.kappa_B);
  r.number(j, "kappa_R", p, c.kappa_R);
  r.number(j, "gamma_B", p, c.gamma_B);
  r.number(j, "gamma_R", p, c.gamma_R);
  r.number(j, "eps_theta", p, c.eps_theta);
  r.number(j, "eps_delta", p, c.eps_delta);
  r.number(j, "theta_floor", p, c.theta_floor);
  r.number(j, "dt", p, c.dt);
  r.number(j, "t_max", p, c.t_max);
  r.number(j, "term_tol", p, c.term_tol);
  r.number(j, "annihilation_tol", p, c.annihilation_tol);
  r.problems(p, c.problems(), keys);
}

void read_moves(Reader& r, const Json& j, const std::string& p, MoveSet& m) {
  static constexpr std::initializer_list<const char*> keys{"p_manoeuvre", "p_engage_rewire", "p_engage_add",
                                                           "p_engage_remove", "allow_link_count_change"};
  if (!r.object(j, p, keys)) return;
  r.number(j, "p_manoeuvre", p, m.p_manoeuvre);
  r.number(j, "p_engage_rewire", p, m.p_engage_rewire);
  r.number(j, "p_engage_add", p, m.p_engage_add);
  r.number(j, "p_engage_remove", p, m.p_engage_remove);
  r.boolean(j, "allow_link_count_change", p, m.allow_link_count_change);
  r.problems(p, m.problems(), keys);
}

void read_random(Reader& r, const Json& j, const std::string& p, RandomNetworkSection& s) {
  if (!r.object(j, p, {"n", "l_manoeuvre", "l_engage", "seed", "initial_level"})) return;
  r.count(j, "n", p, s.n);
  r.count(j, "l_manoeuvre", p, s.l_manoeuvre);
  r.count(j, "l_engage", p, s.l_engage);
  r.seed(j, "seed", p, s.seed);
  r.number(j, "initial_level", p, s.initial_level);
  if (s.n < 2) r.error(p + "/n", "must be >= 2");
  if (s.n >= 2 && s.l_manoeuvre > s.n * (s.n - 1) / 2) r.error(p + "/l_manoeuvre", "exceeds n(n-1)/2");
  if (s.l_engage > s.n * s.n) r.error(p + "/l_engage", "exceeds n*n");
  if (!(s.initial_level > 0) || !std::isfinite(s.initial_level)) r.error(p + "/initial_level", "must be > 0");
}

void read_optimizer(Reader& r, const Json& j, const std::string& p, OptimizerSection& s) {
  if (!r.object(j, p,
                {"lambda", "lambdas", "kappas", "iterations", "seed", "replicas", "best_k", "sacrificial_threshold",
                 "moves"}))
    return;
  r.number(j, "lambda", p, s.lambda);
  r.numbers(j, "lambdas", p, s.lambdas);
  r.numbers(j, "kappas", p, s.kappas);
  r.count(j, "iterations", p, s.iterations);
  r.seed(j, "seed", p, s.seed);
  r.count(j, "replicas", p, s.replicas);
  r.count(j, "best_k", p, s.best_k);
  r.count(j, "sacrificial_threshold", p, s.sacrificial_threshold);
  if (j.contains("moves")) read_moves(r, j.at("moves"), p + "/moves", s.moves);
  auto in_unit = [](double v) { return v >= 0 && v <= 1; };
  if (!in_unit(s.lambda)) r.error(p + "/lambda", "must lie in [0, 1]");
  for (std::size_t i = 0; i < s.lambdas.size(); ++i)
    if (!in_unit(s.lambdas[i])) r.error(p + "/lambdas/" + std::to_string(i), "must lie in [0, 1]");
  for (std::size_t i = 0; i < s.kappas.size(); ++i)
    if (!(s.kappas[i] >= 0)) r.error(p + "/kappas/" + std::to_string(i), "must be >= 0");
  if (s.iterations < 1) r.error(p + "/iterations", "must be >= 1");
  if (s.replicas < 1) r.error(p + "/replicas", "must be >= 1");
  if (s.best_k < 1) r.error(p + "/best_k", "must be >= 1");
  if (s.replicas < s.best_k) r.error(p + "/replicas", "must be >= best_k");
  if (s.sacrificial_threshold < 1) r.error(p + "/sacrificial_threshold", "must be >= 1");
}

void read_axis(Reader& r, const Json& j, const std::string& p, Axis& a) {
  if (!r.object(j, p, {"param", "min", "max", "count"})) return;
  r.param(j, "param", p, a.param);
  r.number(j, "min", p, a.min);
  r.number(j, "max", p, a.max);
  r.count(j, "count", p, a.count);
}

void read_heatmap(Reader& r, const Json& j, const std::string& p, HeatmapSection& s) {
  if (!r.object(j, p, {"x", "y", "overrides", "topology_source", "ensemble", "mirrored"})) return;
  if (j.contains("x")) read_axis(r, j.at("x"), p + "/x", s.spec.x);
  if (j.contains("y")) read_axis(r, j.at("y"), p + "/y", s.spec.y);
  if (j.contains("overrides")) {
    const Json& o = j.at("overrides");
    const std::string op = p + "/overrides";
    if (!o.is_object()) {
      r.error(op, "expected an object of parameter values");
    } else {
      s.spec.overrides.clear();
      for (const auto& [k, v] : o.items()) {
        try {
          const Param param = param_from_string(k);
          if (!v.is_number())
            r.error(op + "/" + k, "expected a number");
          else
            s.spec.overrides[param] = v.get<double>();
        } catch (const ConfigError& e) {
          r.error(op + "/" + k, e.what());
        }
      }
    }
  }
  if (j.contains("topology_source")) {
    const Json& t = j.at("topology_source");
    const std::string tp = p + "/topology_source";
    if (r.object(t, tp, {"kind", "lambda"})) {
      std::string kind = s.spec.source.kind == TopologySource::Kind::optimized ? "optimized" : "random_seed";
      r.string(t, "kind", tp, kind);
      if (kind == "optimized")
        s.spec.source.kind = TopologySource::Kind::optimized;
      else if (kind == "random_seed")
        s.spec.source.kind = TopologySource::Kind::random_seed;
      else
        r.error(tp + "/kind", "expected \"optimized\" or \"random_seed\"");
      r.number(t, "lambda", tp, s.spec.source.lambda);
      if (!(s.spec.source.lambda >= 0 && s.spec.source.lambda <= 1)) r.error(tp + "/lambda", "must lie in [0, 1]");
    }
  }
  r.count(j, "ensemble", p, s.ensemble);
  r.boolean(j, "mirrored", p, s.mirrored);
  if (s.ensemble < 1) r.error(p + "/ensemble", "must be >= 1");
  try {
    s.spec.validate();
  } catch (const ConfigError& e) {
    r.error(p, e.what());
  }
}

void read_case_study(Reader& r, const Json& j, const std::string& p, CaseStudySection& s) {
  if (!r.object(j, p, {"case", "f_R", "kappa_R", "red_wiring", "f_values", "bracket", "tol"})) return;
  if (j.contains("case")) {
    const Json& c = j.at("case");
    if (!c.is_number_integer()) {
      r.error(p + "/case", "expected 1, 2 or 3");
    } else {
      try {
        s.spec.case_id = case_from_int(c.get<int>());
      } catch (const ConfigError& e) {
        r.error(p + "/case", e.what());
      }
    }
  }
  r.number(j, "f_R", p, s.spec.f_R);
  r.number(j, "kappa_R", p, s.spec.kappa_R);
  if (j.contains("red_wiring")) {
    const Json& w = j.at("red_wiring");
    const std::string wp = p + "/red_wiring";
    if (!w.is_array()) {
      r.error(wp, "expected an array of index pairs");
    } else {
      std::vector<Edge> edges;
      for (std::size_t k = 0; k < w.size(); ++k) {
        const Json& e = w[k];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned()) {
          r.error(wp + "/" + std::to_string(k), "expected a pair of non-negative integers");
          continue;
        }
        const auto a = e[0].get<std::size_t>();
        const auto b = e[1].get<std::size_t>();
        if (a >= 4 || b >= 4)
          r.error(wp + "/" + std::to_string(k), "Red node index out of range 0..3");
        else if (a == b)
          r.error(wp + "/" + std::to_string(k), "self-loop");
        else
          edges.emplace_back(a, b);
      }
      s.spec.red_wiring = std::move(edges);
    }
  }
  r.numbers(j, "f_values", p, s.f_values);
  if (j.contains("bracket")) {
    std::vector<double> b;
    r.numbers(j, "bracket", p, b);
    if (b.size() == 2)
      s.bracket = {b[0], b[1]};
    else
      r.error(p + "/bracket", "expected [lo, hi]");
  }
  r.number(j, "tol", p, s.tol);
  if (!(s.spec.f_R > 0)) r.error(p + "/f_R", "must be > 0");
  if (!(s.spec.kappa_R >= 0)) r.error(p + "/kappa_R", "must be >= 0");
  for (std::size_t i = 0; i < s.f_values.size(); ++i)
    if (!(s.f_values[i] > 0)) r.error(p + "/f_values/" + std::to_string(i), "must be > 0");
  if (!(s.bracket.lo >= 0 && s.bracket.lo < s.bracket.hi)) r.error(p + "/bracket", "must satisfy 0 <= lo < hi");
  if (!(s.tol > 0)) r.error(p + "/tol", "must be > 0");
}

void read_meanfield(Reader& r, const Json& j, const std::string& p, MeanFieldSection& s) {
  if (!r.object(j, p, {"n", "n1", "n2", "k1", "k2", "kappa_R", "kappa_B", "R0", "B0", "dt", "t_end"})) return;
  auto& m = s.spec;
  r.number(j, "n", p, m.n);
  r.number(j, "n1", p, m.n1);
  r.number(j, "n2", p, m.n2);
  r.number(j, "k1", p, m.k1);
  r.number(j, "k2", p, m.k2);
  r.number(j, "kappa_R", p, m.kappa_R);
  r.number(j, "kappa_B", p, m.kappa_B);
  r.number(j, "R0", p, m.R0);
  r.number(j, "B0", p, m.B0);
  r.number(j, "dt", p, s.dt);
  r.number(j, "t_end", p, s.t_end);
  try {
    m.validate();
  } catch (const ConfigError& e) {
    r.error(p, e.what());
  }
  if (!(s.dt > 0)) r.error(p + "/dt", "must be > 0");
  if (!(s.t_end > 0)) r.error(p + "/t_end", "must be > 0");
}

void read_output(Reader& r, const Json& j, const std::string& p, OutputSection& s) {
  if (!r.object(j, p, {"dir", "workers", "record_every", "format"})) return;
  r.string(j, "dir", p, s.dir);
  r.string(j, "format", p, s.format);
  if (s.format != "csv" && s.format != "json") r.error(p + "/format", "must be \"csv\" or \"json\"");
  r.count(j, "workers", p, s.workers);
  r.count(j, "record_every", p, s.record_every);
  if (s.workers < 1) r.error(p + "/workers", "must be >= 1");
  if (s.dir.empty()) r.error(p + "/dir", "must not be empty");
}

RunManifest read_manifest(const Json& j, std::vector<std::string>& errors) {
  Reader r(errors);
  RunManifest m;
  if (!r.object(j, "",
                {"battle", "topology", "initial", "random", "optimizer", "heatmap", "case_study", "meanfield",
                 "output"}))
    return m;
  if (j.contains("battle")) read_battle(r, j.at("battle"), "/battle", m.battle);
  if (j.contains("topology")) m.topology = topology_from_json(j.at("topology"), errors, "/topology");
  if (j.contains("initial")) m.initial = state_from_json(j.at("initial"), errors, "/initial");
  if (j.contains("random")) read_random(r, j.at("random"), "/random", m.random);
  if (j.contains("optimizer")) read_optimizer(r, j.at("optimizer"), "/optimizer", m.optimizer);
  if (j.contains("heatmap")) read_heatmap(r, j.at("heatmap"), "/heatmap", m.heatmap);
  if (j.contains("case_study")) read_case_study(r, j.at("case_study"), "/case_study", m.case_study);
  if (j.contains("meanfield")) read_meanfield(r, j.at("meanfield"), "/meanfield", m.meanfield);
  if (j.contains("output")) read_output(r, j.at("output"), "/output", m.output);
  m.case_study.spec.config = m.battle;

  if (m.initial && !m.topology) r.error("/initial", "an explicit initial state needs an explicit topology");
  if (m.initial && m.topology) {
    if (m.initial->blue.size() != m.topology->n_blue() || m.initial->red.size() != m.topology->n_red())
      r.error("/initial", "node counts do not match /topology");
  }
  return m;
}

Json axis_to_json(const Axis& a) {
  return {{"param", std::string(to_string(a.param))}, {"min", a.min}, {"max", a.max}, {"count", a.count}};
}

}  // namespace

Json battle_config_to_json(const BattleConfig& c) {
  return {{"kappa_B", c.kappa_B},     {"kappa_R", c.kappa_R}, {"gamma_B", c.gamma_B},   {"gamma_R", c.gamma_R},
          {"eps_theta", c.eps_theta}, {"eps_delta", c.eps_delta}, {"theta_floor", c.theta_floor}, {"dt", c.dt},
          {"t_max", c.t_max},         {"term_tol", c.term_tol}, {"annihilation_tol", c.annihilation_tol}};
}

Json move_set_to_json(const MoveSet& m) {
  return {{"p_manoeuvre", m.p_manoeuvre},
          {"p_engage_rewire", m.p_engage_rewire},
          {"p_engage_add", m.p_engage_add},
          {"p_engage_remove", m.p_engage_remove},
          {"allow_link_count_change", m.allow_link_count_change}};
}

std::vector<std::string> validate_config(const Json& j) {
  std::vector<std::string> errors;
  (void)read_manifest(j, errors);
  return errors;
}

RunManifest parse_manifest(const Json& j) {
  std::vector<std::string> errors;
  RunManifest m = read_manifest(j, errors);
  if (!errors.empty()) throw ConfigError(join_errors(errors));
  return m;
}

RunManifest parse_manifest_text(const std::string& text, const std::string& source) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    const std::size_t byte = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < byte; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": invalid JSON (" +
                      e.what() + ")");
  }
  try {
    return parse_manifest(j);
  } catch (const ConfigError& e) {
    throw ConfigError(source + ": " + e.what());
  }
}

Json manifest_to_json(const RunManifest& m) {
  Json j;
  j["battle"] = battle_config_to_json(m.battle);
  if (m.topology) j["topology"] = topology_to_json(*m.topology);
  if (m.initial) j["initial"] = state_to_json(*m.initial);
  j["random"] = {{"n", m.random.n},
                 {"l_manoeuvre", m.random.l_manoeuvre},
                 {"l_engage", m.random.l_engage},
                 {"seed", m.random.seed},
                 {"initial_level", m.random.initial_level}};
  const auto& o = m.optimizer;
  j["optimizer"] = {{"lambda", o.lambda},
                    {"lambdas", o.lambdas},
                    {"kappas", o.kappas},
                    {"iterations", o.iterations},
                    {"seed", o.seed},
                    {"replicas", o.replicas},
                    {"best_k", o.best_k},
                    {"sacrificial_threshold", o.sacrificial_threshold},
                    {"moves", move_set_to_json(o.moves)}};
  const auto& h = m.heatmap;
  Json overrides = Json::object();
  for (const auto& [p, v] : h.spec.overrides) overrides[std::string(to_string(p))] = v;
  j["heatmap"] = {
      {"x", axis_to_json(h.spec.x)},
      {"y", axis_to_json(h.spec.y)},
      {"overrides", overrides},
      {"topology_source",
       {{"kind", h.spec.source.kind == TopologySource::Kind::optimized ? "optimized" : "random_seed"},
        {"lambda", h.spec.source.lambda}}},
      {"ensemble", h.ensemble},
      {"mirrored", h.mirrored}};
  const auto& c = m.case_study;
  Json wiring = Json::array();
  for (const auto& [a, b] : c.spec.red_wiring) wiring.push_back({a, b});
  j["case_study"] = {{"case", static_cast<int>(c.spec.case_id)},
                     {"f_R", c.spec.f_R},
                     {"kappa_R", c.spec.kappa_R},
                     {"red_wiring", wiring},
                     {"f_values", c.f_values},
                     {"bracket", {c.bracket.lo, c.bracket.hi}},
                     {"tol", c.tol}};
  const auto& mf = m.meanfield.spec;
  j["meanfield"] = {{"n", mf.n},   {"n1", mf.n1}, {"n2", mf.n2}, {"k1", mf.k1}, {"k2", mf.k2},
                    {"kappa_R", mf.kappa_R}, {"kappa_B", mf.kappa_B}, {"R0", mf.R0}, {"B0", mf.B0},
                    {"dt", m.meanfield.dt}, {"t_end", m.meanfield.t_end}};
  j["output"] = {{"dir", m.output.dir}, {"workers", m.output.workers}, {"record_every", m.output.record_every},
                 {"format", m.output.format}};
  return j;
}

Json default_manifest() { return manifest_to_json(RunManifest{}); }

ScenarioSpec scenario_from_manifest(const RunManifest& m) {
  ScenarioSpec s;
  s.config = m.battle;
  if (m.topology) {
    s.topology = *m.topology;
  } else {
    Rng rng(m.random.seed);
    s.topology = seed_topology(m.random.n, m.random.l_manoeuvre, m.random.l_engage, rng);
  }
  s.initial = m.initial ? *m.initial
                        : uniform_state(s.topology.n_blue(), s.topology.n_red(), m.random.initial_level);
  s.validate();
  return s;
}

OptimizationSetup optimization_setup(const RunManifest& m) {
  OptimizationSetup s;
  s.n = m.random.n;
  s.l_manoeuvre = m.random.l_manoeuvre;
  s.l_engage = m.random.l_engage;
  s.config = m.battle;
  s.initial_level = m.random.initial_level;
  s.moves = m.optimizer.moves;
  s.iterations = m.optimizer.iterations;
  s.seed = m.optimizer.seed;
  s.replicas = m.optimizer.replicas;
  s.best_k = m.optimizer.best_k;
  s.sacrificial_threshold = m.optimizer.sacrificial_threshold;
  s.workers = m.output.workers;
  return s;
}

}  // namespace netlanch
