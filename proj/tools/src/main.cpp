#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>

#include "commands.hpp"
#include "netlanch/version.hpp"

using namespace netlanch;
using netlanch::cli::IoError;

namespace {

enum Exit { kOk = 0, kConfig = 2, kNumerical = 3, kIo = 4 };

int fail(Exit code, const char* kind, const std::string& msg) {
  std::cerr << Json{{"error", kind}, {"message", msg}}.dump() << '\n';
  return code;
}

std::string read_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

// Flag values applied on top of the config file, only when given.
class Overrides {
 public:
  template <class T, class F>
  CLI::Option* add(CLI::App* app, const std::string& flags, const std::string& desc, F set) {
    auto value = std::make_shared<T>();
    keep_.push_back(value);
    CLI::Option* opt = app->add_option(flags, *value, desc);
    apply_.push_back([opt, value, set](RunManifest& m) {
      if (opt->count()) set(m, *value);
    });
    return opt;
  }

  void apply(RunManifest& m) const {
    for (const auto& f : apply_) f(m);
  }

 private:
  std::vector<std::shared_ptr<void>> keep_;
  std::vector<std::function<void(RunManifest&)>> apply_;
};

void apply_environment(RunManifest& m) {
  if (const char* dir = std::getenv("NETLANCH_OUTPUT_DIR"); dir && *dir) m.output.dir = dir;
  if (const char* w = std::getenv("NETLANCH_WORKERS"); w && *w) {
    char* end = nullptr;
    const long v = std::strtol(w, &end, 10);
    if (*end != '\0' || v < 1) throw ConfigError("NETLANCH_WORKERS must be a positive integer, got '" + std::string(w) + "'");
    m.output.workers = static_cast<std::size_t>(v);
  }
}

void battle_flags(Overrides& ov, CLI::App* app) {
  ov.add<double>(app, "--kappa-r", "Red kill rate", [](RunManifest& m, double v) {
    m.battle.kappa_R = v;
    m.case_study.spec.kappa_R = v;
  });
  ov.add<double>(app, "--kappa-b", "Blue kill rate", [](RunManifest& m, double v) { m.battle.kappa_B = v; });
  ov.add<double>(app, "--gamma-r", "Red manoeuvre rate", [](RunManifest& m, double v) { m.battle.gamma_R = v; });
  ov.add<double>(app, "--gamma-b", "Blue manoeuvre rate", [](RunManifest& m, double v) { m.battle.gamma_B = v; });
  ov.add<double>(app, "--t-max", "integration horizon", [](RunManifest& m, double v) { m.battle.t_max = v; });
}

void network_flags(Overrides& ov, CLI::App* app) {
  ov.add<std::size_t>(app, "--n", "nodes per side of the random seed network",
                      [](RunManifest& m, std::size_t v) { m.random.n = v; });
  ov.add<std::size_t>(app, "--l-manoeuvre", "manoeuvre links per side",
                      [](RunManifest& m, std::size_t v) { m.random.l_manoeuvre = v; });
  ov.add<std::size_t>(app, "--l-engage", "engagement links",
                      [](RunManifest& m, std::size_t v) { m.random.l_engage = v; });
  ov.add<std::uint64_t>(app, "--network-seed", "seed of the random seed network",
                        [](RunManifest& m, std::uint64_t v) { m.random.seed = v; });
}

void optimizer_flags(Overrides& ov, CLI::App* app) {
  ov.add<std::uint64_t>(app, "--seed", "optimiser seed", [](RunManifest& m, std::uint64_t v) { m.optimizer.seed = v; });
  ov.add<std::size_t>(app, "--iterations", "proposals per run",
                      [](RunManifest& m, std::size_t v) { m.optimizer.iterations = v; });
  ov.add<double>(app, "--lambda", "offence weight in [0, 1]", [](RunManifest& m, double v) { m.optimizer.lambda = v; });
}

void replica_flags(Overrides& ov, CLI::App* app) {
  ov.add<std::size_t>(app, "--replicas", "optimisation runs per sweep point",
                      [](RunManifest& m, std::size_t v) { m.optimizer.replicas = v; });
  ov.add<std::size_t>(app, "--best-k", "top runs averaged per sweep point",
                      [](RunManifest& m, std::size_t v) { m.optimizer.best_k = v; });
  ov.add<std::size_t>(app, "--sacrificial-threshold", "engagement degree above which an isolated Red node counts",
                      [](RunManifest& m, std::size_t v) { m.optimizer.sacrificial_threshold = v; });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Networked Lanchester model of fires and manoeuvre"};
  app.set_version_flag("--version", NETLANCH_VERSION);
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::size_t workers = 0;
  std::string format;
  bool quiet = false;
  app.add_option("-c,--config", config_path, "JSON run manifest");
  app.add_option("-o,--out", out_dir, "output directory");
  app.add_option("-w,--workers", workers, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--format", format, "data file format")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("-q,--quiet", quiet, "no progress output");

  Overrides ov;

  auto* simulate = app.add_subcommand("simulate", "integrate one scenario and write its trajectory");
  battle_flags(ov, simulate);
  network_flags(ov, simulate);
  ov.add<std::size_t>(simulate, "--record-every", "sampling stride in steps",
                      [](RunManifest& m, std::size_t v) { m.output.record_every = v; });

  auto* opt = app.add_subcommand("optimize", "hill-climb Red's networks from a random seed network");
  battle_flags(ov, opt);
  network_flags(ov, opt);
  optimizer_flags(ov, opt);

  auto* sweep = app.add_subcommand("sweep", "replicated optimisations and outcome heatmaps");
  sweep->require_subcommand(1);
  auto* sweep_lambda = sweep->add_subcommand("lambda", "optimise across offence weights");
  auto* sweep_kappa = sweep->add_subcommand("kappa", "optimise across Red kill rates");
  auto* sweep_heatmap = sweep->add_subcommand("heatmap", "terminal red-minus-blue over a parameter grid");
  for (auto* sub : {sweep_lambda, sweep_kappa, sweep_heatmap}) {
    battle_flags(ov, sub);
    network_flags(ov, sub);
    optimizer_flags(ov, sub);
  }
  for (auto* sub : {sweep_lambda, sweep_kappa}) replica_flags(ov, sub);
  ov.add<std::vector<double>>(sweep_lambda, "--lambdas", "comma-separated offence weights",
                              [](RunManifest& m, const std::vector<double>& v) { m.optimizer.lambdas = v; })
      ->delimiter(',');
  ov.add<std::vector<double>>(sweep_kappa, "--kappas", "comma-separated Red kill rates",
                              [](RunManifest& m, const std::vector<double>& v) { m.optimizer.kappas = v; })
      ->delimiter(',');
  ov.add<std::size_t>(sweep_heatmap, "--resolution", "grid points per axis", [](RunManifest& m, std::size_t v) {
    m.heatmap.spec.x.count = v;
    m.heatmap.spec.y.count = v;
  });
  ov.add<std::size_t>(sweep_heatmap, "--ensemble", "random networks averaged per cell",
                      [](RunManifest& m, std::size_t v) { m.heatmap.ensemble = v; });
  ov.add<bool>(sweep_heatmap, "--mirrored", "add the mirror of each network",
               [](RunManifest& m, bool v) { m.heatmap.mirrored = v; });

  auto* casestudy = app.add_subcommand("casestudy", "two Blue against four Red");
  auto case_flags = [&](CLI::App* sub) {
    ov.add<int>(sub, "--case", "reserve arrangement 1, 2 or 3",
                [](RunManifest& m, int v) { m.case_study.spec.case_id = case_from_int(v); });
    ov.add<double>(sub, "--f-r", "Red resource fraction", [](RunManifest& m, double v) { m.case_study.spec.f_R = v; });
    ov.add<double>(sub, "--kappa-r", "Red kill rate", [](RunManifest& m, double v) {
      m.case_study.spec.kappa_R = v;
      m.battle.kappa_R = v;
    });
  };
  case_flags(casestudy);
  ov.add<std::size_t>(casestudy, "--record-every", "sampling stride in steps",
                      [](RunManifest& m, std::size_t v) { m.output.record_every = v; });
  auto* critical = casestudy->add_subcommand("critical", "critical Red kill rate across f_R");
  case_flags(critical);
  ov.add<std::vector<double>>(critical, "--f-values", "comma-separated f_R grid",
                              [](RunManifest& m, const std::vector<double>& v) { m.case_study.f_values = v; })
      ->delimiter(',');
  ov.add<double>(critical, "--lo", "lower kappa_R bracket", [](RunManifest& m, double v) { m.case_study.bracket.lo = v; });
  ov.add<double>(critical, "--hi", "upper kappa_R bracket", [](RunManifest& m, double v) { m.case_study.bracket.hi = v; });
  ov.add<double>(critical, "--tol", "bisection width", [](RunManifest& m, double v) { m.case_study.tol = v; });

  auto* mf = app.add_subcommand("meanfield", "two-group mean-field model and victory conditions");
  ov.add<std::size_t>(mf, "--n", "force size; also selects the optimal split", [](RunManifest& m, std::size_t v) {
    auto& s = m.meanfield.spec;
    s.n = static_cast<double>(v);
    if (v >= 2) {
      const auto split = meanfield::optimal_split(v);
      s.n1 = static_cast<double>(split.n1);
      s.n2 = static_cast<double>(v - split.n1);
      s.k1 = static_cast<double>(split.k1);
      s.k2 = static_cast<double>(split.k2);
    }
  });
  ov.add<double>(mf, "--n1", "size of group 1", [](RunManifest& m, double v) {
    m.meanfield.spec.n1 = v;
    m.meanfield.spec.n2 = m.meanfield.spec.n - v;
  });
  ov.add<double>(mf, "--k1", "attacks per node of group 1", [](RunManifest& m, double v) { m.meanfield.spec.k1 = v; });
  ov.add<double>(mf, "--k2", "attacks per node of group 2", [](RunManifest& m, double v) { m.meanfield.spec.k2 = v; });
  ov.add<double>(mf, "--kappa-r", "Red kill rate", [](RunManifest& m, double v) { m.meanfield.spec.kappa_R = v; });
  ov.add<double>(mf, "--kappa-b", "Blue kill rate", [](RunManifest& m, double v) { m.meanfield.spec.kappa_B = v; });
  ov.add<double>(mf, "--r0", "initial Red per node", [](RunManifest& m, double v) { m.meanfield.spec.R0 = v; });
  ov.add<double>(mf, "--b0", "initial Blue per node", [](RunManifest& m, double v) { m.meanfield.spec.B0 = v; });
  ov.add<double>(mf, "--t-end", "integration horizon", [](RunManifest& m, double v) { m.meanfield.t_end = v; });

  auto* validate = app.add_subcommand("validate", "check a run manifest and report every problem");
  std::string validate_path;
  validate->add_option("file", validate_path, "manifest to check")->required();

  app.add_subcommand("defaults", "print the default manifest");

  auto* rerun = app.add_subcommand("rerun", "repeat the run recorded in a summary.json");
  std::string summary_path;
  rerun->add_option("summary", summary_path, "summary.json of an earlier run")->required();

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();
  for (auto* sub : {sweep_lambda, sweep_kappa, sweep_heatmap, critical}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(kConfig, "usage", e.what());
  }

  try {
    if (app.got_subcommand("defaults")) {
      std::cout << default_manifest().dump(2) << '\n';
      return kOk;
    }
    if (validate->parsed()) {
      const std::string text = read_file(validate_path);
      Json j;
      try {
        j = Json::parse(text);
      } catch (const Json::parse_error&) {
        (void)parse_manifest_text(text, validate_path);
      }
      const auto errors = validate_config(j);
      for (const auto& e : errors) std::cout << validate_path << ": " << e << '\n';
      if (!errors.empty()) return kConfig;
      std::cout << validate_path << ": ok\n";
      return kOk;
    }

    cli::RunRequest req;
    if (rerun->parsed()) {
      const std::string text = read_file(summary_path);
      Json j;
      try {
        j = Json::parse(text);
      } catch (const Json::parse_error& e) {
        throw ConfigError(summary_path + ": invalid JSON (" + e.what() + ")");
      }
      req = cli::request_from_summary(j);
    } else {
      req.manifest = config_path.empty() ? RunManifest{} : parse_manifest_text(read_file(config_path), config_path);
      apply_environment(req.manifest);
      ov.apply(req.manifest);
      if (simulate->parsed())
        req.command = "simulate";
      else if (opt->parsed())
        req.command = "optimize";
      else if (sweep_lambda->parsed())
        req.command = "sweep lambda";
      else if (sweep_kappa->parsed())
        req.command = "sweep kappa";
      else if (sweep_heatmap->parsed())
        req.command = "sweep heatmap";
      else if (critical->parsed())
        req.command = "casestudy critical";
      else if (casestudy->parsed())
        req.command = "casestudy";
      else if (mf->parsed())
        req.command = "meanfield";
    }
    if (!out_dir.empty()) req.manifest.output.dir = out_dir;
    if (workers > 0) req.manifest.output.workers = workers;
    if (!format.empty()) req.manifest.output.format = format;
    req.quiet = quiet;
    // Flags bypass the manifest reader, so re-check the resolved manifest.
    req.manifest = parse_manifest(manifest_to_json(req.manifest));

    const Json summary = cli::run_command(req);
    if (!quiet)
      std::cerr << "[netlanch] " << req.command << " done in " << summary["timings"]["wall_seconds"].get<double>()
                << " s, output in " << req.manifest.output.dir << '\n';
    return kOk;
  } catch (const ConfigError& e) {
    return fail(kConfig, "config", e.what());
  } catch (const NumericalError& e) {
    return fail(kNumerical, "numerical", e.what());
  } catch (const IoError& e) {
    return fail(kIo, "io", e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(kIo, "io", e.what());
  }
}
