#include "artifacts.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "netlanch/metrics.hpp"

namespace netlanch::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double or_nan(const std::optional<double>& v) { return v ? *v : kNaN; }

void write_csv(std::ostream& os, const Table& t, const Stamp& stamp) {
  os << "# netlanch " << stamp.version << " command=" << stamp.command << " seeds=" << stamp.seeds << '\n';
  bool first = true;
  for (const auto& c : t.text_columns) {
    os << (first ? "" : ",") << c;
    first = false;
  }
  for (const auto& c : t.columns) {
    os << (first ? "" : ",") << c;
    first = false;
  }
  os << '\n';
  os.precision(12);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    first = true;
    if (r < t.text_rows.size())
      for (const auto& v : t.text_rows[r]) {
        os << (first ? "" : ",") << v;
        first = false;
      }
    for (double v : t.rows[r]) {
      os << (first ? "" : ",");
      if (std::isnan(v))
        os << "nan";
      else
        os << v;
      first = false;
    }
    os << '\n';
  }
}

Json table_json(const Table& t, const Stamp& stamp) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    Json row = Json::object();
    if (r < t.text_rows.size())
      for (std::size_t c = 0; c < t.text_columns.size(); ++c) row[t.text_columns[c]] = t.text_rows[r][c];
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      const double v = t.rows[r][c];
      row[t.columns[c]] = std::isfinite(v) ? Json(v) : Json(nullptr);
    }
    rows.push_back(std::move(row));
  }
  return {{"meta", {{"tool", "netlanch"}, {"version", stamp.version}, {"command", stamp.command}, {"seeds", stamp.seeds}}},
          {"rows", rows}};
}

}  // namespace

Format format_from_string(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw ConfigError("format must be csv or json, got '" + s + "'");
}

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  if (!std::filesystem::is_directory(dir)) throw IoError(dir.string() + " is not a directory");
}

std::filesystem::path write_table(const std::filesystem::path& dir, const std::string& stem, const Table& table,
                                  Format format, const Stamp& stamp) {
  const auto file = dir / (stem + (format == Format::csv ? ".csv" : ".json"));
  std::ofstream os(file);
  if (!os) throw IoError("cannot open " + file.string() + " for writing");
  if (format == Format::csv)
    write_csv(os, table, stamp);
  else
    os << table_json(table, stamp).dump(1) << '\n';
  if (!os) throw IoError("write failed for " + file.string());
  return file;
}

void write_json(const std::filesystem::path& file, const Json& j) {
  std::ofstream os(file);
  if (!os) throw IoError("cannot open " + file.string() + " for writing");
  os << j.dump(2) << '\n';
  if (!os) throw IoError("write failed for " + file.string());
}

Table trajectory_table(const Trajectory& traj) {
  Table t;
  t.columns.push_back("time");
  const std::size_t nb = traj.terminal.blue.size();
  const std::size_t nr = traj.terminal.red.size();
  for (std::size_t i = 0; i < nb; ++i) t.columns.push_back("B_" + std::to_string(i + 1));
  for (std::size_t m = 0; m < nr; ++m) t.columns.push_back("R_" + std::to_string(m + 1));
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    std::vector<double> row;
    row.reserve(1 + nb + nr);
    row.push_back(traj.sample_times[k]);
    row.insert(row.end(), traj.states[k].blue.begin(), traj.states[k].blue.end());
    row.insert(row.end(), traj.states[k].red.begin(), traj.states[k].red.end());
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table trace_table(const std::vector<TraceRecord>& trace) {
  Table t;
  t.columns = {"iteration", "utility", "blue_mean", "red_mean", "accepted", "l_rb"};
  for (const auto& r : trace)
    t.rows.push_back({static_cast<double>(r.iteration), r.utility, r.blue_mean, r.red_mean, r.accepted ? 1.0 : 0.0,
                      static_cast<double>(r.l_rb)});
  return t;
}

Table heatmap_table(const HeatmapGrid& grid) {
  Table t;
  t.columns = {"x", "y", "value"};
  for (std::size_t iy = 0; iy < grid.ys.size(); ++iy)
    for (std::size_t ix = 0; ix < grid.xs.size(); ++ix) t.rows.push_back({grid.xs[ix], grid.ys[iy], grid.at(ix, iy)});
  return t;
}

Table critical_table(const std::vector<CriticalPoint>& points) {
  Table t;
  t.columns = {"f_R", "kappa_R_star"};
  for (const auto& p : points) t.rows.push_back({p.f_R, p.kappa_star.value_or(kNaN)});
  return t;
}

Table sweep_table(const std::vector<SweepRow>& rows) {
  Table t;
  t.columns = {"lambda", "kappa_R", "replicas", "best_k"};
  for (auto c : kMetricColumns) t.columns.emplace_back(c);
  for (auto c : kMetricColumns) t.columns.push_back("seed_" + std::string(c));
  for (const auto& r : rows) {
    std::vector<double> row{r.lambda, r.kappa_R, static_cast<double>(r.replicas), static_cast<double>(r.best_k)};
    for (const auto& v : metric_values(r.best)) row.push_back(or_nan(v));
    for (const auto& v : metric_values(r.seed)) row.push_back(or_nan(v));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table replica_table(const std::vector<ReplicaResult>& results) {
  Table t;
  t.text_columns = {"topology_seed", "optimizer_seed"};
  t.columns = {"lambda", "kappa_R", "replica", "seed_utility", "accepted", "aborted"};
  for (auto c : kMetricColumns) t.columns.emplace_back(c);
  for (const auto& r : results) {
    t.text_rows.push_back({std::to_string(r.topology_seed), std::to_string(r.optimizer_seed)});
    std::vector<double> row{r.lambda,
                            r.kappa_R,
                            static_cast<double>(r.replica),
                            r.run.seed_utility,
                            static_cast<double>(r.run.accepted),
                            static_cast<double>(r.run.aborted)};
    for (const auto& v : metric_values(r.metrics)) row.push_back(or_nan(v));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table meanfield_table(const std::vector<meanfield::Sample>& samples, const meanfield::MeanFieldSpec& spec) {
  Table t;
  t.columns = {"t", "R1", "R2", "B", "invariant"};
  for (const auto& s : samples)
    t.rows.push_back({s.t, s.state.R1, s.state.R2, s.state.B, meanfield::meanfield_invariant(s.state, spec)});
  return t;
}

}  // namespace netlanch::cli
