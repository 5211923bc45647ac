#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "netlanch/config.hpp"
#include "netlanch/integrator.hpp"
#include "netlanch/meanfield.hpp"
#include "netlanch/optimizer.hpp"
#include "netlanch/scenarios.hpp"

namespace netlanch::cli {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { csv, json };

[[nodiscard]] Format format_from_string(const std::string& s);

/// Provenance stamped on every data file: a `# ...` comment line in CSV, a
/// "meta" object in JSON.
struct Stamp {
  std::string command;
  std::string version;
  std::string seeds;
};

/// Column-oriented table; rendered as CSV or as a JSON array of row objects.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  /// Optional per-row text columns, written before the numeric ones.
  std::vector<std::string> text_columns;
  std::vector<std::vector<std::string>> text_rows;
};

void ensure_directory(const std::filesystem::path& dir);

/// Writes `table` to dir/stem.csv or dir/stem.json; returns the file path.
std::filesystem::path write_table(const std::filesystem::path& dir, const std::string& stem, const Table& table,
                                  Format format, const Stamp& stamp);

void write_json(const std::filesystem::path& file, const Json& j);

[[nodiscard]] Table trajectory_table(const Trajectory& traj);
[[nodiscard]] Table trace_table(const std::vector<TraceRecord>& trace);
[[nodiscard]] Table heatmap_table(const HeatmapGrid& grid);
[[nodiscard]] Table critical_table(const std::vector<CriticalPoint>& points);
[[nodiscard]] Table sweep_table(const std::vector<SweepRow>& rows);
[[nodiscard]] Table replica_table(const std::vector<ReplicaResult>& results);
[[nodiscard]] Table meanfield_table(const std::vector<meanfield::Sample>& samples, const meanfield::MeanFieldSpec& spec);

}  // namespace netlanch::cli
