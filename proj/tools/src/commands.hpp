#pragma once

#include <string>
#include <vector>

#include "artifacts.hpp"
#include "netlanch/config.hpp"

namespace netlanch::cli {

/// Commands understood by run_command; "sweep" and "casestudy" take a mode.
inline const std::vector<std::string> kCommands{"simulate",      "optimize",         "sweep lambda",
                                                "sweep kappa",   "sweep heatmap",    "casestudy",
                                                "casestudy critical", "meanfield"};

struct RunRequest {
  std::string command;
  RunManifest manifest;
  bool quiet{false};
};

/// Runs the command, writes its data files and summary.json into
/// manifest.output.dir and returns the summary.
Json run_command(const RunRequest& request);

/// Rebuilds the request recorded in a summary.json.
[[nodiscard]] RunRequest request_from_summary(const Json& summary);

}  // namespace netlanch::cli
