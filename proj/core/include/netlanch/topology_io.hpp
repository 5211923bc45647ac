#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "netlanch/types.hpp"

namespace netlanch {

using Json = nlohmann::json;

/// Shared network format:
///   { "n_blue": N, "n_red": M,
///     "blue_edges": [[i, j], ...],        // i < j
///     "red_edges": [[l, m], ...],         // l < m
///     "engagement_edges": [[blue_i, red_m], ...] }
[[nodiscard]] Json topology_to_json(const Topology& topo);

/// Reads the shared network format. Manoeuvre networks may alternatively be
/// given as dense matrices under "blue_matrix" / "red_matrix". Every problem is
/// appended to `errors` (prefixed by `path`); returns nullopt if any were found.
[[nodiscard]] std::optional<Topology> topology_from_json(const Json& j, std::vector<std::string>& errors,
                                                         const std::string& path = "");

/// Throwing form; the ConfigError message joins all problems.
[[nodiscard]] Topology topology_from_json(const Json& j);

[[nodiscard]] Json state_to_json(const ForceState& state);
[[nodiscard]] std::optional<ForceState> state_from_json(const Json& j, std::vector<std::string>& errors,
                                                        const std::string& path = "");

[[nodiscard]] std::string join_errors(const std::vector<std::string>& errors);

}  // namespace netlanch
