#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "netlanch/optimizer.hpp"
#include "netlanch/types.hpp"

namespace netlanch {

/// Structural quantities of an optimised configuration. Averages over an
/// empty set are left unset rather than reported as zero.
struct StructuralMetrics {
  double utility{0.0};
  double blue_mean{0.0};
  double red_mean{0.0};
  double n_sacrificial{0.0};
  /// Engagement links per Red node, L_RB / N_R.
  double l_rb_per_node{0.0};
  double frac_attacked_blue{0.0};
  std::optional<double> avg_attacks_on_attacked;
  double max_red_manoeuvre_degree{0.0};
  std::optional<double> avg_manoeuvre_degree_attacked_blue;
  std::optional<double> avg_manoeuvre_degree_attacking_red;
};

/// Column names, in CSV order.
inline constexpr std::array<std::string_view, 10> kMetricColumns{
    "utility",
    "blue_mean",
    "red_mean",
    "n_sacrificial",
    "l_rb_per_node",
    "frac_attacked_blue",
    "avg_attacks_on_attacked",
    "max_red_manoeuvre_degree",
    "avg_manoeuvre_degree_attacked_blue",
    "avg_manoeuvre_degree_attacking_red",
};

/// Values in kMetricColumns order; unset averages become nullopt.
[[nodiscard]] std::array<std::optional<double>, 10> metric_values(const StructuralMetrics& m);

/// Red nodes with no Red manoeuvre links and engagement degree strictly
/// greater than `k_threshold`.
[[nodiscard]] std::size_t count_sacrificial(const Topology& topo, std::size_t k_threshold = 10);

[[nodiscard]] StructuralMetrics compute_metrics(const Topology& topo, const ForceState& terminal,
                                                const UtilityParams& params, std::size_t k_threshold = 10);

/// Field-wise mean. Optional fields average over the entries that are set
/// and stay unset if none are.
[[nodiscard]] StructuralMetrics average_metrics(const std::vector<StructuralMetrics>& rows);

}  // namespace netlanch
