#include "netlanch/metrics.hpp"

#include <algorithm>

#include "netlanch/model.hpp"

namespace netlanch {

std::array<std::optional<double>, 10> metric_values(const StructuralMetrics& m) {
  return {m.utility,
          m.blue_mean,
          m.red_mean,
          m.n_sacrificial,
          m.l_rb_per_node,
          m.frac_attacked_blue,
          m.avg_attacks_on_attacked,
          m.max_red_manoeuvre_degree,
          m.avg_manoeuvre_degree_attacked_blue,
          m.avg_manoeuvre_degree_attacking_red};
}

std::size_t count_sacrificial(const Topology& topo, std::size_t k_threshold) {
  if (k_threshold < 1) throw ConfigError("k_threshold must be >= 1");
  topo.check_consistent();
  const auto manoeuvre = topo.red_manoeuvre.degrees();
  const auto engage = topo.engagement.col_degrees();
  std::size_t count = 0;
  for (std::size_t m = 0; m < manoeuvre.size(); ++m)
    if (manoeuvre[m] == 0 && engage[m] > k_threshold) ++count;
  return count;
}

StructuralMetrics compute_metrics(const Topology& topo, const ForceState& terminal, const UtilityParams& params,
                                  std::size_t k_threshold) {
  topo.check_consistent();
  if (terminal.blue.size() != topo.n_blue() || terminal.red.size() != topo.n_red())
    throw ConfigError("terminal state does not match topology");

  StructuralMetrics m;
  m.utility = utility(terminal, params);
  m.blue_mean = total_force(terminal, Side::Blue).mean;
  m.red_mean = total_force(terminal, Side::Red).mean;
  m.n_sacrificial = static_cast<double>(count_sacrificial(topo, k_threshold));

  const std::size_t l_rb = topo.engagement.edge_count();
  m.l_rb_per_node = topo.n_red() ? static_cast<double>(l_rb) / static_cast<double>(topo.n_red()) : 0.0;

  const auto blue_engage = topo.engagement.row_degrees();
  const auto red_engage = topo.engagement.col_degrees();
  const auto blue_manoeuvre = topo.blue_manoeuvre.degrees();
  const auto red_manoeuvre = topo.red_manoeuvre.degrees();

  std::size_t attacked = 0;
  std::size_t attacks = 0;
  std::size_t attacked_manoeuvre = 0;
  for (std::size_t i = 0; i < blue_engage.size(); ++i) {
    if (blue_engage[i] == 0) continue;
    ++attacked;
    attacks += blue_engage[i];
    attacked_manoeuvre += blue_manoeuvre[i];
  }
  m.frac_attacked_blue = topo.n_blue() ? static_cast<double>(attacked) / static_cast<double>(topo.n_blue()) : 0.0;
  if (attacked > 0) {
    m.avg_attacks_on_attacked = static_cast<double>(attacks) / static_cast<double>(attacked);
    m.avg_manoeuvre_degree_attacked_blue = static_cast<double>(attacked_manoeuvre) / static_cast<double>(attacked);
  }

  std::size_t attackers = 0;
  std::size_t attacker_manoeuvre = 0;
  for (std::size_t r = 0; r < red_engage.size(); ++r) {
    if (red_engage[r] == 0) continue;
    ++attackers;
    attacker_manoeuvre += red_manoeuvre[r];
  }
  if (attackers > 0)
    m.avg_manoeuvre_degree_attacking_red = static_cast<double>(attacker_manoeuvre) / static_cast<double>(attackers);

  m.max_red_manoeuvre_degree =
      red_manoeuvre.empty() ? 0.0 : static_cast<double>(*std::max_element(red_manoeuvre.begin(), red_manoeuvre.end()));
  return m;
}

StructuralMetrics average_metrics(const std::vector<StructuralMetrics>& rows) {
  StructuralMetrics out;
  if (rows.empty()) return out;
  const double n = static_cast<double>(rows.size());
  auto avg_opt = [&](auto field) -> std::optional<double> {
    double s = 0.0;
    std::size_t k = 0;
    for (const auto& r : rows) {
      if (const auto& v = r.*field) {
        s += *v;
        ++k;
      }
    }
    if (k == 0) return std::nullopt;
    return s / static_cast<double>(k);
  };
  for (const auto& r : rows) {
    out.utility += r.utility / n;
    out.blue_mean += r.blue_mean / n;
    out.red_mean += r.red_mean / n;
    out.n_sacrificial += r.n_sacrificial / n;
    out.l_rb_per_node += r.l_rb_per_node / n;
    out.frac_attacked_blue += r.frac_attacked_blue / n;
    out.max_red_manoeuvre_degree += r.max_red_manoeuvre_degree / n;
  }
  out.avg_attacks_on_attacked = avg_opt(&StructuralMetrics::avg_attacks_on_attacked);
  out.avg_manoeuvre_degree_attacked_blue = avg_opt(&StructuralMetrics::avg_manoeuvre_degree_attacked_blue);
  out.avg_manoeuvre_degree_attacking_red = avg_opt(&StructuralMetrics::avg_manoeuvre_degree_attacking_red);
  return out;
}

}  // namespace netlanch
