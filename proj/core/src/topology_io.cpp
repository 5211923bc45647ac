#include "netlanch/topology_io.hpp"

#include <set>
#include <sstream>

namespace netlanch {

namespace {

Json edges_to_json(const std::vector<Edge>& edges) {
  Json arr = Json::array();
  for (const auto& [a, b] : edges) arr.push_back(Json::array({a, b}));
  return arr;
}

std::optional<std::size_t> read_count(const Json& j, const char* key, std::vector<std::string>& errors,
                                      const std::string& path) {
  if (!j.contains(key)) {
    errors.push_back(path + "/" + key + ": missing");
    return std::nullopt;
  }
  const Json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    errors.push_back(path + "/" + key + ": expected a non-negative integer");
    return std::nullopt;
  }
  return v.get<std::size_t>();
}

// Reads [[a, b], ...]; reports malformed entries and range errors.
std::vector<Edge> read_pairs(const Json& arr, std::size_t limit_a, std::size_t limit_b, const std::string& where,
                             std::vector<std::string>& errors) {
  std::vector<Edge> out;
  if (!arr.is_array()) {
    errors.push_back(where + ": expected an array of index pairs");
    return out;
  }
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const Json& e = arr[k];
    const std::string at = where + "/" + std::to_string(k);
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer() ||
        e[0].get<long long>() < 0 || e[1].get<long long>() < 0) {
      errors.push_back(at + ": expected a pair of non-negative integers");
      continue;
    }
    const auto a = e[0].get<std::size_t>();
    const auto b = e[1].get<std::size_t>();
    if (a >= limit_a || b >= limit_b) {
      std::ostringstream os;
      os << at << ": pair [" << a << ", " << b << "] out of range";
      errors.push_back(os.str());
      continue;
    }
    out.emplace_back(a, b);
  }
  return out;
}

void fill_manoeuvre(const Json& j, const char* edges_key, const char* matrix_key, SymmetricAdjacency& adj,
                    const std::string& path, std::vector<std::string>& errors) {
  const std::size_t n = adj.size();
  if (j.contains(matrix_key)) {
    const Json& mat = j.at(matrix_key);
    const std::string where = path + "/" + matrix_key;
    if (!mat.is_array() || mat.size() != n) {
      errors.push_back(where + ": expected " + std::to_string(n) + " rows");
      return;
    }
    std::vector<std::vector<int>> dense(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      if (!mat[i].is_array() || mat[i].size() != n) {
        errors.push_back(where + "/" + std::to_string(i) + ": expected " + std::to_string(n) + " columns");
        return;
      }
      for (std::size_t k = 0; k < n; ++k) {
        const Json& v = mat[i][k];
        if (!v.is_number_integer() || (v.get<int>() != 0 && v.get<int>() != 1)) {
          errors.push_back(where + "/" + std::to_string(i) + "/" + std::to_string(k) + ": entries must be 0 or 1");
          return;
        }
        dense[i][k] = v.get<int>();
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (dense[i][i] != 0) errors.push_back(where + ": non-zero diagonal at node " + std::to_string(i));
      for (std::size_t k = i + 1; k < n; ++k) {
        if (dense[i][k] != dense[k][i]) {
          std::ostringstream os;
          os << where << ": asymmetric entry at pair (" << i << ", " << k << ")";
          errors.push_back(os.str());
        } else if (dense[i][k]) {
          adj.set(i, k, true);
        }
      }
    }
    return;
  }
  if (!j.contains(edges_key)) return;
  const std::string where = path + "/" + edges_key;
  const auto pairs = read_pairs(j.at(edges_key), n, n, where, errors);
  std::set<Edge> seen;
  for (const auto& [a, b] : pairs) {
    if (a == b) {
      errors.push_back(where + ": self-loop at node " + std::to_string(a));
      continue;
    }
    const Edge key{std::min(a, b), std::max(a, b)};
    if (!seen.insert(key).second) {
      std::ostringstream os;
      os << where << ": duplicate edge [" << key.first << ", " << key.second << "]";
      errors.push_back(os.str());
      continue;
    }
    adj.set(a, b, true);
  }
}

}  // namespace

Json topology_to_json(const Topology& topo) {
  Json j;
  j["n_blue"] = topo.n_blue();
  j["n_red"] = topo.n_red();
  j["blue_edges"] = edges_to_json(topo.blue_manoeuvre.edges());
  j["red_edges"] = edges_to_json(topo.red_manoeuvre.edges());
  j["engagement_edges"] = edges_to_json(topo.engagement.edges());
  return j;
}

std::optional<Topology> topology_from_json(const Json& j, std::vector<std::string>& errors, const std::string& path) {
  const std::size_t before = errors.size();
  if (!j.is_object()) {
    errors.push_back(path + ": topology must be an object");
    return std::nullopt;
  }
  const auto n_blue = read_count(j, "n_blue", errors, path);
  const auto n_red = read_count(j, "n_red", errors, path);
  if (!n_blue || !n_red) return std::nullopt;

  Topology topo(*n_blue, *n_red);
  fill_manoeuvre(j, "blue_edges", "blue_matrix", topo.blue_manoeuvre, path, errors);
  fill_manoeuvre(j, "red_edges", "red_matrix", topo.red_manoeuvre, path, errors);
  if (j.contains("engagement_edges")) {
    const std::string where = path + "/engagement_edges";
    for (const auto& [i, m] : read_pairs(j.at("engagement_edges"), *n_blue, *n_red, where, errors)) {
      if (topo.engagement.has(i, m)) {
        std::ostringstream os;
        os << where << ": duplicate engagement [" << i << ", " << m << "]";
        errors.push_back(os.str());
        continue;
      }
      topo.engagement.set(i, m, true);
    }
  }
  if (errors.size() != before) return std::nullopt;
  return topo;
}

Topology topology_from_json(const Json& j) {
  std::vector<std::string> errors;
  auto topo = topology_from_json(j, errors);
  if (!topo) throw ConfigError(join_errors(errors));
  return *topo;
}

Json state_to_json(const ForceState& state) {
  return Json{{"time", state.time}, {"blue", state.blue}, {"red", state.red}};
}

std::optional<ForceState> state_from_json(const Json& j, std::vector<std::string>& errors, const std::string& path) {
  const std::size_t before = errors.size();
  ForceState s;
  auto read_vec = [&](const char* key, std::vector<double>& out) {
    if (!j.contains(key)) {
      errors.push_back(path + "/" + key + ": missing");
      return;
    }
    const Json& arr = j.at(key);
    if (!arr.is_array()) {
      errors.push_back(path + "/" + key + ": expected an array of numbers");
      return;
    }
    for (std::size_t k = 0; k < arr.size(); ++k) {
      if (!arr[k].is_number()) {
        errors.push_back(path + "/" + key + "/" + std::to_string(k) + ": expected a number");
        continue;
      }
      out.push_back(arr[k].get<double>());
    }
  };
  if (!j.is_object()) {
    errors.push_back(path + ": state must be an object with blue/red arrays");
    return std::nullopt;
  }
  read_vec("blue", s.blue);
  read_vec("red", s.red);
  if (j.contains("time") && j.at("time").is_number()) s.time = j.at("time").get<double>();
  if (errors.size() != before) return std::nullopt;
  return s;
}

std::string join_errors(const std::vector<std::string>& errors) {
  std::string out;
  for (std::size_t k = 0; k < errors.size(); ++k) {
    if (k) out += "; ";
    out += errors[k];
  }
  return out;
}

}  // namespace netlanch
