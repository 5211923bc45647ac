#include "netlanch/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace netlanch {

std::string_view to_string(Side s) noexcept { return s == Side::Blue ? "blue" : "red"; }

bool ForceState::all_finite() const noexcept {
  auto finite = [](double v) { return std::isfinite(v); };
  return std::all_of(blue.begin(), blue.end(), finite) && std::all_of(red.begin(), red.end(), finite) &&
         std::isfinite(time);
}

// ---------------------------------------------------------------------------

void SymmetricAdjacency::set(std::size_t i, std::size_t j, bool linked) {
  if (i == j) throw ConfigError("manoeuvre self-loop at node " + std::to_string(i));
  const std::uint8_t v = linked ? 1 : 0;
  bits_[index(i, j)] = v;
  bits_[index(j, i)] = v;
}

std::size_t SymmetricAdjacency::degree(std::size_t i) const {
  const auto row = bits_.begin() + static_cast<std::ptrdiff_t>(index(i, 0));
  return static_cast<std::size_t>(std::count(row, row + static_cast<std::ptrdiff_t>(n_), std::uint8_t{1}));
}

std::vector<std::size_t> SymmetricAdjacency::degrees() const {
  std::vector<std::size_t> d(n_);
  for (std::size_t i = 0; i < n_; ++i) d[i] = degree(i);
  return d;
}

std::size_t SymmetricAdjacency::edge_count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1})) / 2;
}

std::vector<Edge> SymmetricAdjacency::edges() const {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if (bits_[i * n_ + j]) out.emplace_back(i, j);
  return out;
}

std::vector<Edge> SymmetricAdjacency::vacancies() const {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if (!bits_[i * n_ + j]) out.emplace_back(i, j);
  return out;
}

// ---------------------------------------------------------------------------

std::size_t Biadjacency::row_degree(std::size_t i) const {
  const auto row = bits_.begin() + static_cast<std::ptrdiff_t>(index(i, 0));
  return static_cast<std::size_t>(std::count(row, row + static_cast<std::ptrdiff_t>(cols_), std::uint8_t{1}));
}

std::size_t Biadjacency::col_degree(std::size_t m) const {
  std::size_t d = 0;
  for (std::size_t i = 0; i < rows_; ++i) d += bits_[index(i, m)];
  return d;
}

std::vector<std::size_t> Biadjacency::row_degrees() const {
  std::vector<std::size_t> d(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t m = 0; m < cols_; ++m) d[i] += bits_[i * cols_ + m];
  return d;
}

std::vector<std::size_t> Biadjacency::col_degrees() const {
  std::vector<std::size_t> d(cols_, 0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t m = 0; m < cols_; ++m) d[m] += bits_[i * cols_ + m];
  return d;
}

std::size_t Biadjacency::edge_count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::vector<Edge> Biadjacency::edges() const {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t m = 0; m < cols_; ++m)
      if (bits_[i * cols_ + m]) out.emplace_back(i, m);
  return out;
}

std::vector<Edge> Biadjacency::vacancies() const {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t m = 0; m < cols_; ++m)
      if (!bits_[i * cols_ + m]) out.emplace_back(i, m);
  return out;
}

Biadjacency Biadjacency::transposed() const {
  Biadjacency t(cols_, rows_);
  for (const auto& [i, m] : edges()) t.set(m, i, true);
  return t;
}

// ---------------------------------------------------------------------------

void Topology::check_consistent() const {
  if (engagement.rows() != n_blue() || engagement.cols() != n_red()) {
    std::ostringstream os;
    os << "engagement matrix is " << engagement.rows() << "x" << engagement.cols() << " but forces are "
       << n_blue() << " blue and " << n_red() << " red";
    throw ConfigError(os.str());
  }
}

Topology mirrored(const Topology& topo) {
  Topology out;
  out.blue_manoeuvre = topo.red_manoeuvre;
  out.red_manoeuvre = topo.blue_manoeuvre;
  out.engagement = topo.engagement.transposed();
  return out;
}

namespace {

void check_permutation(const std::vector<std::size_t>& perm, std::size_t n) {
  if (perm.size() != n) throw ConfigError("permutation has wrong length");
  std::vector<std::size_t> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k < n; ++k)
    if (sorted[k] != k) throw ConfigError("not a permutation");
}

}  // namespace

Topology relabeled(const Topology& topo, const std::vector<std::size_t>& blue_perm,
                   const std::vector<std::size_t>& red_perm) {
  check_permutation(blue_perm, topo.n_blue());
  check_permutation(red_perm, topo.n_red());
  Topology out(topo.n_blue(), topo.n_red());
  for (const auto& [i, j] : topo.blue_manoeuvre.edges()) out.blue_manoeuvre.set(blue_perm[i], blue_perm[j], true);
  for (const auto& [i, j] : topo.red_manoeuvre.edges()) out.red_manoeuvre.set(red_perm[i], red_perm[j], true);
  for (const auto& [i, m] : topo.engagement.edges()) out.engagement.set(blue_perm[i], red_perm[m], true);
  return out;
}

// ---------------------------------------------------------------------------

std::vector<std::string> BattleConfig::problems() const {
  std::vector<std::string> out;
  auto non_negative = [&](double v, const char* name) {
    if (!std::isfinite(v) || v < 0.0) out.push_back(std::string(name) + " must be a finite value >= 0");
  };
  auto positive = [&](double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0) out.push_back(std::string(name) + " must be a finite value > 0");
  };
  non_negative(kappa_B, "kappa_B");
  non_negative(kappa_R, "kappa_R");
  non_negative(gamma_B, "gamma_B");
  non_negative(gamma_R, "gamma_R");
  positive(eps_theta, "eps_theta");
  positive(eps_delta, "eps_delta");
  if (!std::isfinite(theta_floor)) out.emplace_back("theta_floor must be finite");
  positive(dt, "dt");
  positive(t_max, "t_max");
  positive(term_tol, "term_tol");
  positive(annihilation_tol, "annihilation_tol");
  return out;
}

void BattleConfig::validate() const {
  const auto p = problems();
  if (!p.empty()) throw ConfigError(p.front());
}

std::vector<std::string> ScenarioSpec::problems() const {
  std::vector<std::string> out = config.problems();
  if (topology.engagement.rows() != topology.n_blue() || topology.engagement.cols() != topology.n_red())
    out.emplace_back("engagement matrix dimensions do not match node counts");
  if (initial.blue.size() != topology.n_blue())
    out.push_back("initial blue state has " + std::to_string(initial.blue.size()) + " entries, topology has " +
                  std::to_string(topology.n_blue()) + " blue nodes");
  if (initial.red.size() != topology.n_red())
    out.push_back("initial red state has " + std::to_string(initial.red.size()) + " entries, topology has " +
                  std::to_string(topology.n_red()) + " red nodes");
  if (!initial.all_finite()) out.emplace_back("initial state contains non-finite values");
  return out;
}

void ScenarioSpec::validate() const {
  const auto p = problems();
  if (!p.empty()) throw ConfigError(p.front());
}

ForceState uniform_state(std::size_t n_blue, std::size_t n_red, double level) {
  return ForceState{std::vector<double>(n_blue, level), std::vector<double>(n_red, level), 0.0};
}

}  // namespace netlanch
