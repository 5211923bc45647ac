#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace netlanch {

enum class Side { Blue, Red };

[[nodiscard]] constexpr Side opponent(Side s) noexcept {
  return s == Side::Blue ? Side::Red : Side::Blue;
}

[[nodiscard]] std::string_view to_string(Side s) noexcept;

/// Raised when inputs violate a structural precondition (dimensions, ranges,
/// probabilities). Mapped to exit status 2 by the CLI.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an integration produces non-finite values. Exit status 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Resource levels of every node on both sides at one instant.
struct ForceState {
  std::vector<double> blue;
  std::vector<double> red;
  double time{0.0};

  [[nodiscard]] const std::vector<double>& side(Side s) const noexcept {
    return s == Side::Blue ? blue : red;
  }
  [[nodiscard]] std::vector<double>& side(Side s) noexcept {
    return s == Side::Blue ? blue : red;
  }
  [[nodiscard]] bool all_finite() const noexcept;

  friend bool operator==(const ForceState&, const ForceState&) = default;
};

using Edge = std::pair<std::size_t, std::size_t>;

/// Symmetric 0/1 adjacency matrix with an empty diagonal. The only mutators
/// touch both (i,j) and (j,i), so symmetry holds by construction.
class SymmetricAdjacency {
 public:
  SymmetricAdjacency() = default;
  explicit SymmetricAdjacency(std::size_t n) : n_(n), bits_(n * n, 0) {}

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] bool has(std::size_t i, std::size_t j) const {
    return bits_[index(i, j)] != 0;
  }
  /// Throws ConfigError on i == j or out-of-range indices.
  void set(std::size_t i, std::size_t j, bool linked);

  [[nodiscard]] std::size_t degree(std::size_t i) const;
  [[nodiscard]] std::vector<std::size_t> degrees() const;
  [[nodiscard]] std::size_t edge_count() const noexcept;
  /// Capacity of a simple graph on n nodes, n(n-1)/2.
  [[nodiscard]] std::size_t max_edges() const noexcept { return n_ < 2 ? 0 : n_ * (n_ - 1) / 2; }
  /// Edges as (i, j) with i < j, in row-major order.
  [[nodiscard]] std::vector<Edge> edges() const;
  /// Unlinked pairs (i, j) with i < j, in row-major order.
  [[nodiscard]] std::vector<Edge> vacancies() const;

  friend bool operator==(const SymmetricAdjacency&, const SymmetricAdjacency&) = default;

 private:
  [[nodiscard]] std::size_t index(std::size_t i, std::size_t j) const {
    if (i >= n_ || j >= n_) throw ConfigError("adjacency index out of range");
    return i * n_ + j;
  }

  std::size_t n_{0};
  std::vector<std::uint8_t> bits_;
};

/// 0/1 biadjacency matrix between Blue (rows) and Red (columns). Entry (i, m)
/// set means Blue i and Red m fire at each other.
class Biadjacency {
 public:
  Biadjacency() = default;
  Biadjacency(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), bits_(rows * cols, 0) {}

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] bool has(std::size_t i, std::size_t m) const { return bits_[index(i, m)] != 0; }
  void set(std::size_t i, std::size_t m, bool linked) { bits_[index(i, m)] = linked ? 1 : 0; }

  [[nodiscard]] std::size_t row_degree(std::size_t i) const;
  [[nodiscard]] std::size_t col_degree(std::size_t m) const;
  [[nodiscard]] std::vector<std::size_t> row_degrees() const;
  [[nodiscard]] std::vector<std::size_t> col_degrees() const;
  [[nodiscard]] std::size_t edge_count() const noexcept;
  [[nodiscard]] std::size_t capacity() const noexcept { return rows_ * cols_; }
  [[nodiscard]] std::vector<Edge> edges() const;
  [[nodiscard]] std::vector<Edge> vacancies() const;
  [[nodiscard]] Biadjacency transposed() const;

  friend bool operator==(const Biadjacency&, const Biadjacency&) = default;

 private:
  [[nodiscard]] std::size_t index(std::size_t i, std::size_t m) const {
    if (i >= rows_ || m >= cols_) throw ConfigError("engagement index out of range");
    return i * cols_ + m;
  }

  std::size_t rows_{0};
  std::size_t cols_{0};
  std::vector<std::uint8_t> bits_;
};

/// The three networks of a battle: each side's manoeuvre graph and the shared
/// engagement graph.
struct Topology {
  SymmetricAdjacency blue_manoeuvre;
  SymmetricAdjacency red_manoeuvre;
  Biadjacency engagement;

  Topology() = default;
  Topology(std::size_t n_blue, std::size_t n_red)
      : blue_manoeuvre(n_blue), red_manoeuvre(n_red), engagement(n_blue, n_red) {}

  [[nodiscard]] std::size_t n_blue() const noexcept { return blue_manoeuvre.size(); }
  [[nodiscard]] std::size_t n_red() const noexcept { return red_manoeuvre.size(); }
  [[nodiscard]] std::size_t n(Side s) const noexcept { return s == Side::Blue ? n_blue() : n_red(); }
  [[nodiscard]] const SymmetricAdjacency& manoeuvre(Side s) const noexcept {
    return s == Side::Blue ? blue_manoeuvre : red_manoeuvre;
  }
  /// Engagement degree of a node of the given side.
  [[nodiscard]] std::size_t engagement_degree(Side s, std::size_t node) const {
    return s == Side::Blue ? engagement.row_degree(node) : engagement.col_degree(node);
  }
  [[nodiscard]] std::vector<std::size_t> engagement_degrees(Side s) const {
    return s == Side::Blue ? engagement.row_degrees() : engagement.col_degrees();
  }

  /// Throws ConfigError if the engagement matrix does not match the node counts.
  void check_consistent() const;

  friend bool operator==(const Topology&, const Topology&) = default;
};

/// Swap the roles of Blue and Red.
[[nodiscard]] Topology mirrored(const Topology& topo);

/// Apply `blue_perm` / `red_perm` (new index of old node k is perm[k]) to
/// every network.
[[nodiscard]] Topology relabeled(const Topology& topo, const std::vector<std::size_t>& blue_perm,
                                 const std::vector<std::size_t>& red_perm);

struct BattleConfig {
  double kappa_B{1.0};
  double kappa_R{1.0};
  double gamma_B{1.0};
  double gamma_R{1.0};
  double eps_theta{1e-3};
  double eps_delta{1.0};
  double theta_floor{0.0};
  double dt{0.01};
  double t_max{200.0};
  double term_tol{1e-4};
  double annihilation_tol{1e-3};

  /// Collects every violated invariant into one message list.
  [[nodiscard]] std::vector<std::string> problems() const;
  void validate() const;

  friend bool operator==(const BattleConfig&, const BattleConfig&) = default;
};

struct ScenarioSpec {
  Topology topology;
  BattleConfig config;
  ForceState initial;

  [[nodiscard]] std::vector<std::string> problems() const;
  void validate() const;

  friend bool operator==(const ScenarioSpec&, const ScenarioSpec&) = default;
};

/// Every node on both sides starts at `level`.
[[nodiscard]] ForceState uniform_state(std::size_t n_blue, std::size_t n_red, double level);

}  // namespace netlanch
