#pragma once

#include <cmath>
#include <filesystem>
#include <random>
#include <string>

#include "netlanch/model.hpp"
#include "netlanch/types.hpp"

namespace netlanch::oracle {

inline double step(double x, double eps) { return 0.5 * (1.0 + std::tanh(x / eps)); }

/// Dense, loop-by-loop transcription of the networked equations. Shares no
/// code with BattleSystem.
inline Derivative naive_rhs(const ForceState& s, const Topology& t, const BattleConfig& c) {
  const std::size_t nb = t.n_blue();
  const std::size_t nr = t.n_red();
  Derivative d{std::vector<double>(nb, 0.0), std::vector<double>(nr, 0.0)};

  std::vector<double> delta_b(nb), delta_r(nr);
  for (std::size_t i = 0; i < nb; ++i) {
    double S = 0.0;
    for (std::size_t m = 0; m < nr; ++m)
      if (t.engagement.has(i, m)) S += s.red[m];
    delta_b[i] = 1.0 / (std::max(S, 0.0) + c.eps_delta);
  }
  for (std::size_t m = 0; m < nr; ++m) {
    double S = 0.0;
    for (std::size_t i = 0; i < nb; ++i)
      if (t.engagement.has(i, m)) S += s.blue[i];
    delta_r[m] = 1.0 / (std::max(S, 0.0) + c.eps_delta);
  }
  auto targets_of_red = [&](std::size_t m) {
    double k = 0;
    for (std::size_t i = 0; i < nb; ++i) k += t.engagement.has(i, m);
    return k;
  };
  auto targets_of_blue = [&](std::size_t i) {
    double k = 0;
    for (std::size_t m = 0; m < nr; ++m) k += t.engagement.has(i, m);
    return k;
  };

  for (std::size_t i = 0; i < nb; ++i) {
    double man = 0.0;
    for (std::size_t j = 0; j < nb; ++j)
      if (t.blue_manoeuvre.has(i, j))
        man += (delta_b[i] * s.blue[i] - delta_b[j] * s.blue[j]) * step(s.blue[i] - c.theta_floor, c.eps_theta) *
               step(s.blue[j] - c.theta_floor, c.eps_theta);
    double fire = 0.0;
    for (std::size_t m = 0; m < nr; ++m)
      if (t.engagement.has(i, m))
        fire += s.red[m] / targets_of_red(m) * step(s.blue[i], c.eps_theta) * step(s.red[m], c.eps_theta);
    d.blue[i] = -c.gamma_B * man - c.kappa_R * fire;
  }
  for (std::size_t m = 0; m < nr; ++m) {
    double man = 0.0;
    for (std::size_t l = 0; l < nr; ++l)
      if (t.red_manoeuvre.has(m, l))
        man += (delta_r[m] * s.red[m] - delta_r[l] * s.red[l]) * step(s.red[m] - c.theta_floor, c.eps_theta) *
               step(s.red[l] - c.theta_floor, c.eps_theta);
    double fire = 0.0;
    for (std::size_t i = 0; i < nb; ++i)
      if (t.engagement.has(i, m))
        fire += s.blue[i] / targets_of_blue(i) * step(s.red[m], c.eps_theta) * step(s.blue[i], c.eps_theta);
    d.red[m] = -c.gamma_R * man - c.kappa_B * fire;
  }
  return d;
}

/// Bernoulli random topology; independent of the library's generators.
inline Topology bernoulli_topology(std::size_t nb, std::size_t nr, double p_manoeuvre, double p_engage,
                                   std::uint64_t seed) {
  std::mt19937 rng(static_cast<std::uint32_t>(seed));
  std::bernoulli_distribution man(p_manoeuvre), eng(p_engage);
  Topology t(nb, nr);
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = i + 1; j < nb; ++j)
      if (man(rng)) t.blue_manoeuvre.set(i, j, true);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = i + 1; j < nr; ++j)
      if (man(rng)) t.red_manoeuvre.set(i, j, true);
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t m = 0; m < nr; ++m)
      if (eng(rng)) t.engagement.set(i, m, true);
  return t;
}

inline ForceState random_state(std::size_t nb, std::size_t nr, std::uint64_t seed, double lo = 0.1, double hi = 1.5) {
  std::mt19937 rng(static_cast<std::uint32_t>(seed));
  std::uniform_real_distribution<double> u(lo, hi);
  ForceState s;
  for (std::size_t i = 0; i < nb; ++i) s.blue.push_back(u(rng));
  for (std::size_t m = 0; m < nr; ++m) s.red.push_back(u(rng));
  return s;
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("netlanch_" + tag + "_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  [[nodiscard]] const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace netlanch::oracle
