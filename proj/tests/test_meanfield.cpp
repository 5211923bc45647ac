#include <gtest/gtest.h>

#include <cmath>

#include "netlanch/integrator.hpp"
#include "netlanch/meanfield.hpp"

using namespace netlanch;
using namespace netlanch::meanfield;

TEST(MeanField, RhsAtTheOptimalSplit) {
  const MeanFieldSpec spec{50, 25, 25, 1, 50, 0.5, 1.0, 1.0, 1.0};
  EXPECT_DOUBLE_EQ(spec.links(), 1275.0);
  const auto d = meanfield_rhs({1.0, 1.0, 1.0}, spec);
  EXPECT_NEAR(d.R1, -50.0 / 1275.0, 1e-15);
  EXPECT_NEAR(d.R2, -2500.0 / 1275.0, 1e-15);
  EXPECT_NEAR(d.B, -0.5, 1e-15);
  EXPECT_NEAR(d.R1, -0.0392157, 1e-7);
  EXPECT_NEAR(d.R2, -1.960784, 1e-6);
}

TEST(MeanField, SimpleCases) {
  const MeanFieldSpec same{10, 4, 6, 3, 3, 0.7, 1.2, 1.0, 1.0};
  const auto d = meanfield_rhs({0.8, 0.8, 0.6}, same);
  EXPECT_DOUBLE_EQ(d.R1, d.R2);
  EXPECT_NEAR(d.B, -0.7 * 0.8, 1e-15);
  EXPECT_NEAR(d.R1, -1.2 * 0.6, 1e-15);
  const auto z = meanfield_rhs({0.8, 0.3, 0.0}, same);
  EXPECT_EQ(z.R1, 0.0);
  EXPECT_EQ(z.R2, 0.0);
  EXPECT_EQ(meanfield_invariant({0.0, 0.0, 0.0}, same), 0.0);
  const auto s2 = optimal_split(2);
  EXPECT_EQ(s2.n1, 1u);
  EXPECT_EQ(s2.k1, 1u);
  EXPECT_EQ(s2.k2, 2u);
  EXPECT_EQ(optimal_split(50).n1, 25u);
  EXPECT_EQ(optimal_split(50).k2, 50u);
}

TEST(MeanField, InitialInvariantAtTheOptimalSplit) {
  const MeanFieldSpec spec{50, 25, 25, 1, 50, 0.5, 1.0, 1.0, 1.0};
  // -0.5 (L/n^2)(n1/k1 + n2/k2) + 1 with L = 1275
  EXPECT_NEAR(meanfield_invariant({1.0, 1.0, 1.0}, spec), -0.5 * 0.51 * 25.5 + 1.0, 1e-12);
}

TEST(MeanField, InvariantIsConserved) {
  for (const MeanFieldSpec& spec : {MeanFieldSpec{10, 5, 5, 1, 10, 1.0, 1.0, 1.0, 1.0},
                                    MeanFieldSpec{20, 7, 13, 3, 5, 0.4, 1.3, 1.2, 0.9}}) {
    const auto samples = integrate(spec, 0.01, 20.0);
    const double h0 = meanfield_invariant(samples.front().state, spec);
    for (const auto& s : samples) EXPECT_NEAR(meanfield_invariant(s.state, spec), h0, 1e-8);
  }
}

TEST(MeanField, InvariantHasZeroDerivative) {
  const MeanFieldSpec spec{12, 4, 8, 2, 7, 0.8, 1.1, 1.0, 1.0};
  const MeanFieldState s{0.7, 0.3, 0.9};
  const auto d = meanfield_rhs(s, spec);
  const double L = spec.links();
  const double dH = -0.8 * (L / 144.0) * 2.0 * ((4.0 / 2.0) * s.R1 * d.R1 + (8.0 / 7.0) * s.R2 * d.R2) +
                    1.1 * 2.0 * s.B * d.B;
  EXPECT_NEAR(dH, 0.0, 1e-14);
}

TEST(MeanField, OptimalSplitMatchesBruteForce) {
  for (std::size_t n = 2; n <= 12; n += 2) {
    double best = -1.0;
    for (std::size_t n1 = 1; n1 < n; ++n1)
      for (std::size_t k1 = 1; k1 <= n; ++k1)
        for (std::size_t k2 = 1; k2 <= n; ++k2)
          best = std::max(best, split_objective(static_cast<double>(k1), static_cast<double>(k2),
                                                static_cast<double>(n1), static_cast<double>(n)));
    const auto s = optimal_split(n);
    EXPECT_EQ(s.n1, n / 2);
    EXPECT_EQ(s.k1, 1u);
    EXPECT_EQ(s.k2, n);
    EXPECT_TRUE(s.exact);
    const double at = split_objective(1.0, static_cast<double>(n), static_cast<double>(n / 2), static_cast<double>(n));
    EXPECT_NEAR(at, best, 1e-12) << "n = " << n;
    EXPECT_NEAR(at, victory_factor(static_cast<double>(n)), 1e-12);
  }
  EXPECT_FALSE(optimal_split(7).exact);
  EXPECT_THROW((void)optimal_split(1), ConfigError);
}

TEST(MeanField, UniformSplitIsPlainSquareLaw) {
  for (double n : {4.0, 10.0, 50.0}) EXPECT_NEAR(split_objective(3, 3, n / 2, n), 1.0, 1e-14);
}

TEST(MeanField, VictoryConditionAtFifty) {
  EXPECT_NEAR(victory_factor(50), 13.005, 1e-12);
  EXPECT_NEAR(victory_margin(50, 1.0, 1.0, 1.0, 1.0, true), 12.005, 1e-12);
  EXPECT_NEAR(victory_margin(50, 1.0, 1.0, 1.0, 1.0, false), 0.0, 1e-15);
  EXPECT_GT(victory_margin(50, 0.1, 1.0, 1.0, 1.0, true), 0.0);
  EXPECT_LT(victory_margin(50, 0.05, 1.0, 1.0, 1.0, true), 0.0);
}

TEST(MeanField, SplitMarginGeneralisesBothForms) {
  EXPECT_NEAR(victory_margin(MeanFieldSpec{50, 25, 25, 1, 50, 0.3, 1.1, 1.2, 0.9}),
              victory_margin(50, 0.3, 1.1, 1.2, 0.9, true), 1e-12);
  EXPECT_NEAR(victory_margin(MeanFieldSpec{10, 4, 6, 3, 3, 0.3, 1.1, 1.2, 0.9}),
              victory_margin(10, 0.3, 1.1, 1.2, 0.9, false), 1e-12);
  EXPECT_NEAR(victory_margin(MeanFieldSpec{10, 5, 5, 2, 10, 1.0, 1.0, 1.0, 1.0}), 0.8, 1e-12);
}

TEST(MeanField, RequiredForceFallsLikeTwoOverRootN) {
  for (double n : {100.0, 1e4, 1e6}) EXPECT_NEAR(required_force_fraction(n) * std::sqrt(n) / 2.0, 1.0, 1.5 / n + 2.0 / n);
  EXPECT_NEAR(required_force_fraction(50), 1.0 / std::sqrt(13.005), 1e-15);
}

TEST(MeanField, SplitTopologyDealsTargetsEvenly) {
  const auto t = split_topology(10, 5, 2, 4);
  EXPECT_EQ(t.engagement.edge_count(), 30u);
  for (auto d : t.engagement.row_degrees()) EXPECT_EQ(d, 3u);
  const auto cols = t.engagement.col_degrees();
  for (std::size_t r = 0; r < 10; ++r) EXPECT_EQ(cols[r], r < 5 ? 2u : 4u);
  EXPECT_EQ(t.red_manoeuvre.edge_count(), 0u);
  EXPECT_THROW((void)split_topology(4, 2, 5, 1), ConfigError);
}

TEST(MeanField, AgreesWithTheNetworkEngine) {
  const MeanFieldSpec spec{10, 5, 5, 2, 4, 0.6, 0.5, 1.0, 1.0};
  BattleConfig c;
  c.kappa_R = spec.kappa_R;
  c.kappa_B = spec.kappa_B;
  c.eps_theta = 1e-6;
  ScenarioSpec net{split_topology(10, 5, 2, 4), c, uniform_state(10, 10, 1.0)};
  const auto mf = integrate(spec, c.dt, 10.0);
  ForceState s = net.initial;
  std::size_t compared = 0;
  for (std::size_t k = 1; k < mf.size(); ++k) {
    s = rk4_step(s, net, c.dt);
    const auto& m = mf[k].state;
    if (m.B < 0.05 || m.R1 < 0.05 || m.R2 < 0.05) break;
    double r1 = 0.0, r2 = 0.0, b = 0.0;
    for (std::size_t i = 0; i < 10; ++i) {
      b += s.blue[i] / 10.0;
      (i < 5 ? r1 : r2) += s.red[i] / 5.0;
    }
    EXPECT_NEAR(b, m.B, 0.01 * m.B);
    EXPECT_NEAR(r1, m.R1, 0.01 * m.R1);
    EXPECT_NEAR(r2, m.R2, 0.01 * m.R2);
    ++compared;
  }
  EXPECT_GT(compared, 50u);
}

TEST(MeanField, SpecValidation) {
  EXPECT_THROW((MeanFieldSpec{10, 4, 5, 1, 1, 1, 1, 1, 1}.validate()), ConfigError);
  EXPECT_THROW((MeanFieldSpec{10, 5, 5, 0, 1, 1, 1, 1, 1}.validate()), ConfigError);
  EXPECT_NO_THROW((MeanFieldSpec{10, 5, 5, 1, 10, 1, 1, 1, 1}.validate()));
}
