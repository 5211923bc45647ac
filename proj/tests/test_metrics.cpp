#include <gtest/gtest.h>

#include "netlanch/metrics.hpp"
#include "netlanch/model.hpp"
#include "support.hpp"

using namespace netlanch;

TEST(Sacrificial, EmptyTopologyHasNone) {
  EXPECT_EQ(count_sacrificial(Topology(50, 50)), 0u);
}

TEST(Sacrificial, IsolatedHeavyAttacker) {
  Topology t(12, 3);
  for (std::size_t i = 0; i < 12; ++i) t.engagement.set(i, 0, true);
  for (std::size_t i = 0; i < 11; ++i) t.engagement.set(i, 1, true);
  t.red_manoeuvre.set(1, 2, true);
  for (std::size_t i = 0; i < 12; ++i) t.engagement.set(i, 2, true);
  EXPECT_EQ(count_sacrificial(t, 10), 1u);
  EXPECT_EQ(count_sacrificial(t, 11), 1u);
  EXPECT_EQ(count_sacrificial(t, 12), 0u);
  EXPECT_THROW((void)count_sacrificial(t, 0), ConfigError);
}

TEST(Sacrificial, ThresholdIsStrict) {
  Topology t(10, 1);
  for (std::size_t i = 0; i < 10; ++i) t.engagement.set(i, 0, true);
  EXPECT_EQ(count_sacrificial(t, 10), 0u);
  EXPECT_EQ(count_sacrificial(t, 9), 1u);
}

TEST(Metrics, HandComputedConfiguration) {
  Topology t(4, 3);
  t.blue_manoeuvre.set(0, 1, true);
  t.blue_manoeuvre.set(1, 2, true);
  t.red_manoeuvre.set(0, 1, true);
  t.red_manoeuvre.set(0, 2, true);
  t.engagement.set(1, 0, true);
  t.engagement.set(1, 2, true);
  t.engagement.set(3, 2, true);
  ForceState s{{1.0, 0.0, 0.5, 0.5}, {0.3, 0.3, 0.0}, 0.0};
  const auto m = compute_metrics(t, s, {0.25, 1.0});
  EXPECT_DOUBLE_EQ(m.blue_mean, 0.5);
  EXPECT_DOUBLE_EQ(m.red_mean, 0.2);
  EXPECT_DOUBLE_EQ(m.utility, 0.25 * 0.2 + 0.75 * 0.5);
  EXPECT_DOUBLE_EQ(m.n_sacrificial, 0.0);
  EXPECT_DOUBLE_EQ(m.l_rb_per_node, 1.0);
  EXPECT_DOUBLE_EQ(m.frac_attacked_blue, 0.5);
  EXPECT_DOUBLE_EQ(*m.avg_attacks_on_attacked, 1.5);
  EXPECT_DOUBLE_EQ(m.max_red_manoeuvre_degree, 2.0);
  // attacked Blue nodes 1 (degree 2) and 3 (degree 0)
  EXPECT_DOUBLE_EQ(*m.avg_manoeuvre_degree_attacked_blue, 1.0);
  // attacking Red nodes 0 (degree 2) and 2 (degree 1)
  EXPECT_DOUBLE_EQ(*m.avg_manoeuvre_degree_attacking_red, 1.5);
}

TEST(Metrics, EmptyAveragesStayUnset) {
  const auto m = compute_metrics(Topology(3, 3), uniform_state(3, 3, 1.0), {0.5, 1.0});
  EXPECT_FALSE(m.avg_attacks_on_attacked.has_value());
  EXPECT_FALSE(m.avg_manoeuvre_degree_attacked_blue.has_value());
  EXPECT_FALSE(m.avg_manoeuvre_degree_attacking_red.has_value());
  EXPECT_DOUBLE_EQ(m.frac_attacked_blue, 0.0);
  EXPECT_DOUBLE_EQ(m.utility, 0.5);
  const auto values = metric_values(m);
  EXPECT_FALSE(values[6].has_value());
  EXPECT_TRUE(values[0].has_value());
}

TEST(Metrics, AttackCountIdentity) {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const auto t = oracle::bernoulli_topology(15, 15, 0.2, 0.05 + 0.01 * static_cast<double>(seed), seed);
    const auto m = compute_metrics(t, uniform_state(15, 15, 1.0), {0.5, 1.0});
    const double l_rb = static_cast<double>(t.engagement.edge_count());
    if (!m.avg_attacks_on_attacked) {
      EXPECT_EQ(l_rb, 0.0);
      continue;
    }
    EXPECT_NEAR(m.frac_attacked_blue * 15.0 * *m.avg_attacks_on_attacked, l_rb, 1e-9);
    EXPECT_NEAR(m.l_rb_per_node * 15.0, l_rb, 1e-12);
  }
}

TEST(Metrics, MismatchedStateRejected) {
  EXPECT_THROW((void)compute_metrics(Topology(3, 2), uniform_state(3, 3, 1.0), {0.5, 1.0}), ConfigError);
}

TEST(AverageMetrics, OptionalFieldsAverageOverSetEntries) {
  StructuralMetrics a, b, c;
  a.utility = 1.0;
  b.utility = 2.0;
  c.utility = 6.0;
  a.avg_attacks_on_attacked = 2.0;
  c.avg_attacks_on_attacked = 4.0;
  const auto m = average_metrics({a, b, c});
  EXPECT_DOUBLE_EQ(m.utility, 3.0);
  EXPECT_DOUBLE_EQ(*m.avg_attacks_on_attacked, 3.0);
  EXPECT_FALSE(m.avg_manoeuvre_degree_attacking_red.has_value());
  EXPECT_DOUBLE_EQ(average_metrics({}).utility, 0.0);
}
