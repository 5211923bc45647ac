#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "netlanch/config.hpp"

using namespace netlanch;

namespace {

bool mentions(const std::vector<std::string>& errors, const std::string& needle) {
  return std::any_of(errors.begin(), errors.end(),
                     [&](const std::string& e) { return e.find(needle) != std::string::npos; });
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Config, DefaultsValidateAndRoundTrip) {
  const Json d = default_manifest();
  EXPECT_TRUE(validate_config(d).empty());
  EXPECT_EQ(manifest_to_json(parse_manifest(d)), d);
  EXPECT_TRUE(validate_config(Json::object()).empty());
}

TEST(Config, RoundTripPreservesEdits) {
  RunManifest m;
  m.battle.kappa_R = 0.37;
  m.optimizer.lambdas = {0.2, 0.4};
  m.heatmap.spec.overrides[Param::gamma_R] = 0.5;
  m.case_study.spec.case_id = CaseId::equal_total;
  m.output.format = "json";
  const Json j = manifest_to_json(m);
  EXPECT_EQ(manifest_to_json(parse_manifest(j)), j);
  const auto back = parse_manifest(j);
  EXPECT_DOUBLE_EQ(back.battle.kappa_R, 0.37);
  EXPECT_DOUBLE_EQ(back.case_study.spec.config.kappa_R, 0.37);
  EXPECT_EQ(back.case_study.spec.case_id, CaseId::equal_total);
}

TEST(Config, LambdaOutOfRangeIsNamed) {
  const auto errors = validate_config(Json::parse(R"({"optimizer": {"lambda": 1.5}})"));
  ASSERT_EQ(errors.size(), 1u);
  EXPECT_TRUE(mentions(errors, "/optimizer/lambda"));
  EXPECT_THROW((void)parse_manifest(Json::parse(R"({"optimizer": {"lambda": 1.5}})")), ConfigError);
}

TEST(Config, EveryProblemIsReported) {
  const auto errors = validate_config(Json::parse(R"({
    "battle": {"dt": -1, "kappa_R": "fast"},
    "optimizer": {"replicas": 2, "best_k": 5},
    "heatmap": {"x": {"param": "speed"}},
    "colour": "blue"
  })"));
  EXPECT_GE(errors.size(), 5u);
  EXPECT_TRUE(mentions(errors, "/battle/dt"));
  EXPECT_TRUE(mentions(errors, "/battle/kappa_R"));
  EXPECT_TRUE(mentions(errors, "best_k"));
  EXPECT_TRUE(mentions(errors, "/heatmap/x/param"));
  EXPECT_TRUE(mentions(errors, "/colour"));
}

TEST(Config, SyntaxErrorsCarryLineNumbers) {
  try {
    (void)parse_manifest_text("{\n  \"battle\": {\n    \"dt\": 0.01,\n  }\n}\n", "bad.json");
    FAIL() << "expected a ConfigError";
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("bad.json:4:"), std::string::npos) << what;
  }
}

TEST(Config, ReferenceManifest) {
  const auto m = parse_manifest_text(read_file(NETLANCH_CONFIG_DIR "/reference.json"), "reference.json");
  EXPECT_EQ(m.random.n, 50u);
  EXPECT_EQ(m.random.l_manoeuvre, 100u);
  EXPECT_EQ(m.random.l_engage, 10u);
  EXPECT_DOUBLE_EQ(m.battle.kappa_R, 0.5);
  EXPECT_DOUBLE_EQ(m.battle.kappa_B, 1.0);
  const auto s = scenario_from_manifest(m);
  EXPECT_EQ(s.topology.blue_manoeuvre.edge_count(), 100u);
  EXPECT_EQ(s.topology.engagement.edge_count(), 10u);
  const auto setup = optimization_setup(m);
  EXPECT_EQ(setup.replicas, 20u);
  EXPECT_EQ(setup.best_k, 5u);
  EXPECT_EQ(setup.iterations, 100000u);
}

TEST(Config, ShippedManifestsValidate) {
  for (const char* name : {"reference.json", "quick.json", "casestudy.json", "heatmap.json", "meanfield.json"}) {
    const auto text = read_file(std::string(NETLANCH_CONFIG_DIR "/") + name);
    ASSERT_FALSE(text.empty()) << name;
    EXPECT_TRUE(validate_config(Json::parse(text)).empty()) << name;
  }
}

TEST(Config, ExplicitTopologyAndState) {
  const auto m = parse_manifest(Json::parse(R"({
    "topology": {"n_blue": 2, "n_red": 1, "blue_edges": [[0, 1]], "engagement_edges": [[0, 0]]},
    "initial": {"blue": [1.0, 0.5], "red": [2.0]}
  })"));
  const auto s = scenario_from_manifest(m);
  EXPECT_EQ(s.topology.n_blue(), 2u);
  EXPECT_EQ(s.initial.red, std::vector<double>{2.0});
}

TEST(Config, StateMustMatchTopology) {
  const auto errors = validate_config(Json::parse(R"({
    "topology": {"n_blue": 2, "n_red": 1, "engagement_edges": []},
    "initial": {"blue": [1.0], "red": [2.0]}
  })"));
  EXPECT_FALSE(errors.empty());
}
