#include <gtest/gtest.h>

#include "infex/error.hpp"
#include "infex/json_io.hpp"
#include "infex/scenario.hpp"

using namespace infex;

namespace {

constexpr std::size_t U = 2;

ScenarioConfig parse(const char* text) { return ScenarioConfig::from_json(parse_json(text)); }

}  // namespace

TEST(SplitArguments, BracesProtectCommas) {
  EXPECT_EQ(split_arguments("{1},{2}"), (std::vector<std::string>{"{1}", "{2}"}));
  EXPECT_EQ(split_arguments("{0,2,3}"), (std::vector<std::string>{"{0,2,3}"}));
  EXPECT_EQ(split_arguments(" {} , {1,4} "), (std::vector<std::string>{"{}", "{1,4}"}));
  EXPECT_THROW(split_arguments("{1,2"), Error);
  EXPECT_THROW(split_arguments("1},{2"), Error);
}

TEST(ResolveFamily, CPair) {
  const Family f = resolve_family("c-pair({0,2,3})");
  ASSERT_EQ(f.members.size(), 2u);
  EXPECT_EQ(f.members[0].name, "plus");
  EXPECT_EQ(f.members[0].label, "+");
  EXPECT_EQ(f.members[1].label, "-");
  ASSERT_EQ(f.sentences.size(), 2u);
  EXPECT_EQ(f.sentences[0].label(), "+");
  EXPECT_EQ(f.sentences[1].label(), "-");
}

TEST(ResolveFamily, TwPairAndVDemo) {
  const Family t = resolve_family("tw-pair({1},{2})");
  ASSERT_EQ(t.members.size(), 2u);
  EXPECT_EQ(t.members[0].label, "T{1}");
  EXPECT_EQ(t.members[1].label, "T{2}");
  // r, a1, d10, d11, c, b1
  EXPECT_EQ(t.members[0].witness.size(), 6u);
  EXPECT_EQ(t.members[1].witness.size(), 7u);
  const Family v = resolve_family("v-demo");
  ASSERT_EQ(v.members.size(), 1u);
  EXPECT_EQ(v.members[0].label, "V");
}

TEST(ResolveFamily, Errors) {
  EXPECT_THROW(resolve_family("nope"), Error);
  EXPECT_THROW(resolve_family("nope({1})"), Error);
  EXPECT_THROW(resolve_family("c-pair({1},{2})"), Error);
  EXPECT_THROW(resolve_family("tw-pair({1},{1})"), Error);
  EXPECT_THROW(resolve_family("tw-pair({},{1})"), Error);
  EXPECT_THROW(resolve_family("tw-pair({1})"), Error);
}

TEST(GenerateFamily, DepthZeroCPair) {
  const auto out = generate_family(resolve_family("c-pair({0,2,3})"), 0);
  ASSERT_EQ(out.size(), 2u);
  for (const auto& [name, f] : out) {
    EXPECT_EQ(f.size(), 1u) << name;
    EXPECT_TRUE(f.holds(U, {0}));
    EXPECT_EQ(f.constant(0), Element{0});
  }
}

TEST(GenerateFamily, VDemoAndModes) {
  const auto v = generate_family(resolve_family("v-demo"), 12);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].second.size(), 13u);
  EXPECT_EQ(structure_from_json(structure_to_json(v[0].second)), v[0].second);
  const auto c = generate_family(resolve_family("c-pair({1,4})"), 2, "complete");
  ASSERT_EQ(c.size(), 2u);
  EXPECT_GT(c[0].second.size(), 1u);
  EXPECT_THROW(generate_family(resolve_family("v-demo"), 2, "complete"), Error);
  EXPECT_THROW(generate_family(resolve_family("v-demo"), 2, "sideways"), Error);
}

TEST(ScenarioConfig, Defaults) {
  const ScenarioConfig c = parse(R"j({"family": "v-demo"})j");
  EXPECT_EQ(c.learner, "formula");
  EXPECT_EQ(c.horizon, 2000u);
  EXPECT_EQ(c.seeds, (std::vector<std::uint64_t>{0}));
  EXPECT_FALSE(c.stage_bound.has_value());
  EXPECT_NO_THROW(c.validate());
}

TEST(ScenarioConfig, Fields) {
  const ScenarioConfig c = parse(R"j({"scenario": "s", "family": "c-pair({})", "seeds": [3, 1], "horizon": 40,
      "stage_bound": 5, "tail_fraction": 0.5, "outputs": {"csv": "a.csv"},
      "recover": {"bits": "01", "E": "{1}"}})j");
  EXPECT_EQ(c.scenario, "s");
  EXPECT_EQ(c.horizon, 40u);
  EXPECT_EQ(c.stage_bound, std::optional<std::size_t>{5});
  EXPECT_DOUBLE_EQ(c.tail_fraction, 0.5);
  EXPECT_EQ(c.csv_path, "a.csv");
  ASSERT_TRUE(c.recover.has_value());
  EXPECT_EQ(c.recover->bits, "01");
  EXPECT_EQ(c.recover->e.describe(), "{1}");
  EXPECT_FALSE(parse(R"j({"family": "v-demo", "stage_bound": "n"})j").stage_bound.has_value());
}

TEST(ScenarioConfig, Rejects) {
  EXPECT_THROW(parse("[1]"), Error);
  EXPECT_THROW(parse(R"j({"family": "v-demo", "stage_bound": "m"})j"), Error);
  EXPECT_THROW(parse(R"j({"family": "v-demo", "horizon": "x"})j"), Error);
  EXPECT_THROW(parse(R"j({"family": "v-demo", "horizon": 0})j").validate(), Error);
  EXPECT_THROW(parse(R"j({"family": "v-demo", "seeds": []})j").validate(), Error);
  EXPECT_THROW(parse(R"j({"family": "v-demo", "tail_fraction": 2})j").validate(), Error);
  EXPECT_THROW(parse(R"j({"family": "v-demo", "learner": "magic"})j").validate(), Error);
  EXPECT_THROW(parse(R"j({})j").validate(), Error);
  EXPECT_THROW(parse(R"j({"recover": {"bits": "01", "mode": "other"}})j").validate(), Error);
  EXPECT_THROW(parse(R"j({"recover": {"bits": ""}})j").validate(), Error);
}

TEST(MakeLearner, NeedsMatchingFamilyData) {
  ScenarioConfig c;
  c.learner = "oracle-type";
  EXPECT_THROW(make_learner(resolve_family("c-pair({1})"), c), Error);
  c.learner = "formula";
  EXPECT_THROW(make_learner(resolve_family("tw-pair({1},{2})"), c), Error);
}

TEST(RunScenario, RowsAndDeterminism) {
  ScenarioConfig c = parse(R"j({"scenario": "x", "family": "c-pair({0,2,3})", "seeds": [1, 0, 1], "horizon": 200})j");
  const auto rows = run_scenario(c);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].key, "c-pair({0,2,3})/plus");
  EXPECT_EQ(rows[0].seed, 0u);
  EXPECT_EQ(rows[1].seed, 1u);
  EXPECT_EQ(rows[2].key, "c-pair({0,2,3})/minus");
  for (const auto& r : rows) {
    EXPECT_TRUE(r.correct) << r.key << " " << r.seed;
    EXPECT_EQ(r.report.final.to_string(), r.member_label);
  }
  const auto again = run_scenario(c);
  for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(rows[i].report.trajectory, again[i].report.trajectory);
  const std::string csv = csv_report(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), csv_header());
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
  const Json t = trajectories_json(rows);
  ASSERT_EQ(t.size(), 4u);
  EXPECT_EQ(t[0].at("trajectory").size(), 201u);
}

TEST(RunScenario, OracleTypeOnTrees) {
  const ScenarioConfig c = parse(
      R"j({"family": "tw-pair({1},{2})", "learner": "oracle-type", "seeds": [3], "horizon": 150, "size_bound": 2})j");
  for (const auto& r : run_scenario(c)) EXPECT_TRUE(r.correct) << r.key;
}

TEST(RunRecover, SmallStrings) {
  ScenarioConfig c = parse(R"j({"horizon": 300, "recover": {"bits": "0110"}})j");
  const RecoverResult r = run_recover(c);
  EXPECT_EQ(r.expected, "0110");
  EXPECT_EQ(r.recovered, "0110");
  EXPECT_TRUE(r.match);
  EXPECT_EQ(r.reports.size(), 4u);
  c.recover.reset();
  EXPECT_THROW(run_recover(c), Error);
}
