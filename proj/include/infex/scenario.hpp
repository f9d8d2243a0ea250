#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "infex/encodings.hpp"
#include "infex/learning.hpp"

namespace infex {

struct FamilyMember {
  std::string name;   // used in report keys, e.g. "plus"
  std::string label;  // the correct conjecture
  LazyStructure structure;
  // Witness tuple for the oracle-type learner.
  std::vector<Element> witness;
};

// A named finite family: "c-pair(E)", "tw-pair(W1,W2)" or "v-demo".
struct Family {
  std::string id;
  std::vector<FamilyMember> members;
  // Sentences for the formula learner, one per member.
  std::vector<Sigma2Sentence> sentences;
};

Family resolve_family(const std::string& id);

// Top-level arguments of "name(a,b)", split at commas outside braces.
std::vector<std::string> split_arguments(const std::string& text);

// Members of a family truncated for output: restrict(member, depth), or the
// tree-complete truncation at that depth for c-pair in "complete" mode.
std::vector<std::pair<std::string, FiniteStructure>> generate_family(const Family& family, std::size_t depth,
                                                                     const std::string& mode = "restrict");

struct RecoverConfig {
  std::string bits;
  std::string mode = "default-schedules";
  CeSetApprox e = CeSetApprox::frozen({0, 2, 3});
};

struct ScenarioConfig {
  std::string scenario = "scenario";
  std::string family;
  std::string learner = "formula";  // or "oracle-type"
  std::vector<std::uint64_t> seeds{0};
  std::size_t horizon = 2000;
  std::optional<std::size_t> stage_bound;  // nullopt: n at stage n
  double tail_fraction = 0.25;
  std::size_t size_bound = 2;
  std::string csv_path;
  std::string trajectories_path;
  std::optional<RecoverConfig> recover;

  static ScenarioConfig from_json(const Json& j);
  void validate() const;
};

Learner make_learner(const Family& family, const ScenarioConfig& config);

struct RunRow {
  std::string key;  // "<family>/<member>"
  std::string member_label;
  std::uint64_t seed = 0;
  RunReport report;
  bool correct = false;
};

// One row per (member, seed), ordered by member then seed.
std::vector<RunRow> run_scenario(const ScenarioConfig& config);

std::string csv_report(const std::vector<RunRow>& rows);
Json trajectories_json(const std::vector<RunRow>& rows);

struct RecoverResult {
  std::string expected;
  std::string recovered;
  bool match = false;
  std::vector<RunReport> reports;
};

// recover_set over C_k, k < bits.size(), presented with the first seed.
RecoverResult run_recover(const ScenarioConfig& config);

}  // namespace infex
