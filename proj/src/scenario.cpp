#include "infex/scenario.hpp"

#include <algorithm>
#include <sstream>

#include "infex/error.hpp"

namespace infex {

namespace {

constexpr std::size_t kRelU = 2;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<Element> tw_witness(const CeSetApprox& w) {
  const auto& lim = w.limit();
  if (!lim || lim->empty()) throw Error("tw-pair members need a nonempty set with a known limit");
  const std::size_t i = lim->front();
  TreeNumbering num(w);
  const std::size_t horizon = std::max<std::size_t>(i, w.first_stage(i, 4096).value_or(i)) + 1;
  std::vector<VNode> nodes{VNode::root(), VNode::a(i)};
  for (std::size_t j = 0; j <= i; ++j) nodes.push_back(VNode::d(i, j));
  nodes.push_back(VNode::sink());
  nodes.push_back(VNode::b(i));
  std::vector<Element> out;
  for (const auto& n : nodes) {
    auto code = num.code_of(n, horizon);
    if (!code) throw Error("witness node " + to_string(n) + " is not emitted");
    out.push_back(*code);
  }
  return out;
}

Sigma2Sentence exists_u_sentence(const Signature& sig, const std::string& label) {
  Disjunct d;
  d.exists = {"x"};
  d.guard = QFFormula(sig, {"x"}, qf::atom(kRelU, {Term::var(0)}));
  return Sigma2Sentence(sig, label, {std::move(d)});
}

}  // namespace

std::vector<std::string> split_arguments(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : text) {
    if (ch == '{' || ch == '(' || ch == '[') ++depth;
    if (ch == '}' || ch == ')' || ch == ']') --depth;
    if (depth < 0) throw Error("unbalanced brackets in '" + text + "'");
    if (ch == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (depth != 0) throw Error("unbalanced brackets in '" + text + "'");
  out.push_back(trim(cur));
  return out;
}

Family resolve_family(const std::string& id) {
  Family fam;
  fam.id = id;
  if (id == "v-demo") {
    fam.members.push_back({"V", "V", build_V(), {0}});
    fam.sentences.push_back(exists_u_sentence(Signature::tree_signature(), "V"));
    return fam;
  }
  const auto open = id.find('(');
  if (open == std::string::npos || id.back() != ')') throw Error("unknown family id '" + id + "'");
  const std::string name = id.substr(0, open);
  const auto args = split_arguments(id.substr(open + 1, id.size() - open - 2));
  if (name == "c-pair") {
    if (args.size() != 1) throw Error("c-pair takes one set argument");
    const CeSetApprox e = CeSetApprox::parse_literal(args[0]);
    fam.members.push_back({"plus", "+", CStructure::plus(e).structure(), {}});
    fam.members.push_back({"minus", "-", CStructure::minus(e).structure(), {}});
    fam.sentences = {xi('+', e), xi('-', e)};
    return fam;
  }
  if (name == "tw-pair") {
    if (args.size() != 2) throw Error("tw-pair takes two set arguments");
    const CeSetApprox w0 = CeSetApprox::parse_literal(args[0]);
    const CeSetApprox w1 = CeSetApprox::parse_literal(args[1]);
    if (w0.describe() == w1.describe()) throw Error("tw-pair members must differ");
    fam.members.push_back({"w0", "T" + w0.describe(), build_TW(w0), tw_witness(w0)});
    fam.members.push_back({"w1", "T" + w1.describe(), build_TW(w1), tw_witness(w1)});
    return fam;
  }
  throw Error("unknown family id '" + id + "'");
}

std::vector<std::pair<std::string, FiniteStructure>> generate_family(const Family& family, std::size_t depth,
                                                                     const std::string& mode) {
  if (mode != "restrict" && mode != "complete") throw Error("unknown gen mode '" + mode + "'");
  std::vector<std::pair<std::string, FiniteStructure>> out;
  if (mode == "complete") {
    if (family.id.rfind("c-pair(", 0) != 0) throw Error("complete mode needs a c-pair family");
    const CeSetApprox e = CeSetApprox::parse_literal(split_arguments(family.id.substr(7, family.id.size() - 8))[0]);
    out.emplace_back("plus", tree_complete_truncation(CStructure::plus(e), depth));
    out.emplace_back("minus", tree_complete_truncation(CStructure::minus(e), depth));
    return out;
  }
  for (const auto& m : family.members) out.emplace_back(m.name, restrict(m.structure, depth));
  return out;
}

ScenarioConfig ScenarioConfig::from_json(const Json& j) {
  if (!j.is_object()) throw Error("scenario config must be a JSON object");
  ScenarioConfig c;
  try {
    if (j.contains("scenario")) c.scenario = j.at("scenario").get<std::string>();
    if (j.contains("family")) c.family = j.at("family").get<std::string>();
    if (j.contains("learner")) c.learner = j.at("learner").get<std::string>();
    if (j.contains("seeds")) c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    if (j.contains("horizon")) c.horizon = j.at("horizon").get<std::size_t>();
    if (j.contains("stage_bound")) {
      const Json& sb = j.at("stage_bound");
      if (sb.is_number_unsigned()) {
        c.stage_bound = sb.get<std::size_t>();
      } else if (!sb.is_null() && !(sb.is_string() && sb.get<std::string>() == "n")) {
        throw Error("stage_bound must be a natural, \"n\" or null");
      }
    }
    if (j.contains("tail_fraction")) c.tail_fraction = j.at("tail_fraction").get<double>();
    if (j.contains("size_bound")) c.size_bound = j.at("size_bound").get<std::size_t>();
    if (j.contains("outputs")) {
      const Json& o = j.at("outputs");
      if (o.contains("csv")) c.csv_path = o.at("csv").get<std::string>();
      if (o.contains("trajectories")) c.trajectories_path = o.at("trajectories").get<std::string>();
    }
    if (j.contains("recover")) {
      const Json& r = j.at("recover");
      RecoverConfig rc;
      rc.bits = r.at("bits").get<std::string>();
      if (r.contains("mode")) rc.mode = r.at("mode").get<std::string>();
      if (r.contains("E")) {
        const Json& e = r.at("E");
        rc.e = e.is_string() ? CeSetApprox::parse_literal(e.get<std::string>()) : CeSetApprox::from_json(e);
      }
      c.recover = std::move(rc);
    }
  } catch (const nlohmann::json::exception& ex) {
    throw Error(std::string("bad scenario config: ") + ex.what());
  }
  return c;
}

void ScenarioConfig::validate() const {
  if (horizon < 1) throw Error("horizon must be at least 1");
  if (seeds.empty()) throw Error("seeds must be nonempty");
  if (tail_fraction < 0 || tail_fraction > 1) throw Error("tail_fraction must lie in [0, 1]");
  if (learner != "formula" && learner != "oracle-type") throw Error("unknown learner '" + learner + "'");
  if (recover) {
    if (recover->mode != "default-schedules") throw Error("unknown recover mode '" + recover->mode + "'");
    if (recover->bits.empty()) throw Error("recover bits must be nonempty");
  }
  if (!family.empty()) resolve_family(family);
  if (family.empty() && !recover) throw Error("config needs a family or a recover block");
}

Learner make_learner(const Family& family, const ScenarioConfig& config) {
  const StagePolicy policy{config.stage_bound};
  if (config.learner == "formula") {
    if (family.sentences.empty()) throw Error("family '" + family.id + "' has no sentences for the formula learner");
    return FormulaLearner(family.sentences, policy).learner();
  }
  std::vector<LazyStructure> structures;
  std::vector<std::vector<Element>> witnesses;
  std::vector<std::string> labels;
  for (const auto& m : family.members) {
    if (m.witness.empty()) throw Error("family '" + family.id + "' has no witnesses for the oracle-type learner");
    structures.push_back(m.structure);
    witnesses.push_back(m.witness);
    labels.push_back(m.label);
  }
  return OracleTypeLearner(structures, witnesses, config.size_bound, labels, policy).learner();
}

std::vector<RunRow> run_scenario(const ScenarioConfig& config) {
  config.validate();
  if (config.family.empty()) throw Error("run needs a family");
  const Family family = resolve_family(config.family);
  const Learner m = make_learner(family, config);
  std::vector<std::uint64_t> seeds = config.seeds;
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  std::vector<RunRow> rows;
  for (const auto& member : family.members) {
    for (std::uint64_t seed : seeds) {
      RunRow row;
      row.key = family.id + "/" + member.name;
      row.member_label = member.label;
      row.seed = seed;
      row.report = run_learner(m, permuted_copy(member.structure, seed), config.horizon, config.tail_fraction);
      row.correct = row.report.converged && row.report.final.label == member.label;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string csv_report(const std::vector<RunRow>& rows) {
  std::ostringstream out;
  out << csv_header() << "\n";
  for (const auto& r : rows) out << csv_row(r.key, r.seed, r.report) << "\n";
  return out.str();
}

Json trajectories_json(const std::vector<RunRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    Json t = Json::array();
    for (const auto& h : r.report.trajectory) t.push_back(h.to_string());
    out.push_back({{"scenario", r.key}, {"seed", r.seed}, {"trajectory", std::move(t)}});
  }
  return out;
}

RecoverResult run_recover(const ScenarioConfig& config) {
  config.validate();
  if (!config.recover) throw Error("config has no recover block");
  const RecoverConfig& rc = *config.recover;
  const XConfig x = XConfig::with_default_schedules(rc.bits, rc.e);
  const std::uint64_t seed = *std::min_element(config.seeds.begin(), config.seeds.end());
  const Learner m = FormulaLearner({xi('+', rc.e), xi('-', rc.e)}, StagePolicy{config.stage_bound}).learner();
  RecoverResult res;
  res.expected = rc.bits;
  for (std::size_t k = 0; k < rc.bits.size(); ++k) {
    const Presentation p = permuted_copy(CStructure::with_config(x, rc.e, k).structure(), seed);
    RunReport r = run_learner(m, p, config.horizon, config.tail_fraction);
    char bit = '?';
    if (r.converged && r.final.label == "+") bit = '1';
    if (r.converged && r.final.label == "-") bit = '0';
    res.recovered += bit;
    res.reports.push_back(std::move(r));
  }
  res.match = res.recovered == res.expected;
  return res;
}

}  // namespace infex
