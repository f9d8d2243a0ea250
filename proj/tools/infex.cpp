#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "infex/error.hpp"
#include "infex/json_io.hpp"
#include "infex/scenario.hpp"

using namespace infex;

namespace {

struct Overrides {
  std::optional<std::size_t> horizon;
  std::string seeds;
  std::optional<std::size_t> stage_bound;
  std::string out;
  bool verbose = false;
};

// "0,3,5" or "0-19" (inclusive), or a mix.
std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto dash = part.find('-');
    try {
      if (dash == std::string::npos) {
        out.push_back(std::stoull(part));
      } else {
        const auto lo = std::stoull(part.substr(0, dash)), hi = std::stoull(part.substr(dash + 1));
        if (hi < lo) throw Error("empty seed range '" + part + "'");
        for (auto s = lo; s <= hi; ++s) out.push_back(s);
      }
    } catch (const std::logic_error&) {
      throw Error("bad seed list '" + text + "'");
    }
  }
  if (out.empty()) throw Error("empty seed list");
  return out;
}

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--horizon", o.horizon, "Last stage fed to the learner");
  cmd->add_option("--seeds", o.seeds, "Seed list, e.g. 0-19 or 0,4,7");
  cmd->add_option("--stage-bound", o.stage_bound, "Fixed stage bound (default: n at stage n)");
  cmd->add_option("--out", o.out, "Report path (default: stdout)");
  cmd->add_flag("--verbose", o.verbose, "Per-run diagnostics and trajectory dumps");
}

ScenarioConfig load_config(const std::string& path, const Overrides& o) {
  ScenarioConfig c = ScenarioConfig::from_json(read_json_file(path));
  if (o.horizon) c.horizon = *o.horizon;
  if (!o.seeds.empty()) c.seeds = parse_seeds(o.seeds);
  if (o.stage_bound) c.stage_bound = *o.stage_bound;
  if (!o.out.empty()) c.csv_path = o.out;
  c.validate();
  return c;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

// One key per line, one atom per line.
std::string structure_text(const FiniteStructure& f) {
  const Json j = structure_to_json(f);
  std::string out = "{\n";
  bool first = true;
  for (const auto& [key, value] : j.items()) {
    out += first ? "" : ",\n";
    first = false;
    out += "  " + Json(key).dump() + ": ";
    if (key == "atoms" && !value.empty()) {
      out += "[\n";
      for (std::size_t i = 0; i < value.size(); ++i) out += "    " + value[i].dump() + (i + 1 < value.size() ? ",\n" : "\n");
      out += "  ]";
    } else {
      out += value.dump();
    }
  }
  return out + "\n}\n";
}

std::string tuple_text(const std::vector<Element>& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + ")";
}

int cmd_gen(const std::string& family_id, std::size_t depth, const std::string& mode, const std::string& out) {
  const Family fam = resolve_family(family_id);
  const auto members = generate_family(fam, depth, mode);
  if (out.empty()) {
    Json j;
    j["family"] = family_id;
    j["depth"] = depth;
    for (const auto& [name, f] : members) j["members"][name] = structure_to_json(f);
    std::cout << j.dump(1) << "\n";
    return 0;
  }
  if (members.size() == 1) {
    write_text_file(out, structure_text(members[0].second));
    std::cout << out << "\n";
    return 0;
  }
  const std::filesystem::path base(out);
  for (const auto& [name, f] : members) {
    auto p = base.parent_path() / (base.stem().string() + "." + name + base.extension().string());
    write_text_file(p, structure_text(f));
    std::cout << p.string() << "\n";
  }
  return 0;
}

int cmd_eval(const std::string& structure_path, const std::string& sentence_ref, const Overrides& o) {
  const FiniteStructure f = structure_from_json(read_json_file(structure_path));
  Sigma2Sentence sentence = std::filesystem::exists(sentence_ref)
                                ? sentence_from_json(f.signature(), read_json_file(sentence_ref), resolve_generator)
                                : sentence_by_name(sentence_ref);
  if (!(sentence.signature() == f.signature())) throw Error("sentence and structure signatures differ");
  const std::size_t stage = o.stage_bound ? *o.stage_bound : (f.size() == 0 ? 0 : f.size() - 1);
  std::ostringstream out;
  if (auto w = find_witness(f, sentence, stage)) {
    out << "true witness=" << tuple_text(w->tuple) << " disjunct=" << w->disjunct << "\n";
  } else {
    out << "false\n";
    const auto scan = witness_scan(f, sentence, stage);
    if (scan.empty()) out << "no witness\n";
    const std::size_t shown = o.verbose ? scan.size() : std::min<std::size_t>(scan.size(), 20);
    for (std::size_t i = 0; i < shown; ++i) {
      const auto& s = scan[i];
      out << "  disjunct=" << s.disjunct << " tuple=" << tuple_text(s.tuple);
      if (s.pending) {
        out << " pending";
      } else if (s.evidence) {
        if (s.evidence->clause_index) {
          out << " clause=" << *s.evidence->clause_index << " instance=" << tuple_text(s.evidence->instantiation);
        } else {
          out << " guard=false";
        }
      }
      out << "\n";
    }
    if (shown < scan.size()) out << "  ... " << scan.size() - shown << " more (use --verbose)\n";
  }
  emit(o.out, out.str());
  return 0;
}

int cmd_learn(const std::string& config_path, const Overrides& o) {
  const ScenarioConfig c = load_config(config_path, o);
  const auto rows = run_scenario(c);
  emit(c.csv_path, csv_report(rows));
  bool ok = true;
  for (const auto& r : rows) {
    if (!r.correct) {
      ok = false;
      std::cerr << "run " << r.key << " seed " << r.seed << " failed: expected " << r.member_label << ", final "
                << r.report.final.to_string() << (r.report.converged ? "" : " (no constant tail)") << "\n";
    } else if (o.verbose) {
      std::cerr << "run " << r.key << " seed " << r.seed << " ok at stage " << *r.report.convergence_stage << "\n";
    }
  }
  if (o.verbose || !c.trajectories_path.empty()) {
    const std::string text = trajectories_json(rows).dump() + "\n";
    if (!c.trajectories_path.empty()) {
      write_text_file(c.trajectories_path, text);
    } else {
      std::cerr << text;
    }
  }
  return ok ? 0 : 1;
}

int cmd_recover(const std::string& config_path, const Overrides& o) {
  const ScenarioConfig c = load_config(config_path, o);
  const RecoverResult r = run_recover(c);
  if (!c.csv_path.empty()) {
    std::ostringstream csv;
    csv << csv_header() << "\n";
    for (std::size_t k = 0; k < r.reports.size(); ++k) {
      csv << csv_row("recover/k" + std::to_string(k), c.seeds.front(), r.reports[k]) << "\n";
    }
    write_text_file(c.csv_path, csv.str());
  }
  if (o.verbose) {
    for (std::size_t k = 0; k < r.reports.size(); ++k) {
      const auto& rep = r.reports[k];
      std::cerr << "k=" << k << " final=" << rep.final.to_string() << " converged=" << rep.converged
                << " stage=" << *rep.convergence_stage << " mind_changes=" << rep.mind_changes << "\n";
    }
  }
  std::cout << "recovered=" << r.recovered << " match=" << (r.match ? "true" : "false") << "\n";
  return r.match ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Limit learning of finite families of countable structures"};
  app.require_subcommand(1);

  Overrides o;
  std::string family, mode = "restrict", structure_path, sentence_ref, config_path;
  std::size_t depth = 12;

  auto* gen = app.add_subcommand("gen", "Write truncations of every family member as JSON");
  gen->add_option("family", family, "Family id: c-pair(E), tw-pair(W1,W2) or v-demo")->required();
  gen->add_option("--depth", depth, "Truncation depth");
  gen->add_option("--mode", mode, "restrict (domain 0..depth) or complete (c-pair only)")
      ->check(CLI::IsMember({"restrict", "complete"}));
  gen->add_option("--out", o.out, "Output path; one file per member");
  gen->add_flag("--verbose", o.verbose);

  auto* eval = app.add_subcommand("eval", "Evaluate a sentence on a finite structure");
  eval->add_option("structure", structure_path, "Structure JSON file")->required();
  eval->add_option("sentence", sentence_ref, "Generator id such as xi-plus({0,2,3}) or a sentence JSON file")
      ->required();
  eval->add_option("--stage-bound", o.stage_bound, "Clause stage bound (default: size - 1)");
  eval->add_option("--out", o.out, "Output path (default: stdout)");
  eval->add_flag("--verbose", o.verbose, "List every refuted witness");

  auto* learn = app.add_subcommand("learn", "Run a learner over seeded presentations of a family");
  learn->add_option("config", config_path, "Scenario config JSON")->required();
  add_common(learn, o);

  auto* recover = app.add_subcommand("recover", "Recover the configured bit string from learner limits");
  recover->add_option("config", config_path, "Scenario config JSON with a recover block")->required();
  add_common(recover, o);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*gen) return cmd_gen(family, depth, mode, o.out);
    if (*eval) return cmd_eval(structure_path, sentence_ref, o);
    if (*learn) return cmd_learn(config_path, o);
    if (*recover) return cmd_recover(config_path, o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
