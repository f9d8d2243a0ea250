#include "infex/learning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <set>

#include "infex/error.hpp"

namespace infex {

Learner Learner::constant(Hypothesis h) {
  return Learner([h = std::move(h)](const FiniteStructure&) { return h; });
}

FormulaLearner::FormulaLearner(std::vector<Sigma2Sentence> sentences, StagePolicy policy)
    : sentences_(std::move(sentences)), policy_(policy) {
  std::set<std::string> labels;
  for (const auto& s : sentences_) {
    if (!labels.insert(s.label()).second) throw Error("duplicate sentence label '" + s.label() + "'");
  }
}

Decision FormulaLearner::decide(const FiniteStructure& f) const {
  Decision d;
  d.stage_bound = policy_.at(f);
  d.candidate = least_unrefuted(f, sentences_, d.stage_bound);
  if (d.candidate) d.hypothesis = Hypothesis::of(sentences_[d.candidate->sentence].label());
  return d;
}

Learner FormulaLearner::learner() const {
  auto self = std::make_shared<const FormulaLearner>(*this);
  return Learner([self](const FiniteStructure& f) { return self->decide(f).hypothesis; });
}

Learner formula_learner(std::vector<Sigma2Sentence> sentences, StagePolicy policy) {
  return FormulaLearner(std::move(sentences), policy).learner();
}

OracleApprox OracleApprox::from_ce_set(const CeSetApprox& w) {
  return OracleApprox([w](std::size_t q, std::size_t s) { return w.contains(q, s); });
}

namespace {

struct LiteralSpec {
  bool equality;
  std::size_t relation;
  std::vector<std::uint32_t> vars;
  bool positive;
};

std::vector<LiteralSpec> literals_over(const Signature& sig, std::size_t nvars) {
  std::vector<LiteralSpec> atoms;
  for (std::size_t r = 0; r < sig.relation_count(); ++r) {
    const std::size_t ar = sig.arity(r);
    std::vector<std::uint32_t> t(ar, 0);
    while (true) {
      atoms.push_back({false, r, t, true});
      std::size_t pos = ar;
      while (pos > 0 && t[pos - 1] + 1 == nvars) t[--pos] = 0;
      if (pos == 0) break;
      ++t[pos - 1];
    }
  }
  for (std::uint32_t u = 0; u < nvars; ++u) {
    for (std::uint32_t v = u; v < nvars; ++v) atoms.push_back({true, 0, {u, v}, true});
  }
  std::vector<LiteralSpec> out;
  for (const auto& a : atoms) {
    out.push_back(a);
    out.push_back({a.equality, a.relation, a.vars, false});
  }
  return out;
}

QFNodePtr literal_node(const LiteralSpec& l) {
  std::vector<Term> terms;
  for (auto v : l.vars) terms.push_back(Term::var(v));
  QFNodePtr n = l.equality ? qf::equal(terms[0], terms[1]) : qf::atom(l.relation, std::move(terms));
  return l.positive ? n : qf::negate(n);
}

}  // namespace

std::vector<ClausePtr> clause_universe(const Signature& sig, std::size_t k, std::size_t size_bound) {
  std::vector<ClausePtr> out;
  for (std::size_t b = 0; b < size_bound; ++b) {
    const std::size_t nvars = k + b;
    if (nvars == 0) continue;
    const auto lits = literals_over(sig, nvars);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < k; ++i) names.push_back("x" + std::to_string(i));
    for (std::size_t i = 0; i < b; ++i) names.push_back("y" + std::to_string(i));
    for (std::size_t l = 1; b + l <= size_bound && l <= lits.size(); ++l) {
      std::vector<std::size_t> idx(l);
      for (std::size_t i = 0; i < l; ++i) idx[i] = i;
      while (true) {
        std::size_t next_bound = k;
        bool ok = true;
        for (std::size_t i : idx) {
          for (auto v : lits[i].vars) {
            if (v < k) continue;
            if (v > next_bound) ok = false;
            if (v == next_bound) ++next_bound;
          }
        }
        if (ok && next_bound == nvars) {
          std::vector<QFNodePtr> parts;
          for (std::size_t i : idx) parts.push_back(literal_node(lits[i]));
          out.push_back(std::make_shared<const UniversalClause>(QFFormula(sig, names, qf::any_of(std::move(parts))), k));
        }
        std::size_t pos = l;
        while (pos > 0 && idx[pos - 1] == lits.size() - l + pos - 1) --pos;
        if (pos == 0) break;
        ++idx[pos - 1];
        for (std::size_t i = pos; i < l; ++i) idx[i] = idx[i - 1] + 1;
      }
    }
  }
  return out;
}

struct ForallTypeOracle::State {
  static constexpr std::size_t kAlive = std::numeric_limits<std::size_t>::max();

  State(LazyStructure a, std::vector<Element> t, std::size_t b) : a0(std::move(a)), tuple(std::move(t)), size_bound(b) {}

  LazyStructure a0;
  std::vector<Element> tuple;
  std::size_t size_bound;
  std::vector<ClausePtr> universe;
  std::mutex mu;
  std::optional<RestrictionChain> chain;
  // Stage at which each clause was first refuted, or kAlive.
  std::vector<std::size_t> death;
  std::optional<std::size_t> computed;

  void ensure(std::size_t stage) {
    if (computed && *computed >= stage) return;
    const Element top = tuple.empty() ? 0 : *std::max_element(tuple.begin(), tuple.end());
    if (!chain) {
      chain.emplace(Presentation(a0));
      death.assign(universe.size(), kAlive);
    }
    for (std::size_t st = computed ? *computed + 1 : 0; st <= stage; ++st) {
      const std::size_t need = std::max<std::size_t>(st, top);
      while (chain->stage() < need) chain->advance();
      const FiniteStructure& f = chain->current();
      for (std::size_t q = 0; q < universe.size(); ++q) {
        if (death[q] != kAlive) continue;
        const UniversalClause& c = *universe[q];
        if (c.bound_count() == 0 && st > 0) continue;
        if (clause_refuted(f, c, tuple, st + 1)) death[q] = st;
      }
      computed = st;
    }
  }
};

ForallTypeOracle::ForallTypeOracle(LazyStructure a0, std::vector<Element> tuple, std::size_t size_bound)
    : state_(std::make_shared<State>(std::move(a0), std::move(tuple), size_bound)) {
  if (state_->tuple.empty()) throw Error("the type tuple must be nonempty");
  state_->universe = clause_universe(state_->a0.signature(), state_->tuple.size(), size_bound);
}

const std::vector<Element>& ForallTypeOracle::tuple() const { return state_->tuple; }
std::size_t ForallTypeOracle::size_bound() const { return state_->size_bound; }
const std::vector<ClausePtr>& ForallTypeOracle::universe() const { return state_->universe; }

bool ForallTypeOracle::survives(std::size_t clause, std::size_t stage) const {
  std::lock_guard lock(state_->mu);
  if (clause >= state_->universe.size()) return false;
  state_->ensure(stage);
  return state_->death[clause] > stage;
}

std::vector<std::size_t> ForallTypeOracle::survivor_indices(std::size_t stage) const {
  std::lock_guard lock(state_->mu);
  std::vector<std::size_t> out;
  if (state_->universe.empty()) return out;
  state_->ensure(stage);
  for (std::size_t q = 0; q < state_->universe.size(); ++q) {
    if (state_->death[q] > stage) out.push_back(q);
  }
  return out;
}

std::vector<ClausePtr> ForallTypeOracle::survivors(std::size_t stage) const {
  std::vector<ClausePtr> out;
  for (std::size_t q : survivor_indices(stage)) out.push_back(state_->universe[q]);
  return out;
}

OracleApprox ForallTypeOracle::as_oracle() const {
  auto self = *this;
  return OracleApprox([self](std::size_t q, std::size_t s) { return self.survives(q, s); });
}

std::vector<ClausePtr> forall_type_approx(const LazyStructure& a0, std::span<const Element> tuple,
                                          std::size_t size_bound, std::size_t stage) {
  if (size_bound == 0) return {};
  return ForallTypeOracle(a0, std::vector<Element>(tuple.begin(), tuple.end()), size_bound).survivors(stage);
}

OracleTypeLearner::OracleTypeLearner(std::vector<LazyStructure> family, std::vector<std::vector<Element>> witnesses,
                                     std::size_t size_bound, std::vector<std::string> labels, StagePolicy policy) {
  if (family.empty()) throw Error("family must be nonempty");
  if (witnesses.size() != family.size()) throw Error("one witness tuple per family member is required");
  if (labels.empty()) {
    for (std::size_t i = 0; i < family.size(); ++i) labels.push_back(std::to_string(i));
  }
  if (labels.size() != family.size()) throw Error("one label per family member is required");
  std::vector<Sigma2Sentence> sentences;
  for (std::size_t i = 0; i < family.size(); ++i) {
    auto oracle = std::make_shared<ForallTypeOracle>(family[i], witnesses[i], size_bound);
    oracles_.push_back(oracle);
    Disjunct d;
    for (std::size_t j = 0; j < witnesses[i].size(); ++j) d.exists.push_back("x" + std::to_string(j));
    d.matrix = Pi1Matrix::staged([oracle](std::size_t s) { return oracle->survivors(s); });
    sentences.emplace_back(family[i].signature(), labels[i], std::vector<Disjunct>{std::move(d)});
  }
  formula_ = std::make_shared<FormulaLearner>(std::move(sentences), policy);
}

Learner oracle_type_learner(std::vector<LazyStructure> family, std::vector<std::vector<Element>> witnesses,
                            std::size_t size_bound) {
  return OracleTypeLearner(std::move(family), std::move(witnesses), size_bound).learner();
}

RunReport summarize(std::vector<Hypothesis> trajectory, double tail_fraction) {
  if (trajectory.empty()) throw Error("empty trajectory");
  RunReport r;
  r.horizon = trajectory.size() - 1;
  std::size_t c = r.horizon;
  while (c > 0 && trajectory[c - 1] == trajectory[c]) --c;
  for (std::size_t n = 0; n + 1 < trajectory.size(); ++n) {
    if (!(trajectory[n] == trajectory[n + 1])) ++r.mind_changes;
  }
  r.convergence_stage = c;
  const double tail = static_cast<double>(r.horizon + 1 - c);
  r.converged = tail >= tail_fraction * static_cast<double>(r.horizon);
  r.final = trajectory.back();
  r.trajectory = std::move(trajectory);
  return r;
}

RunReport run_learner(const Learner& m, const Presentation& p, std::size_t horizon, double tail_fraction) {
  if (horizon < 1) throw Error("horizon must be at least 1");
  std::vector<Hypothesis> traj;
  traj.reserve(horizon + 1);
  RestrictionChain chain(p);
  traj.push_back(m(chain.current()));
  for (std::size_t n = 1; n <= horizon; ++n) traj.push_back(m(chain.advance()));
  return summarize(std::move(traj), tail_fraction);
}

std::string recover_set(const Learner& m, const std::function<Presentation(std::size_t)>& builder, std::size_t bits,
                        std::size_t horizon, double tail_fraction) {
  std::string out;
  for (std::size_t k = 0; k < bits; ++k) {
    const RunReport r = run_learner(m, builder(k), horizon, tail_fraction);
    char bit = '?';
    if (r.converged && r.final.label == "+") bit = '1';
    if (r.converged && r.final.label == "-") bit = '0';
    out += bit;
  }
  return out;
}

std::string csv_header() { return "scenario,seed,horizon,converged,convergence_stage,mind_changes,final"; }

std::string csv_row(const std::string& scenario, std::uint64_t seed, const RunReport& r) {
  return scenario + "," + std::to_string(seed) + "," + std::to_string(r.horizon) + "," +
         (r.converged ? "true" : "false") + "," +
         (r.convergence_stage ? std::to_string(*r.convergence_stage) : std::string("none")) + "," +
         std::to_string(r.mind_changes) + "," + r.final.to_string();
}

}  // namespace infex
