#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "infex/formula.hpp"
#include "infex/search.hpp"

namespace infex {

// forall ybar body(xbar, ybar). The body's first free_count() variables
// are the enclosing existential block; the rest are bound here.
class UniversalClause {
 public:
  // Optional shortcut deciding refutation without search; must agree with it.
  using Refuter = std::function<bool(const FiniteStructure&, std::span<const Element> tuple, std::size_t domain_limit)>;

  UniversalClause(QFFormula body, std::size_t free_count, Refuter refuter = {});

  std::size_t free_count() const { return free_count_; }
  std::size_t bound_count() const { return body_.variable_count() - free_count_; }
  const QFFormula& body() const { return body_; }
  // Plan whose solutions are candidate counterexamples (body false).
  const SearchPlan& refutation_plan() const { return plan_; }
  const Refuter& refuter() const { return refuter_; }
  std::string to_string() const;

 private:
  QFFormula body_;
  std::size_t free_count_;
  SearchPlan plan_;
  Refuter refuter_;
};

using ClausePtr = std::shared_ptr<const UniversalClause>;

// A stage-enumerated conjunction of universal clauses. Enumerated matrices
// expose clause k (or a gap) at every stage >= k; staged matrices replace
// the whole visible list at each stage (limit approximations).
class Pi1Matrix {
 public:
  using ClauseAt = std::function<ClausePtr(std::size_t index)>;
  using StagedClauses = std::function<std::vector<ClausePtr>(std::size_t stage)>;

  static Pi1Matrix enumerated(ClauseAt clause_at);
  static Pi1Matrix finite(std::vector<ClausePtr> clauses);
  static Pi1Matrix staged(StagedClauses clauses);
  static Pi1Matrix empty() { return finite({}); }

  bool is_staged() const { return static_cast<bool>(staged_); }
  const std::optional<std::vector<ClausePtr>>& finite_clauses() const { return finite_; }
  // Enumerated matrices only; nullptr is a gap.
  ClausePtr clause_at(std::size_t index) const;
  // (index, clause) pairs visible at `stage_bound`, in index order.
  std::vector<std::pair<std::size_t, ClausePtr>> visible(std::size_t stage_bound) const;

 private:
  ClauseAt clause_at_;
  StagedClauses staged_;
  std::optional<std::vector<ClausePtr>> finite_;
};

// exists xbar [guard(xbar) & matrix(xbar)]. The optional guard is the
// quantifier-free conjunct of the block and is visible at every stage.
struct Disjunct {
  std::vector<std::string> exists;
  std::optional<QFFormula> guard;
  Pi1Matrix matrix = Pi1Matrix::empty();
  // Set when the disjunct came from a named generator (used for JSON).
  std::string generator_id;
};

class Sigma2Sentence {
 public:
  Sigma2Sentence(Signature signature, std::string label, std::vector<Disjunct> disjuncts,
                 std::string generator_id = {});

  const Signature& signature() const { return signature_; }
  const std::string& label() const { return label_; }
  const std::vector<Disjunct>& disjuncts() const { return disjuncts_; }
  // Non-empty when the sentence came from a named generator.
  const std::string& generator_id() const { return generator_id_; }

 private:
  Signature signature_;
  std::string label_;
  std::vector<Disjunct> disjuncts_;
  std::string generator_id_;
};

struct RefutingEvidence {
  // nullopt: the guard itself is false at the tuple.
  std::optional<std::size_t> clause_index;
  std::vector<Element> instantiation;
};

struct WitnessStatus {
  std::size_t disjunct = 0;
  std::vector<Element> tuple;
  bool refuted = false;
  // Some constant the disjunct mentions has no value yet.
  bool pending = false;
  std::optional<RefutingEvidence> evidence;
};

struct Witness {
  std::size_t disjunct = 0;
  std::vector<Element> tuple;
};

struct Candidate {
  std::size_t sentence = 0;
  std::size_t disjunct = 0;
  std::vector<Element> tuple;
};

// Witness order: by largest element, then lexicographically. Every tuple
// has finitely many predecessors.
bool tuple_less(std::span<const Element> a, std::span<const Element> b);

// Candidate code order: tuple first, then sentence index, then disjunct.
bool candidate_less(const Candidate& a, const Candidate& b);

// Every witness tuple of every disjunct over f's domain, with refutation
// status against the clauses visible at stage_bound. Evidence is the
// lexicographically least counterexample of the lowest failing clause.
std::vector<WitnessStatus> witness_scan(const FiniteStructure& f, const Sigma2Sentence& sentence,
                                        std::size_t stage_bound);

// Least unrefuted witness, treating f as the whole structure.
std::optional<Witness> find_witness(const FiniteStructure& f, const Sigma2Sentence& sentence,
                                    std::size_t stage_bound);

bool eval_sigma2_closed(const FiniteStructure& f, const Sigma2Sentence& sentence, std::size_t stage_bound);

// Least-coded unrefuted candidate over all sentences; agrees with taking the
// minimum over witness_scan of every sentence.
std::optional<Candidate> least_unrefuted(const FiniteStructure& f, std::span<const Sigma2Sentence> sentences,
                                         std::size_t stage_bound);

// Does some instantiation of the clause's bound variables, with values
// below domain_limit, falsify it at `tuple`? Evidence (if requested) is the
// lexicographically least such instantiation.
bool clause_refuted(const FiniteStructure& f, const UniversalClause& clause, std::span<const Element> tuple,
                    std::size_t domain_limit, std::vector<Element>* evidence = nullptr);

using GeneratorResolver = std::function<Disjunct(const std::string& id, const Signature& signature)>;

// {"label": "+", "disjuncts": [{"exists": ["x"], "guard": <qf>,
//   "clauses": "<generator id>" | [{"forall": ["y"], "body": <qf>}, ...]}]}
Json sentence_to_json(const Sigma2Sentence& sentence);
Sigma2Sentence sentence_from_json(const Signature& signature, const Json& j, const GeneratorResolver& resolver);

}  // namespace infex
