#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "infex/ce_set.hpp"
#include "infex/sigma2.hpp"
#include "infex/structure.hpp"

namespace infex {

// A conjecture label, or "?" when empty.
struct Hypothesis {
  std::optional<std::string> label;

  static Hypothesis question() { return {}; }
  static Hypothesis of(std::string l) { return {std::move(l)}; }
  bool is_question() const { return !label.has_value(); }
  std::string to_string() const { return label ? *label : "?"; }
  bool operator==(const Hypothesis&) const = default;
};

class Learner {
 public:
  using Fn = std::function<Hypothesis(const FiniteStructure&)>;

  explicit Learner(Fn fn) : fn_(std::move(fn)) {}
  Hypothesis operator()(const FiniteStructure& f) const { return fn_(f); }

  static Learner constant(Hypothesis h);

 private:
  Fn fn_;
};

// Stage bound used for clause visibility; defaults to n for f = S|n.
struct StagePolicy {
  std::optional<std::size_t> fixed;

  std::size_t at(const FiniteStructure& f) const { return fixed ? *fixed : (f.size() == 0 ? 0 : f.size() - 1); }
};

struct Decision {
  Hypothesis hypothesis;
  std::optional<Candidate> candidate;
  std::size_t stage_bound = 0;
};

// Conjectures the label of the sentence owning the least-coded unrefuted
// candidate; "?" when there is none.
class FormulaLearner {
 public:
  explicit FormulaLearner(std::vector<Sigma2Sentence> sentences, StagePolicy policy = {});

  const std::vector<Sigma2Sentence>& sentences() const { return sentences_; }
  const StagePolicy& policy() const { return policy_; }
  Decision decide(const FiniteStructure& f) const;
  Learner learner() const;

 private:
  std::vector<Sigma2Sentence> sentences_;
  StagePolicy policy_;
};

Learner formula_learner(std::vector<Sigma2Sentence> sentences, StagePolicy policy = {});

// Limit approximation of an oracle: answer_at(q, s) settles as s grows.
class OracleApprox {
 public:
  using Fn = std::function<bool(std::size_t query, std::size_t stage)>;

  explicit OracleApprox(Fn fn) : fn_(std::move(fn)) {}
  bool answer_at(std::size_t query, std::size_t stage) const { return fn_(query, stage); }

  static OracleApprox from_ce_set(const CeSetApprox& w);

 private:
  Fn fn_;
};

// Universal clauses "forall ybar (l1 | ... | lm)" over variables x0..x{k-1}
// of a fixed tuple, of size (#bound + #literals) <= size_bound, that are not
// refuted at the tuple by instantiations over {0..stage}. Survivor sets are
// memoized and shrink with the stage.
class ForallTypeOracle {
 public:
  ForallTypeOracle(LazyStructure a0, std::vector<Element> tuple, std::size_t size_bound);

  const std::vector<Element>& tuple() const;
  std::size_t size_bound() const;
  // Canonical enumeration of all candidate clauses.
  const std::vector<ClausePtr>& universe() const;
  bool survives(std::size_t clause, std::size_t stage) const;
  std::vector<ClausePtr> survivors(std::size_t stage) const;
  std::vector<std::size_t> survivor_indices(std::size_t stage) const;
  // Query q: does clause q survive at the stage.
  OracleApprox as_oracle() const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

// All clauses of size <= size_bound over k free variables (x0..), with
// strictly increasing literals, every bound variable used, and bound
// variables introduced in order.
std::vector<ClausePtr> clause_universe(const Signature& sig, std::size_t k, std::size_t size_bound);

std::vector<ClausePtr> forall_type_approx(const LazyStructure& a0, std::span<const Element> tuple,
                                          std::size_t size_bound, std::size_t stage);

// psi_i = exists xbar (forall-type of witnesses[i] at the current stage).
class OracleTypeLearner {
 public:
  OracleTypeLearner(std::vector<LazyStructure> family, std::vector<std::vector<Element>> witnesses,
                    std::size_t size_bound, std::vector<std::string> labels = {}, StagePolicy policy = {});

  const std::vector<std::shared_ptr<ForallTypeOracle>>& oracles() const { return oracles_; }
  const FormulaLearner& formula() const { return *formula_; }
  Learner learner() const { return formula_->learner(); }

 private:
  std::vector<std::shared_ptr<ForallTypeOracle>> oracles_;
  std::shared_ptr<FormulaLearner> formula_;
};

Learner oracle_type_learner(std::vector<LazyStructure> family, std::vector<std::vector<Element>> witnesses,
                            std::size_t size_bound);

struct RunReport {
  std::size_t horizon = 0;
  std::vector<Hypothesis> trajectory;
  bool converged = false;
  // Least stage from which the trajectory is constant up to the horizon.
  std::optional<std::size_t> convergence_stage;
  std::size_t mind_changes = 0;
  Hypothesis final;
};

// converged iff the constant tail has at least tail_fraction * horizon stages.
RunReport summarize(std::vector<Hypothesis> trajectory, double tail_fraction = 0.25);

RunReport run_learner(const Learner& m, const Presentation& p, std::size_t horizon, double tail_fraction = 0.25);

// Per bit: '1' if the run ends converged on "+", '0' if on "-", '?' otherwise.
std::string recover_set(const Learner& m, const std::function<Presentation(std::size_t)>& builder, std::size_t bits,
                        std::size_t horizon, double tail_fraction = 0.25);

std::string csv_header();
std::string csv_row(const std::string& scenario, std::uint64_t seed, const RunReport& r);

}  // namespace infex
