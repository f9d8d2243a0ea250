#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "infex/json_io.hpp"
#include "infex/signature.hpp"
#include "infex/structure.hpp"

namespace infex {

struct Term {
  enum class Kind : std::uint8_t { Variable, Constant };
  Kind kind = Kind::Variable;
  std::uint32_t index = 0;

  static Term var(std::uint32_t i) { return {Kind::Variable, i}; }
  static Term constant(std::uint32_t i) { return {Kind::Constant, i}; }
  bool is_var() const { return kind == Kind::Variable; }
  bool operator==(const Term&) const = default;
};

struct QFNode;
using QFNodePtr = std::shared_ptr<const QFNode>;

// Quantifier-free syntax. Distinct(t1..tk) abbreviates the conjunction of
// all pairwise inequalities.
struct QFNode {
  enum class Kind : std::uint8_t { True, False, Atom, Equal, Distinct, Not, And, Or, Implies };
  Kind kind = Kind::True;
  std::size_t relation = 0;
  std::vector<Term> terms;
  std::vector<QFNodePtr> children;
};

namespace qf {
QFNodePtr top();
QFNodePtr bottom();
QFNodePtr atom(std::size_t relation, std::vector<Term> args);
QFNodePtr equal(Term a, Term b);
QFNodePtr distinct(std::vector<Term> terms);
QFNodePtr negate(QFNodePtr f);
QFNodePtr all_of(std::vector<QFNodePtr> parts);
QFNodePtr any_of(std::vector<QFNodePtr> parts);
QFNodePtr implies(QFNodePtr premise, QFNodePtr conclusion);
}  // namespace qf

// A quantifier-free formula together with its declared variables
// (variable i of the syntax is variables()[i]).
class QFFormula {
 public:
  QFFormula(Signature signature, std::vector<std::string> variables, QFNodePtr root);

  const Signature& signature() const { return signature_; }
  const std::vector<std::string>& variables() const { return variables_; }
  std::size_t variable_count() const { return variables_.size(); }
  const QFNode& root() const { return *root_; }
  const QFNodePtr& root_ptr() const { return root_; }
  // Constant symbols mentioned anywhere, sorted.
  const std::vector<std::size_t>& constants_used() const { return constants_; }
  std::size_t node_count() const { return node_count_; }

 private:
  Signature signature_;
  std::vector<std::string> variables_;
  QFNodePtr root_;
  std::vector<std::size_t> constants_;
  std::size_t node_count_ = 0;
};

// Closed-world truth of `f` under `assignment` (indexed by variable).
// Throws Error("unbound term ...") if a variable is unassigned or out of the
// domain, or a mentioned constant has no value in `f`.
bool eval_qf(const FiniteStructure& f, const QFFormula& formula, std::span<const Element> assignment);

// Unchecked evaluation; callers guarantee every term is bound.
bool eval_node(const FiniteStructure& f, const QFNode& node, std::span<const Element> assignment);

std::string to_string(const QFFormula& formula);

Json qf_to_json(const QFFormula& formula);
// Terms are strings: declared variable names first, then constant symbols.
QFFormula qf_from_json(const Signature& signature, std::vector<std::string> variables, const Json& j);

}  // namespace infex
