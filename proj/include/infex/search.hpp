#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "infex/formula.hpp"
#include "infex/structure.hpp"

namespace infex {

namespace detail {
class SearchRunner;
}

// A literal every solution must satisfy.
struct Literal {
  bool equality = false;
  std::size_t relation = 0;
  std::vector<Term> terms;
  bool positive = true;
};

// Necessary conditions for a formula to take a given truth value.
struct ConstraintSet {
  std::vector<Literal> literals;
  std::vector<std::vector<Term>> distinct_groups;
};

// Adds literals/groups that must hold whenever `node` evaluates to `target`.
// Only conjunctive consequences are collected; disjunctive ones are skipped.
void collect_forced(const QFNode& node, bool target, ConstraintSet& out);

// Precompiled backtracking plan over variables [0, var_count). Variables
// below `preassigned` are fixed by the caller; the rest are searched.
class SearchPlan {
 public:
  SearchPlan(ConstraintSet constraints, std::size_t var_count, std::size_t preassigned);

  std::size_t var_count() const { return var_count_; }
  std::size_t preassigned() const { return preassigned_; }
  const ConstraintSet& constraints() const { return cs_; }

 private:
  friend class AssignmentSearch;
  friend class detail::SearchRunner;

  struct Generator {
    std::uint32_t literal;
    Term other;
    // true: value must be a successor of `other`; false: a predecessor.
    // Unused for equalities.
    bool forward;
  };

  ConstraintSet cs_;
  std::size_t var_count_;
  std::size_t preassigned_;
  std::vector<std::vector<std::uint32_t>> literals_of_;
  std::vector<std::vector<Generator>> generators_;
  std::vector<std::vector<std::size_t>> unary_positive_;
  std::vector<std::vector<std::uint32_t>> groups_of_;
  std::vector<std::vector<std::uint32_t>> wakes_;
  std::vector<std::uint32_t> static_literals_;
  std::vector<std::uint32_t> initial_frontier_;
};

// Enumerates assignments of the searched variables (values < domain_limit)
// satisfying every literal and distinctness group of the plan. The visitor
// sees complete assignments; returning true stops the search. Candidate
// values come from adjacency indexes whenever a positive binary literal
// links a variable to one already bound.
class AssignmentSearch {
 public:
  using Visitor = std::function<bool(std::span<const Element>)>;

  // `assignment` has plan.var_count() slots with the preassigned prefix
  // filled in. Returns true iff the visitor stopped the search.
  static bool run(const FiniteStructure& f, const SearchPlan& plan, std::span<Element> assignment,
                  std::size_t domain_limit, const Visitor& visit);
};

}  // namespace infex
