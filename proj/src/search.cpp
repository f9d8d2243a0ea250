#include "infex/search.hpp"

#include <algorithm>
#include <limits>

#include "infex/error.hpp"

namespace infex {

void collect_forced(const QFNode& n, bool target, ConstraintSet& out) {
  switch (n.kind) {
    case QFNode::Kind::True:
    case QFNode::Kind::False:
      break;
    case QFNode::Kind::Atom:
      out.literals.push_back({false, n.relation, n.terms, target});
      break;
    case QFNode::Kind::Equal:
      out.literals.push_back({true, 0, n.terms, target});
      break;
    case QFNode::Kind::Distinct:
      if (target) out.distinct_groups.push_back(n.terms);
      break;
    case QFNode::Kind::Not:
      collect_forced(*n.children[0], !target, out);
      break;
    case QFNode::Kind::And:
      if (target) {
        for (const auto& c : n.children) collect_forced(*c, true, out);
      }
      break;
    case QFNode::Kind::Or:
      if (!target) {
        for (const auto& c : n.children) collect_forced(*c, false, out);
      }
      break;
    case QFNode::Kind::Implies:
      if (!target) {
        collect_forced(*n.children[0], true, out);
        collect_forced(*n.children[1], false, out);
      }
      break;
  }
}

SearchPlan::SearchPlan(ConstraintSet constraints, std::size_t var_count, std::size_t preassigned)
    : cs_(std::move(constraints)), var_count_(var_count), preassigned_(preassigned) {
  if (preassigned_ > var_count_) throw Error("search plan: more preassigned variables than variables");
  literals_of_.resize(var_count_);
  generators_.resize(var_count_);
  unary_positive_.resize(var_count_);
  groups_of_.resize(var_count_);
  wakes_.resize(var_count_);

  auto searched = [&](const Term& t) { return t.is_var() && t.index >= preassigned_; };
  std::vector<char> in_frontier(var_count_, 0);

  for (std::uint32_t li = 0; li < cs_.literals.size(); ++li) {
    const Literal& lit = cs_.literals[li];
    bool any_searched = false;
    for (const Term& t : lit.terms) {
      if (t.is_var() && t.index >= var_count_) throw Error("search plan: variable out of range");
      if (searched(t)) {
        any_searched = true;
        auto& lst = literals_of_[t.index];
        if (lst.empty() || lst.back() != li) lst.push_back(li);
      }
    }
    if (!any_searched) {
      static_literals_.push_back(li);
      continue;
    }
    if (!lit.positive) continue;
    if (!lit.equality && lit.terms.size() == 1) {
      unary_positive_[lit.terms[0].index].push_back(lit.relation);
      continue;
    }
    if (lit.terms.size() != 2) continue;
    const Term a = lit.terms[0], b = lit.terms[1];
    if (a == b) continue;
    auto add_generator = [&](const Term& target, const Term& other, bool forward) {
      if (!searched(target)) return;
      generators_[target.index].push_back({li, other, forward});
      if (searched(other)) {
        wakes_[other.index].push_back(target.index);
      } else if (!in_frontier[target.index]) {
        in_frontier[target.index] = 1;
        initial_frontier_.push_back(target.index);
      }
    };
    add_generator(b, a, true);
    add_generator(a, b, false);
  }

  for (std::uint32_t gi = 0; gi < cs_.distinct_groups.size(); ++gi) {
    for (const Term& t : cs_.distinct_groups[gi]) {
      if (t.is_var() && t.index >= var_count_) throw Error("search plan: variable out of range");
      if (searched(t)) groups_of_[t.index].push_back(gi);
    }
  }
  for (auto& w : wakes_) {
    std::sort(w.begin(), w.end());
    w.erase(std::unique(w.begin(), w.end()), w.end());
  }
}

namespace {

// Per-thread scratch space; sized lazily, reset by epoch stamps.
struct Workspace {
  std::vector<std::uint32_t> stamp;
  std::uint32_t epoch = 0;
  std::vector<std::vector<Element>> group_values;
  std::vector<std::uint32_t> frontier;
  std::vector<std::vector<Element>> candidate_pool;

  void begin(std::size_t vars, std::size_t groups) {
    if (stamp.size() < vars) stamp.resize(vars, 0);
    if (++epoch == 0) {
      std::fill(stamp.begin(), stamp.end(), 0);
      epoch = 1;
    }
    if (group_values.size() < groups) group_values.resize(groups);
    for (std::size_t g = 0; g < groups; ++g) group_values[g].clear();
    frontier.clear();
  }
};

}  // namespace

namespace detail {

class SearchRunner {
 public:
  SearchRunner(const FiniteStructure& f, const SearchPlan& plan, std::span<Element> asg, std::size_t limit,
         const AssignmentSearch::Visitor& visit, Workspace& ws)
      : f_(f), plan_(plan), asg_(asg), limit_(std::min(limit, f.size())), visit_(visit), ws_(ws) {}

  bool start(const std::vector<Literal>& lits, const std::vector<std::vector<Term>>& groups,
             const std::vector<std::uint32_t>& static_lits, const std::vector<std::uint32_t>& frontier) {
    for (std::uint32_t li : static_lits) {
      if (!literal_holds(lits[li], kNoVar, 0)) return false;
    }
    for (std::size_t g = 0; g < groups.size(); ++g) {
      auto& vals = ws_.group_values[g];
      for (const Term& t : groups[g]) {
        if (is_bound(t)) {
          Element v = value(t);
          if (std::find(vals.begin(), vals.end(), v) != vals.end()) return false;
          vals.push_back(v);
        }
      }
    }
    ws_.frontier.assign(frontier.begin(), frontier.end());
    remaining_ = plan_.var_count_ - plan_.preassigned_;
    return step(0);
  }

 private:
  static constexpr std::uint32_t kNoVar = std::numeric_limits<std::uint32_t>::max();

  bool is_bound(const Term& t) const {
    if (!t.is_var()) return true;
    return t.index < plan_.preassigned_ || ws_.stamp[t.index] == ws_.epoch;
  }
  Element value(const Term& t) const { return t.is_var() ? asg_[t.index] : *f_.constant(t.index); }

  // Evaluates a literal with `var` tentatively set to `val`; returns true
  // if the literal holds or cannot be decided yet.
  bool literal_holds(const Literal& lit, std::uint32_t var, Element val) const {
    Element args[8];
    const std::size_t k = lit.terms.size();
    if (k > 8) return true;
    for (std::size_t i = 0; i < k; ++i) {
      const Term& t = lit.terms[i];
      if (t.is_var() && t.index == var) {
        args[i] = val;
      } else if (is_bound(t)) {
        args[i] = value(t);
      } else {
        return true;
      }
    }
    bool truth = lit.equality ? args[0] == args[1] : f_.holds(lit.relation, std::span<const Element>(args, k));
    return truth == lit.positive;
  }

  bool admissible(std::uint32_t var, Element val) const {
    for (std::uint32_t li : plan_.literals_of_[var]) {
      if (!literal_holds(plan_.cs_.literals[li], var, val)) return false;
    }
    for (std::uint32_t g : plan_.groups_of_[var]) {
      const auto& vals = ws_.group_values[g];
      if (std::find(vals.begin(), vals.end(), val) != vals.end()) return false;
    }
    return true;
  }

  // Raw candidate source for `var`, or nullopt for "whole domain".
  bool raw_candidates(std::uint32_t var, std::span<const Element>& out, Element& single) const {
    bool found = false;
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (const auto& g : plan_.generators_[var]) {
      if (!is_bound(g.other)) continue;
      const Literal& lit = plan_.cs_.literals[g.literal];
      const Element o = value(g.other);
      std::span<const Element> src;
      if (lit.equality) {
        single = o;
        src = std::span<const Element>(&single, 1);
      } else {
        src = g.forward ? f_.successors(lit.relation, o) : f_.predecessors(lit.relation, o);
      }
      if (src.size() < best) {
        best = src.size();
        out = src;
        found = true;
      }
    }
    if (!found) {
      for (std::size_t r : plan_.unary_positive_[var]) {
        auto src = f_.members(r);
        if (src.size() < best) {
          best = src.size();
          out = src;
          found = true;
        }
      }
    }
    return found;
  }

  void filtered(std::uint32_t var, std::vector<Element>& into) const {
    into.clear();
    std::span<const Element> src;
    Element single = 0;
    if (raw_candidates(var, src, single)) {
      for (Element e : src) {
        if (e < limit_ && admissible(var, e)) into.push_back(e);
      }
    } else {
      for (Element e = 0; e < limit_; ++e) {
        if (admissible(var, e)) into.push_back(e);
      }
    }
  }

  bool step(std::size_t depth) {
    if (remaining_ == 0) return visit_(std::span<const Element>(asg_.data(), asg_.size()));
    if (ws_.candidate_pool.size() <= depth) ws_.candidate_pool.resize(depth + 1);
    auto& best = ws_.candidate_pool[depth];
    std::uint32_t chosen = kNoVar;
    std::vector<Element> scratch;
    for (std::uint32_t v : ws_.frontier) {
      if (ws_.stamp[v] == ws_.epoch) continue;
      if (v == chosen) continue;
      filtered(v, scratch);
      if (chosen == kNoVar || scratch.size() < best.size()) {
        chosen = v;
        best.swap(scratch);
        if (best.empty()) return false;
      }
    }
    if (chosen == kNoVar) {
      for (std::uint32_t v = static_cast<std::uint32_t>(plan_.preassigned_); v < plan_.var_count_; ++v) {
        if (ws_.stamp[v] != ws_.epoch) {
          chosen = v;
          break;
        }
      }
      filtered(chosen, best);
    }
    // `best` may be reused by deeper levels; keep a private copy.
    std::vector<Element> values = best;
    const std::size_t frontier_mark = ws_.frontier.size();
    for (Element e : values) {
      asg_[chosen] = e;
      ws_.stamp[chosen] = ws_.epoch;
      for (std::uint32_t g : plan_.groups_of_[chosen]) ws_.group_values[g].push_back(e);
      for (std::uint32_t w : plan_.wakes_[chosen]) ws_.frontier.push_back(w);
      --remaining_;
      bool stop = step(depth + 1);
      ++remaining_;
      ws_.frontier.resize(frontier_mark);
      for (std::uint32_t g : plan_.groups_of_[chosen]) ws_.group_values[g].pop_back();
      ws_.stamp[chosen] = 0;
      if (stop) return true;
    }
    return false;
  }

  const FiniteStructure& f_;
  const SearchPlan& plan_;
  std::span<Element> asg_;
  std::size_t limit_;
  const AssignmentSearch::Visitor& visit_;
  Workspace& ws_;
  std::size_t remaining_ = 0;
};

}  // namespace detail

bool AssignmentSearch::run(const FiniteStructure& f, const SearchPlan& plan, std::span<Element> assignment,
                           std::size_t domain_limit, const Visitor& visit) {
  if (assignment.size() < plan.var_count()) throw Error("assignment buffer too small for search plan");
  for (std::size_t i = 0; i < plan.preassigned(); ++i) {
    if (assignment[i] >= f.size()) throw Error("preassigned value outside the domain");
  }
  for (const auto& lit : plan.constraints().literals) {
    for (const Term& t : lit.terms) {
      if (!t.is_var() && !f.constant(t.index)) throw Error("unbound term: constant has no value");
    }
  }
  thread_local Workspace ws;
  // Nested searches (a visitor starting another search) need their own
  // scratch space.
  thread_local int depth = 0;
  Workspace local;
  Workspace& use = depth == 0 ? ws : local;
  ++depth;
  struct Guard {
    int& d;
    ~Guard() { --d; }
  } guard{depth};
  use.begin(plan.var_count(), plan.constraints().distinct_groups.size());
  detail::SearchRunner runner(f, plan, assignment.subspan(0, plan.var_count()), domain_limit, visit, use);
  return runner.start(plan.constraints().literals, plan.constraints().distinct_groups, plan.static_literals_,
                      plan.initial_frontier_);
}

}  // namespace infex
