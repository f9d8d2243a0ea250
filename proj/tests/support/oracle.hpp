#pragma once

// Brute-force reference semantics: quantifiers expanded over the whole
// domain, no search plans, no indexes.

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include "infex/formula.hpp"
#include "infex/sigma2.hpp"
#include "infex/structure.hpp"

namespace oracle {

using infex::Element;
using infex::FiniteStructure;
using infex::QFNode;
using infex::Term;

inline std::optional<Element> value(const FiniteStructure& f, const Term& t, const std::vector<Element>& asg) {
  if (t.is_var()) return asg.at(t.index);
  return f.constant(t.index);
}

// Scans the tuple list instead of using the relation indexes.
inline bool atom_listed(const FiniteStructure& f, std::size_t r, const std::vector<Element>& args) {
  const auto tuples = f.tuples(r);
  const std::size_t ar = f.signature().arity(r);
  for (std::size_t i = 0; i + ar <= tuples.size(); i += ar) {
    if (std::equal(args.begin(), args.end(), tuples.begin() + i)) return true;
  }
  return false;
}

inline bool qf(const FiniteStructure& f, const QFNode& n, const std::vector<Element>& asg) {
  std::vector<Element> vals;
  for (const Term& t : n.terms) vals.push_back(*value(f, t, asg));
  switch (n.kind) {
    case QFNode::Kind::True:
      return true;
    case QFNode::Kind::False:
      return false;
    case QFNode::Kind::Atom:
      return atom_listed(f, n.relation, vals);
    case QFNode::Kind::Equal:
      return vals[0] == vals[1];
    case QFNode::Kind::Distinct:
      for (std::size_t i = 0; i < vals.size(); ++i)
        for (std::size_t j = i + 1; j < vals.size(); ++j)
          if (vals[i] == vals[j]) return false;
      return true;
    case QFNode::Kind::Not:
      return !qf(f, *n.children[0], asg);
    case QFNode::Kind::And:
      for (const auto& c : n.children)
        if (!qf(f, *c, asg)) return false;
      return true;
    case QFNode::Kind::Or:
      for (const auto& c : n.children)
        if (qf(f, *c, asg)) return true;
      return false;
    case QFNode::Kind::Implies:
      return !qf(f, *n.children[0], asg) || qf(f, *n.children[1], asg);
  }
  return false;
}

// Calls fn on every tuple in {0..n-1}^k in lexicographic order until it returns true.
template <class Fn>
bool each_tuple(std::size_t n, std::size_t k, Fn&& fn) {
  std::vector<Element> t(k, 0);
  if (k > 0 && n == 0) return false;
  while (true) {
    if (fn(t)) return true;
    std::size_t pos = k;
    while (pos > 0 && t[pos - 1] + 1 == n) t[--pos] = 0;
    if (pos == 0) return false;
    ++t[pos - 1];
  }
}

inline std::optional<std::vector<Element>> counterexample(const FiniteStructure& f, const infex::UniversalClause& c,
                                                          const std::vector<Element>& tuple, std::size_t limit) {
  std::optional<std::vector<Element>> found;
  each_tuple(std::min(limit, f.size()), c.bound_count(), [&](const std::vector<Element>& inst) {
    std::vector<Element> asg = tuple;
    asg.insert(asg.end(), inst.begin(), inst.end());
    if (qf(f, c.body().root(), asg)) return false;
    found = inst;
    return true;
  });
  return found;
}

enum class Status { Pending, Refuted, Unrefuted };

inline bool mentions_missing_constant(const FiniteStructure& f, const infex::QFFormula& q) {
  for (std::size_t c : q.constants_used())
    if (!f.constant(c)) return true;
  return false;
}

// Three-valued status of one witness tuple.
inline Status status(const FiniteStructure& f, const infex::Disjunct& d, const std::vector<Element>& tuple,
                     std::size_t stage) {
  const auto vis = d.matrix.visible(stage);
  if (d.guard && mentions_missing_constant(f, *d.guard)) return Status::Pending;
  for (const auto& [i, c] : vis)
    if (mentions_missing_constant(f, c->body())) return Status::Pending;
  if (d.guard && !qf(f, d.guard->root(), tuple)) return Status::Refuted;
  for (const auto& [i, c] : vis)
    if (counterexample(f, *c, tuple, f.size())) return Status::Refuted;
  return Status::Unrefuted;
}

inline bool sigma2(const FiniteStructure& f, const infex::Sigma2Sentence& s, std::size_t stage) {
  for (const auto& d : s.disjuncts()) {
    if (each_tuple(f.size(), d.exists.size(),
                   [&](const std::vector<Element>& t) { return status(f, d, t, stage) == Status::Unrefuted; }))
      return true;
  }
  return false;
}

struct Cand {
  std::size_t sentence, disjunct;
  std::vector<Element> tuple;
};

// Enumerates every candidate and sorts by (max element, tuple, sentence, disjunct).
inline std::optional<Cand> least(const FiniteStructure& f, const std::vector<infex::Sigma2Sentence>& ss,
                                 std::size_t stage) {
  std::vector<Cand> all;
  for (std::size_t si = 0; si < ss.size(); ++si)
    for (std::size_t di = 0; di < ss[si].disjuncts().size(); ++di)
      each_tuple(f.size(), ss[si].disjuncts()[di].exists.size(), [&](const std::vector<Element>& t) {
        if (status(f, ss[si].disjuncts()[di], t, stage) == Status::Unrefuted) all.push_back({si, di, t});
        return false;
      });
  auto key = [](const Cand& c) {
    Element m = 0;
    for (Element e : c.tuple) m = std::max(m, e);
    return std::make_tuple(!c.tuple.empty(), m, c.tuple, c.sentence, c.disjunct);
  };
  if (all.empty()) return std::nullopt;
  return *std::min_element(all.begin(), all.end(), [&](const Cand& a, const Cand& b) { return key(a) < key(b); });
}

inline FiniteStructure random_structure(const infex::Signature& sig, std::size_t n, double density,
                                        std::mt19937_64& rng) {
  FiniteStructure::Builder b(sig, n);
  std::bernoulli_distribution coin(density);
  for (std::size_t r = 0; r < sig.relation_count(); ++r) {
    each_tuple(n, sig.arity(r), [&](const std::vector<Element>& t) {
      if (coin(rng)) b.add(r, std::span<const Element>(t));
      return false;
    });
  }
  if (n > 0) {
    std::uniform_int_distribution<Element> pick(0, static_cast<Element>(n - 1));
    for (std::size_t c = 0; c < sig.constant_count(); ++c) b.set_constant(c, pick(rng));
  }
  return std::move(b).build();
}

}  // namespace oracle
