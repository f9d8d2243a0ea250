#include "infex/isomorphism.hpp"

#include <algorithm>
#include <vector>

#include "infex/error.hpp"

namespace infex {

namespace {

// Per-element invariant: unary memberships and binary in/out degrees.
std::vector<std::size_t> profile(const FiniteStructure& s, Element u) {
  std::vector<std::size_t> p;
  const auto& sig = s.signature();
  for (std::size_t r = 0; r < sig.relation_count(); ++r) {
    if (sig.arity(r) == 1) {
      p.push_back(s.holds(r, {u}) ? 1 : 0);
    } else if (sig.arity(r) == 2) {
      p.push_back(s.successors(r, u).size());
      p.push_back(s.predecessors(r, u).size());
      p.push_back(s.holds(r, {u, u}) ? 1 : 0);
    }
  }
  for (std::size_t c = 0; c < sig.constant_count(); ++c) p.push_back(s.constant(c) == u ? 1 : 0);
  return p;
}

class Matcher {
 public:
  Matcher(const FiniteStructure& f, const FiniteStructure& g) : f_(f), g_(g) {
    const std::size_t n = f.size();
    map_.assign(n, kNoElement);
    used_.assign(n, false);
    for (Element u = 0; u < n; ++u) {
      pf_.push_back(profile(f, u));
      pg_.push_back(profile(g, u));
    }
    // most constrained first: rarest profiles
    order_.resize(n);
    for (Element u = 0; u < n; ++u) order_[u] = u;
    std::vector<std::size_t> freq(n, 0);
    for (Element u = 0; u < n; ++u) {
      freq[u] = static_cast<std::size_t>(std::count(pf_.begin(), pf_.end(), pf_[u]));
    }
    std::stable_sort(order_.begin(), order_.end(), [&](Element a, Element b) { return freq[a] < freq[b]; });
    for (const auto& r : f.signature().relations()) {
      if (r.arity > 2) has_high_arity_ = true;
    }
  }

  bool run() {
    auto a = pf_, b = pg_;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return false;
    return extend(0);
  }

 private:
  bool consistent(Element u) const {
    const auto& sig = f_.signature();
    const Element v = map_[u];
    for (std::size_t r = 0; r < sig.relation_count(); ++r) {
      if (sig.arity(r) != 2) continue;
      for (Element w = 0; w < f_.size(); ++w) {
        if (map_[w] == kNoElement) continue;
        if (f_.holds(r, {u, w}) != g_.holds(r, {v, map_[w]})) return false;
        if (f_.holds(r, {w, u}) != g_.holds(r, {map_[w], v})) return false;
      }
    }
    return true;
  }

  bool full_check() const {
    const auto& sig = f_.signature();
    for (std::size_t r = 0; r < sig.relation_count(); ++r) {
      const std::size_t k = sig.arity(r);
      if (k <= 2) continue;
      if (f_.tuple_count(r) != g_.tuple_count(r)) return false;
      auto tuples = f_.tuples(r);
      std::vector<Element> image(k);
      for (std::size_t i = 0; i < tuples.size(); i += k) {
        for (std::size_t j = 0; j < k; ++j) image[j] = map_[tuples[i + j]];
        if (!g_.holds(r, image)) return false;
      }
    }
    return true;
  }

  bool extend(std::size_t depth) {
    if (depth == order_.size()) return !has_high_arity_ || full_check();
    const Element u = order_[depth];
    for (Element v = 0; v < g_.size(); ++v) {
      if (used_[v] || pf_[u] != pg_[v]) continue;
      map_[u] = v;
      used_[v] = true;
      if (consistent(u) && extend(depth + 1)) return true;
      used_[v] = false;
      map_[u] = kNoElement;
    }
    return false;
  }

  const FiniteStructure& f_;
  const FiniteStructure& g_;
  std::vector<std::vector<std::size_t>> pf_, pg_;
  std::vector<Element> order_;
  std::vector<Element> map_;
  std::vector<bool> used_;
  bool has_high_arity_ = false;
};

}  // namespace

bool finite_isomorphic(const FiniteStructure& f, const FiniteStructure& g) {
  if (!(f.signature() == g.signature())) throw Error("finite_isomorphic: signature mismatch");
  if (f.size() != g.size() || f.atom_count() != g.atom_count()) return false;
  for (std::size_t r = 0; r < f.signature().relation_count(); ++r) {
    if (f.tuple_count(r) != g.tuple_count(r)) return false;
  }
  for (std::size_t c = 0; c < f.signature().constant_count(); ++c) {
    if (f.constant(c).has_value() != g.constant(c).has_value()) return false;
  }
  return Matcher(f, g).run();
}

}  // namespace infex
