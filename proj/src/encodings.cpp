#include "infex/encodings.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <mutex>
#include <unordered_map>

#include "infex/error.hpp"

namespace infex {

namespace {

constexpr std::size_t kR = 0, kQ = 1, kU = 2, kT = 3;

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

std::string to_string(const VNode& n) {
  switch (n.kind) {
    case VNode::Kind::Root:
      return "r";
    case VNode::Kind::Sink:
      return "c";
    case VNode::Kind::A:
      return "a" + std::to_string(n.block);
    case VNode::Kind::B:
      return "b" + std::to_string(n.block);
    case VNode::Kind::D:
      return "d" + std::to_string(n.block) + "," + std::to_string(n.index);
  }
  return "?";
}

namespace vlayout {

Element base(std::size_t block) { return static_cast<Element>(2 + block * (block + 5) / 2); }

Element code_of(const VNode& n) {
  switch (n.kind) {
    case VNode::Kind::Root:
      return 0;
    case VNode::Kind::Sink:
      return 1;
    case VNode::Kind::A:
      return base(n.block);
    case VNode::Kind::B:
      return base(n.block) + 1;
    case VNode::Kind::D:
      if (n.index > n.block) throw Error("d-node index exceeds its block");
      return base(n.block) + 2 + static_cast<Element>(n.index);
  }
  return 0;
}

VNode node_of(Element code) {
  if (code == 0) return VNode::root();
  if (code == 1) return VNode::sink();
  // base(i) = 2 + (i^2 + 5i) / 2
  auto i = static_cast<std::size_t>(std::sqrt(2.0 * (code - 2)));
  while (i > 0 && base(i) > code) --i;
  while (base(i + 1) <= code) ++i;
  const Element off = code - base(i);
  if (off == 0) return VNode::a(i);
  if (off == 1) return VNode::b(i);
  return VNode::d(i, off - 2);
}

}  // namespace vlayout

bool v_edge(const VNode& u, const VNode& v) {
  using K = VNode::Kind;
  auto directed = [](const VNode& p, const VNode& q) {
    if (p.kind == K::Root) return q.kind == K::A;
    if (p.kind == K::A) {
      if (q.kind == K::B) return q.block == p.block;
      if (q.kind == K::D) return q.block == p.block && q.index == 0;
      return false;
    }
    if (p.kind == K::D) {
      if (q.kind == K::D) return q.block == p.block && q.index == p.index + 1;
      if (q.kind == K::Sink) return p.index == p.block;
    }
    return false;
  };
  return directed(u, v) || directed(v, u);
}

bool v_unary(char relation, const VNode& u) {
  using K = VNode::Kind;
  if (relation == 'U') return u.kind == K::Root || u.kind == K::A || u.kind == K::B;
  if (relation == 'Q') return u.kind == K::Sink;
  return false;
}

LazyStructure build_V() {
  return LazyStructure(Signature::tree_signature(), [](std::size_t r, std::span<const Element> a) {
    if (r == kR) return v_edge(vlayout::node_of(a[0]), vlayout::node_of(a[1]));
    if (r == kQ) return a[0] == 1;
    return v_unary('U', vlayout::node_of(a[0]));
  });
}

QFNodePtr theta_node(const Signature& sig, Term x, const std::vector<Term>& ys, Term z) {
  const std::size_t R = sig.relation("R"), Q = sig.relation("Q"), U = sig.relation("U");
  std::vector<Term> all{x};
  all.insert(all.end(), ys.begin(), ys.end());
  all.push_back(z);
  std::vector<QFNodePtr> parts;
  parts.push_back(qf::distinct(all));
  parts.push_back(qf::atom(U, {x}));
  parts.push_back(qf::atom(Q, {z}));
  for (const Term& y : ys) parts.push_back(qf::negate(qf::atom(U, {y})));
  for (std::size_t i = 0; i + 1 < all.size(); ++i) parts.push_back(qf::atom(R, {all[i], all[i + 1]}));
  return qf::all_of(std::move(parts));
}

QFFormula theta(std::size_t i) {
  std::vector<std::string> names{"x"};
  std::vector<Term> ys;
  for (std::size_t j = 0; j <= i; ++j) {
    names.push_back("y" + std::to_string(j));
    ys.push_back(Term::var(static_cast<std::uint32_t>(j + 1)));
  }
  names.push_back("z");
  const Signature sig = Signature::tree_signature();
  auto root = theta_node(sig, Term::var(0), ys, Term::var(static_cast<std::uint32_t>(i + 2)));
  return QFFormula(sig, std::move(names), std::move(root));
}

struct TreeNumbering::Table {
  std::mutex mu;
  std::vector<VNode> nodes{VNode::root(), VNode::sink()};
  std::vector<std::uint32_t> stage_of{0, 0};
  std::vector<Element> a_code;
  std::unordered_map<std::size_t, Element> b_code;
  std::size_t next_stage = 0;

  void run_stage(const CeSetApprox& w) {
    const std::size_t s = next_stage++;
    auto push = [&](VNode n) {
      nodes.push_back(n);
      stage_of.push_back(static_cast<std::uint32_t>(s));
      return static_cast<Element>(nodes.size() - 1);
    };
    a_code.push_back(push(VNode::a(s)));
    for (std::size_t j = 0; j <= s; ++j) push(VNode::d(s, j));
    for (std::size_t i : w.enum_at(s)) {
      if (!b_code.count(i)) b_code.emplace(i, push(VNode::b(i)));
    }
  }
};

TreeNumbering::TreeNumbering(CeSetApprox w) : w_(std::move(w)), table_(std::make_shared<Table>()) {}

VNode TreeNumbering::node(Element code) const {
  std::lock_guard lock(table_->mu);
  while (table_->nodes.size() <= code) table_->run_stage(w_);
  return table_->nodes[code];
}

std::size_t TreeNumbering::stage_of(Element code) const {
  std::lock_guard lock(table_->mu);
  while (table_->nodes.size() <= code) table_->run_stage(w_);
  return table_->stage_of[code];
}

std::optional<Element> TreeNumbering::code_of(const VNode& n, std::size_t stage_limit) const {
  std::lock_guard lock(table_->mu);
  Table& t = *table_;
  switch (n.kind) {
    case VNode::Kind::Root:
      return 0;
    case VNode::Kind::Sink:
      return 1;
    case VNode::Kind::A:
    case VNode::Kind::D:
      if (n.kind == VNode::Kind::D && n.index > n.block) return std::nullopt;
      if (n.block > stage_limit) return std::nullopt;
      while (t.next_stage <= n.block) t.run_stage(w_);
      return t.a_code[n.block] + (n.kind == VNode::Kind::D ? 1 + static_cast<Element>(n.index) : 0);
    case VNode::Kind::B:
      while (true) {
        if (auto it = t.b_code.find(n.block); it != t.b_code.end()) {
          if (t.stage_of[it->second] > stage_limit) return std::nullopt;
          return it->second;
        }
        if (t.next_stage > stage_limit) return std::nullopt;
        t.run_stage(w_);
      }
  }
  return std::nullopt;
}

LazyStructure build_TW(const CeSetApprox& w) {
  auto num = std::make_shared<TreeNumbering>(w);
  return LazyStructure(Signature::tree_signature(), [num](std::size_t r, std::span<const Element> a) {
    if (r == kR) {
      if (a[0] == a[1]) return false;
      return v_edge(num->node(a[0]), num->node(a[1]));
    }
    return v_unary(r == kQ ? 'Q' : 'U', num->node(a[0]));
  });
}

std::size_t non_member(const CeSetApprox& e, std::size_t m) {
  const auto& lim = e.limit();
  if (!lim) throw Error("set '" + e.describe() + "' has no known limit; cannot list its complement");
  std::size_t seen = 0;
  for (std::size_t x = 0;; ++x) {
    if (std::binary_search(lim->begin(), lim->end(), x)) continue;
    if (seen++ == m) return x;
  }
}

XConfig XConfig::with_default_schedules(std::string bits, const CeSetApprox& e) {
  for (char ch : bits) {
    if (ch != '0' && ch != '1') throw Error("bit string may only contain 0 and 1");
  }
  auto make = [bits, e](char want) {
    return [bits, e, want](std::size_t k, std::size_t m) {
      if (k >= bits.size()) throw Error("index " + std::to_string(k) + " is beyond the configured bits");
      if (bits[k] == want && m == 0) return CeSetApprox::frozen({});
      return CeSetApprox::frozen({non_member(e, m)});
    };
  };
  XConfig c;
  c.bits = std::move(bits);
  c.plus_schedule = make('1');
  c.minus_schedule = make('0');
  return c;
}

XConfig XConfig::from_json(const Json& j, const CeSetApprox& e) {
  try {
    const auto mode = j.value("mode", std::string("default-schedules"));
    if (mode != "default-schedules") throw ParseError("unsupported schedule mode '" + mode + "'", 0, 0);
    return with_default_schedules(j.at("bits").get<std::string>(), e);
  } catch (const Json::exception& ex) {
    throw ParseError(std::string("bad bit configuration: ") + ex.what(), 0, 0);
  }
}

bool TreeKind::marked(std::size_t copy) const {
  switch (marking) {
    case Marking::Alternating:
      return copy % 2 == 0;
    case Marking::AllT:
      return true;
    case Marking::NoneT:
      return false;
  }
  return false;
}

namespace {

// Emissions made in rounds < rho.
std::uint64_t emitted_before(std::uint64_t rho) {
  const std::uint64_t m = isqrt(rho);
  const std::uint64_t full = (m > 0 ? 2 * (m - 1) * m * (2 * m - 1) / 6 + 3 * m * (m - 1) / 2 + m : 0);
  return full + (rho - m * m) * (m + 1);
}

bool included_in(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

TreeKind ikind(const CeSetApprox& e, std::size_t x) {
  return {family_I(e, x), x, TreeKind::Marking::Alternating, "I" + std::to_string(x)};
}

}  // namespace

struct CStructure::Impl {
  struct Core {
    Core(Mode m, CeSetApprox set) : mode(m), e(std::move(set)) {}
    Mode mode;
    CeSetApprox e;
    std::optional<XConfig> config;
    std::size_t k = 0;
    std::mutex mu;
    std::deque<std::optional<TreeKind>> kinds;
    std::deque<std::shared_ptr<TreeNumbering>> numberings;

    TreeKind make_kind(std::size_t kappa) const {
      auto scheduled = [&](char sign, std::size_t m) {
        const CeSetApprox sched = sign == '+' ? config->plus_schedule(k, m) : config->minus_schedule(k, m);
        const auto& sl = sched.limit();
        const auto& el = e.limit();
        if (!sl || !el) throw Error("schedules and E need known limits");
        const auto mark = sign == '+' ? TreeKind::Marking::AllT : TreeKind::Marking::NoneT;
        const std::string tag = std::string("C") + sign + std::to_string(m);
        if (included_in(*sl, *el)) return TreeKind{e, std::nullopt, mark, tag + ":E"};
        std::size_t x = 0;
        for (std::size_t v : *sl) {
          if (!std::binary_search(el->begin(), el->end(), v)) {
            x = v;
            break;
          }
        }
        return TreeKind{family_I(e, x), x, mark, tag + ":I" + std::to_string(x)};
      };
      switch (mode) {
        case Mode::Base:
          return ikind(e, non_member(e, kappa));
        case Mode::Plus:
        case Mode::Minus:
          if (kappa == 1) {
            return TreeKind{e, std::nullopt,
                            mode == Mode::Plus ? TreeKind::Marking::AllT : TreeKind::Marking::NoneT,
                            mode == Mode::Plus ? "E+" : "E-"};
          }
          return ikind(e, non_member(e, kappa == 0 ? 0 : kappa - 1));
        case Mode::K: {
          if (kappa == 0) return scheduled('+', 0);
          if (kappa == 1) return scheduled('-', 0);
          const std::size_t j = (kappa - 2) / 3, r = (kappa - 2) % 3;
          if (r == 0) return ikind(e, non_member(e, j));
          return scheduled(r == 1 ? '+' : '-', j + 1);
        }
      }
      throw Error("unknown construction mode");
    }

    const TreeKind& kind(std::size_t kappa) {
      std::lock_guard lock(mu);
      if (kinds.size() <= kappa) {
        kinds.resize(kappa + 1);
        numberings.resize(kappa + 1);
      }
      if (!kinds[kappa]) {
        kinds[kappa] = make_kind(kappa);
        numberings[kappa] = std::make_shared<TreeNumbering>(kinds[kappa]->w);
      }
      return *kinds[kappa];
    }

    const TreeNumbering& numbering(std::size_t kappa) {
      kind(kappa);
      std::lock_guard lock(mu);
      return *numberings[kappa];
    }
  };

  std::shared_ptr<Core> core;
  LazyStructure structure;
};

namespace {

LazyStructure make_c_structure(std::shared_ptr<CStructure::Impl::Core> core) {
  return LazyStructure(
      Signature::marked_tree_signature(),
      [core](std::size_t r, std::span<const Element> a) {
        if (r == kR) {
          if (a[0] == a[1]) return false;
          if (a[0] == 0 || a[1] == 0) {
            const Element other = a[0] == 0 ? a[1] : a[0];
            return CStructure::locate(other).second == 0;
          }
          auto [t0, l0] = CStructure::locate(a[0]);
          auto [t1, l1] = CStructure::locate(a[1]);
          if (t0 != t1) return false;
          const auto& num = core->numbering(CStructure::tree_kind_copy(t0).first);
          return v_edge(num.node(l0), num.node(l1));
        }
        if (a[0] == 0) return r == kU;
        auto [t, l] = CStructure::locate(a[0]);
        auto [kappa, copy] = CStructure::tree_kind_copy(t);
        if (r == kT) return l == 0 && core->kind(kappa).marked(copy);
        return v_unary(r == kQ ? 'Q' : 'U', core->numbering(kappa).node(l));
      },
      [](std::size_t) { return Element{0}; });
}

}  // namespace

CStructure::CStructure(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}

namespace {

std::shared_ptr<CStructure::Impl> new_impl(CStructure::Mode mode, const CeSetApprox& e) {
  auto core = std::make_shared<CStructure::Impl::Core>(mode, e);
  auto impl = std::make_shared<CStructure::Impl>(CStructure::Impl{core, make_c_structure(core)});
  return impl;
}

}  // namespace

CStructure CStructure::base(const CeSetApprox& e) { return CStructure(new_impl(Mode::Base, e)); }
CStructure CStructure::plus(const CeSetApprox& e) { return CStructure(new_impl(Mode::Plus, e)); }
CStructure CStructure::minus(const CeSetApprox& e) { return CStructure(new_impl(Mode::Minus, e)); }

CStructure CStructure::with_config(const XConfig& config, const CeSetApprox& e, std::size_t k) {
  if (k >= config.bits.size()) throw Error("index " + std::to_string(k) + " is beyond the configured bits");
  if (!e.limit()) throw Error("E needs a known limit");
  bool has_plus = false, has_minus = false;
  for (std::size_t m = 0; m < 64; ++m) {
    auto p = config.plus_schedule(k, m).limit();
    auto q = config.minus_schedule(k, m).limit();
    if (!p || !q) throw Error("schedules need known limits");
    has_plus = has_plus || included_in(*p, *e.limit());
    has_minus = has_minus || included_in(*q, *e.limit());
  }
  if (has_plus && has_minus) throw Error("inconsistent configuration: index " + std::to_string(k) + " is claimed both ways");
  if (!has_plus && !has_minus) throw Error("inconsistent configuration: index " + std::to_string(k) + " is claimed neither way");
  if ((config.bits[k] == '1') != has_plus) {
    throw Error("inconsistent configuration: schedules disagree with bit " + std::to_string(k));
  }
  auto impl = new_impl(Mode::K, e);
  impl->core->config = config;
  impl->core->k = k;
  return CStructure(std::move(impl));
}

CStructure::Mode CStructure::mode() const { return impl_->core->mode; }
const CeSetApprox& CStructure::e() const { return impl_->core->e; }
const TreeKind& CStructure::kind(std::size_t kappa) const { return impl_->core->kind(kappa); }
const LazyStructure& CStructure::structure() const { return impl_->structure; }
const TreeNumbering& CStructure::numbering(std::size_t kappa) const { return impl_->core->numbering(kappa); }

Element CStructure::global_code(std::size_t tree, Element local) {
  const std::uint64_t rho = static_cast<std::uint64_t>(tree) * tree + local;
  const std::uint64_t code = 1 + emitted_before(rho) + tree;
  if (code > kNoElement - 1) throw Error("code out of range");
  return static_cast<Element>(code);
}

std::pair<std::size_t, Element> CStructure::locate(Element code) {
  if (code == 0) throw Error("the root belongs to no appended tree");
  const std::uint64_t g = code - 1;
  std::uint64_t lo = 0, hi = g + 1;
  while (lo < hi) {
    const std::uint64_t mid = (lo + hi + 1) / 2;
    if (emitted_before(mid) <= g) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  const std::uint64_t t = g - emitted_before(lo);
  return {static_cast<std::size_t>(t), static_cast<Element>(lo - t * t)};
}

std::size_t CStructure::tree_index(std::size_t kind, std::size_t copy) {
  const std::size_t w = kind + copy;
  return w * (w + 1) / 2 + copy;
}

std::pair<std::size_t, std::size_t> CStructure::tree_kind_copy(std::size_t tree) {
  std::uint64_t w = (isqrt(8 * static_cast<std::uint64_t>(tree) + 1) - 1) / 2;
  const std::uint64_t copy = tree - w * (w + 1) / 2;
  return {static_cast<std::size_t>(w - copy), static_cast<std::size_t>(copy)};
}

FiniteStructure tree_complete_truncation(const CStructure& c, std::size_t depth) {
  std::vector<Element> elements{0};
  const std::size_t max_kind = 3 * depth + 6;
  for (std::size_t kappa = 0; kappa <= max_kind; ++kappa) {
    const TreeKind& kind = c.kind(kappa);
    if (kind.extra && *kind.extra >= depth) continue;
    std::vector<std::size_t> copies{0};
    if (kind.marking == TreeKind::Marking::Alternating) copies.push_back(1);
    const TreeNumbering& num = c.numbering(kappa);
    std::vector<Element> locals{0, 1};
    for (std::size_t i = 0; i <= depth; ++i) {
      locals.push_back(*num.code_of(VNode::a(i), depth));
      for (std::size_t j = 0; j <= i; ++j) locals.push_back(*num.code_of(VNode::d(i, j), depth));
      const auto& lim = kind.w.limit();
      std::optional<Element> b;
      if (lim) {
        if (std::binary_search(lim->begin(), lim->end(), i)) b = num.code_of(VNode::b(i), ~std::size_t{0});
      } else {
        b = num.code_of(VNode::b(i), depth);
      }
      if (b) locals.push_back(*b);
    }
    for (std::size_t copy : copies) {
      const std::size_t t = CStructure::tree_index(kappa, copy);
      for (Element l : locals) elements.push_back(CStructure::global_code(t, l));
    }
  }
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  return induced_substructure(c.structure(), elements);
}

namespace {

// Lengths i for which some theta_i chain starts at xh, over elements below limit.
const std::vector<char>& chain_lengths(const FiniteStructure& f, Element xh, std::size_t limit) {
  thread_local std::uint64_t memo_id = 0;
  thread_local std::size_t memo_limit = 0;
  thread_local std::unordered_map<Element, std::vector<char>> memo;
  if (memo_id != f.id() || memo_limit != limit) {
    memo.clear();
    memo_id = f.id();
    memo_limit = limit;
  }
  auto [it, fresh] = memo.try_emplace(xh);
  if (!fresh) return it->second;
  std::vector<char>& out = it->second;
  std::vector<char> used(f.size(), 0);
  std::vector<Element> path;
  auto inner = [&](Element y) { return y < limit && y != xh && !used[y] && !f.holds(kU, {y}); };
  std::function<void(Element)> walk = [&](Element y) {
    used[y] = 1;
    path.push_back(y);
    for (Element z : f.successors(kR, y)) {
      if (z < limit && z != xh && !used[z] && f.holds(kQ, {z})) {
        if (out.size() < path.size()) out.resize(path.size(), 0);
        out[path.size() - 1] = 1;
        break;
      }
    }
    for (Element w : f.successors(kR, y)) {
      if (inner(w)) walk(w);
    }
    path.pop_back();
    used[y] = 0;
  };
  for (Element y : f.successors(kR, xh)) {
    if (inner(y)) walk(y);
  }
  return out;
}

bool xi_refuted(std::size_t i, const FiniteStructure& f, std::span<const Element> tuple, std::size_t limit) {
  const Element x = tuple[0];
  if (x >= limit) return false;
  for (Element xh : f.successors(kR, x)) {
    if (xh >= limit || !f.holds(kU, {xh})) continue;
    bool branch = false;
    for (Element v : f.successors(kR, xh)) {
      if (v < limit && v != x && f.holds(kU, {v})) {
        branch = true;
        break;
      }
    }
    if (!branch) continue;
    const auto& lengths = chain_lengths(f, xh, limit);
    if (i < lengths.size() && lengths[i]) return true;
  }
  return false;
}

}  // namespace

ClausePtr xi_clause(std::size_t i) {
  static std::mutex mu;
  static std::vector<ClausePtr> cache;
  std::lock_guard lock(mu);
  if (i < cache.size() && cache[i]) return cache[i];
  const Signature sig = Signature::marked_tree_signature();
  std::vector<std::string> names{"x", "xh"};
  std::vector<Term> ys;
  for (std::size_t j = 0; j <= i; ++j) {
    names.push_back("y" + std::to_string(j));
    ys.push_back(Term::var(static_cast<std::uint32_t>(j + 2)));
  }
  names.push_back("z");
  names.push_back("v");
  const Term x = Term::var(0), xh = Term::var(1);
  const Term z = Term::var(static_cast<std::uint32_t>(i + 3)), v = Term::var(static_cast<std::uint32_t>(i + 4));
  auto premise = qf::all_of({qf::atom(kR, {x, xh}), theta_node(sig, xh, ys, z)});
  auto branch = qf::all_of({qf::atom(kR, {xh, v}), qf::atom(kU, {v}), qf::negate(qf::equal(v, x))});
  auto body = qf::implies(premise, qf::negate(branch));
  auto clause = std::make_shared<const UniversalClause>(
      QFFormula(sig, std::move(names), body), 1,
      [i](const FiniteStructure& f, std::span<const Element> t, std::size_t limit) { return xi_refuted(i, f, t, limit); });
  if (cache.size() <= i) cache.resize(i + 1);
  cache[i] = clause;
  return clause;
}

namespace {

std::string xi_id(char sign, const CeSetApprox& e) {
  return std::string(sign == '+' ? "xi-plus(" : "xi-minus(") + e.describe() + ")";
}

Disjunct xi_disjunct(char sign, const CeSetApprox& e) {
  if (sign != '+' && sign != '-') throw Error("sign must be + or -");
  const Signature sig = Signature::marked_tree_signature();
  const Term x = Term::var(0), a = Term::constant(0);
  QFNodePtr mark = qf::atom(kT, {x});
  if (sign == '-') mark = qf::negate(mark);
  Disjunct d;
  d.exists = {"x"};
  d.guard = QFFormula(sig, {"x"}, qf::all_of({qf::atom(kR, {a, x}), mark}));
  d.matrix = Pi1Matrix::enumerated([e](std::size_t s) -> ClausePtr {
    if (e.contains(s, s)) return nullptr;
    return xi_clause(s);
  });
  d.generator_id = xi_id(sign, e);
  return d;
}

}  // namespace

Sigma2Sentence xi(char sign, const CeSetApprox& e) {
  return Sigma2Sentence(Signature::marked_tree_signature(), std::string(1, sign), {xi_disjunct(sign, e)},
                        xi_id(sign, e));
}

Disjunct resolve_generator(const std::string& id, const Signature& signature) {
  if (!(signature == Signature::marked_tree_signature())) {
    throw Error("generator '" + id + "' needs the marked tree signature");
  }
  auto open = id.find('(');
  if (open == std::string::npos || id.back() != ')') throw Error("unknown generator '" + id + "'");
  const std::string name = id.substr(0, open);
  const std::string arg = id.substr(open + 1, id.size() - open - 2);
  if (name == "xi-plus") return xi_disjunct('+', CeSetApprox::parse_literal(arg));
  if (name == "xi-minus") return xi_disjunct('-', CeSetApprox::parse_literal(arg));
  throw Error("unknown generator '" + id + "'");
}

Sigma2Sentence sentence_by_name(const std::string& id) {
  Disjunct d = resolve_generator(id, Signature::marked_tree_signature());
  const std::string label = id.rfind("xi-plus", 0) == 0 ? "+" : "-";
  return Sigma2Sentence(Signature::marked_tree_signature(), label, {std::move(d)}, id);
}

}  // namespace infex
