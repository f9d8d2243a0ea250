#include "infex/structure.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <random>

#include "infex/error.hpp"

namespace infex {

LazyStructure::LazyStructure(Signature signature, AtomFn atom, ConstantFn constant)
    : signature_(std::move(signature)), atom_(std::move(atom)), constant_(std::move(constant)) {
  if (!atom_) throw Error("lazy structure needs an atom function");
  if (signature_.constant_count() > 0 && !constant_) throw Error("lazy structure needs a constant function");
}

bool LazyStructure::atom(std::size_t relation, std::span<const Element> args) const {
  if (relation >= signature_.relation_count()) return false;
  if (args.size() != signature_.arity(relation)) return false;
  return atom_(relation, args);
}

Element LazyStructure::constant(std::size_t constant) const {
  if (constant >= signature_.constant_count()) throw Error("constant index out of range");
  return constant_(constant);
}

// ---------------------------------------------------------------------------

FiniteStructure::FiniteStructure() = default;

std::size_t FiniteStructure::tuple_count(std::size_t relation) const {
  const auto& r = relations_.at(relation);
  return r.tuples.size() / r.arity;
}

std::size_t FiniteStructure::atom_count() const {
  std::size_t total = 0;
  for (std::size_t i = 0; i < relations_.size(); ++i) total += tuple_count(i);
  return total;
}

bool FiniteStructure::holds(std::size_t relation, std::span<const Element> args) const {
  if (relation >= relations_.size()) return false;
  const auto& r = relations_[relation];
  if (args.size() != r.arity) return false;
  for (Element e : args) {
    if (e >= size_) return false;
  }
  if (r.arity == 1) return r.member[args[0]] != 0;
  if (r.arity == 2) {
    auto out = successors(relation, args[0]);
    return std::binary_search(out.begin(), out.end(), args[1]);
  }
  const std::size_t k = r.arity;
  std::size_t lo = 0, hi = r.tuples.size() / k;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    auto t = std::span<const Element>(r.tuples).subspan(mid * k, k);
    if (std::lexicographical_compare(t.begin(), t.end(), args.begin(), args.end())) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo == r.tuples.size() / k) return false;
  auto t = std::span<const Element>(r.tuples).subspan(lo * k, k);
  return std::equal(t.begin(), t.end(), args.begin());
}

std::span<const Element> FiniteStructure::members(std::size_t relation) const {
  const auto& r = relations_.at(relation);
  if (r.arity != 1) throw Error("members() needs a unary relation");
  return r.tuples;
}

std::span<const Element> FiniteStructure::successors(std::size_t relation, Element u) const {
  const auto& r = relations_.at(relation);
  if (r.arity != 2) throw Error("successors() needs a binary relation");
  if (u >= size_) return {};
  return std::span<const Element>(r.out_targets).subspan(r.out_offsets[u], r.out_offsets[u + 1] - r.out_offsets[u]);
}

std::span<const Element> FiniteStructure::predecessors(std::size_t relation, Element u) const {
  const auto& r = relations_.at(relation);
  if (r.arity != 2) throw Error("predecessors() needs a binary relation");
  if (u >= size_) return {};
  return std::span<const Element>(r.in_targets).subspan(r.in_offsets[u], r.in_offsets[u + 1] - r.in_offsets[u]);
}

bool FiniteStructure::operator==(const FiniteStructure& other) const {
  if (!(signature_ == other.signature_) || size_ != other.size_ || constants_ != other.constants_) return false;
  for (std::size_t i = 0; i < relations_.size(); ++i) {
    if (relations_[i].tuples != other.relations_[i].tuples) return false;
  }
  return true;
}

void FiniteStructure::build_indexes() {
  for (auto& r : relations_) {
    const std::size_t k = r.arity;
    const std::size_t count = r.tuples.size() / k;
    // sort + dedup flattened tuples
    std::vector<std::uint32_t> order(count);
    for (std::size_t i = 0; i < count; ++i) order[i] = static_cast<std::uint32_t>(i);
    auto tuple_at = [&](std::uint32_t i) { return std::span<const Element>(r.tuples).subspan(i * k, k); };
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      auto ta = tuple_at(a), tb = tuple_at(b);
      return std::lexicographical_compare(ta.begin(), ta.end(), tb.begin(), tb.end());
    });
    std::vector<Element> sorted;
    sorted.reserve(r.tuples.size());
    for (std::size_t i = 0; i < count; ++i) {
      auto t = tuple_at(order[i]);
      if (i > 0) {
        auto prev = tuple_at(order[i - 1]);
        if (std::equal(t.begin(), t.end(), prev.begin())) continue;
      }
      sorted.insert(sorted.end(), t.begin(), t.end());
    }
    r.tuples = std::move(sorted);

    if (k == 1) {
      r.member.assign(size_, 0);
      for (Element e : r.tuples) r.member[e] = 1;
    } else if (k == 2) {
      const std::size_t m = r.tuples.size() / 2;
      r.out_offsets.assign(size_ + 1, 0);
      r.in_offsets.assign(size_ + 1, 0);
      for (std::size_t i = 0; i < m; ++i) {
        ++r.out_offsets[r.tuples[2 * i] + 1];
        ++r.in_offsets[r.tuples[2 * i + 1] + 1];
      }
      for (std::size_t u = 0; u < size_; ++u) {
        r.out_offsets[u + 1] += r.out_offsets[u];
        r.in_offsets[u + 1] += r.in_offsets[u];
      }
      r.out_targets.resize(m);
      r.in_targets.resize(m);
      std::vector<std::uint32_t> out_fill(r.out_offsets.begin(), r.out_offsets.end() - 1);
      std::vector<std::uint32_t> in_fill(r.in_offsets.begin(), r.in_offsets.end() - 1);
      // tuples are sorted, so both target lists come out sorted
      for (std::size_t i = 0; i < m; ++i) {
        Element a = r.tuples[2 * i], b = r.tuples[2 * i + 1];
        r.out_targets[out_fill[a]++] = b;
        r.in_targets[in_fill[b]++] = a;
      }
    }
  }
}

FiniteStructure::Builder::Builder(Signature signature, std::size_t size) {
  result_.signature_ = std::move(signature);
  result_.size_ = size;
  result_.relations_.resize(result_.signature_.relation_count());
  for (std::size_t i = 0; i < result_.relations_.size(); ++i) {
    result_.relations_[i].arity = result_.signature_.arity(i);
  }
  result_.constants_.assign(result_.signature_.constant_count(), std::nullopt);
}

FiniteStructure::Builder::Builder(const FiniteStructure& base, std::size_t size) : Builder(base.signature(), size) {
  if (size < base.size()) throw Error("builder cannot shrink a structure");
  for (std::size_t i = 0; i < result_.relations_.size(); ++i) {
    result_.relations_[i].tuples = base.relations_[i].tuples;
  }
  result_.constants_ = base.constants_;
}

FiniteStructure::Builder& FiniteStructure::Builder::add(std::size_t relation, std::span<const Element> args) {
  if (relation >= result_.relations_.size()) throw Error("relation index out of range");
  auto& r = result_.relations_[relation];
  if (args.size() != r.arity) throw Error("arity mismatch for '" + result_.signature_.relation_name(relation) + "'");
  for (Element e : args) {
    if (e >= result_.size_) throw Error("atom mentions element outside the domain");
  }
  r.tuples.insert(r.tuples.end(), args.begin(), args.end());
  return *this;
}

FiniteStructure::Builder& FiniteStructure::Builder::set_constant(std::size_t constant, Element value) {
  if (constant >= result_.constants_.size()) throw Error("constant index out of range");
  if (value >= result_.size_) throw Error("constant value outside the domain");
  result_.constants_[constant] = value;
  return *this;
}

FiniteStructure FiniteStructure::Builder::build() && {
  static std::atomic<std::uint64_t> next_id{1};
  result_.build_indexes();
  result_.id_ = next_id++;
  return std::move(result_);
}

// ---------------------------------------------------------------------------

namespace {

std::size_t block_of(Element u) {
  auto j = static_cast<std::size_t>((std::sqrt(8.0 * static_cast<double>(u) + 1.0) - 1.0) / 2.0);
  while ((j + 1) * (j + 2) / 2 <= u) ++j;
  while (j * (j + 1) / 2 > u) --j;
  return j;
}

}  // namespace

struct Permutation::Table {
  std::mutex mutex;
  std::vector<Element> forward, inverse;
  std::size_t blocks = 0;

  void extend_to(std::uint64_t seed, std::size_t block) {
    while (blocks <= block) {
      const std::size_t start = blocks * (blocks + 1) / 2;
      const std::size_t len = blocks + 1;
      std::vector<Element> image(len);
      for (std::size_t i = 0; i < len; ++i) image[i] = static_cast<Element>(start + i);
      std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL ^ (static_cast<std::uint64_t>(blocks) + 0x632BE59BD9B4E019ULL));
      for (std::size_t i = len; i > 1; --i) {
        std::swap(image[i - 1], image[rng() % i]);
      }
      forward.insert(forward.end(), image.begin(), image.end());
      inverse.resize(start + len);
      for (std::size_t i = 0; i < len; ++i) inverse[image[i]] = static_cast<Element>(start + i);
      ++blocks;
    }
  }
};

Permutation::Permutation(std::uint64_t seed) : seed_(seed) {
  if (seed_ != 0) table_ = std::make_shared<Table>();
}

Element Permutation::forward(Element u) const {
  if (!table_) return u;
  std::lock_guard lock(table_->mutex);
  if (u >= table_->forward.size()) table_->extend_to(seed_, block_of(u));
  return table_->forward[u];
}

Element Permutation::inverse(Element u) const {
  if (!table_) return u;
  std::lock_guard lock(table_->mutex);
  if (u >= table_->inverse.size()) table_->extend_to(seed_, block_of(u));
  return table_->inverse[u];
}

Presentation::Presentation(LazyStructure base, Permutation perm) : base_(std::move(base)), perm_(std::move(perm)) {}

bool Presentation::atom(std::size_t relation, std::span<const Element> args) const {
  if (perm_.seed() == 0) return base_.atom(relation, args);
  Element buf[8];
  std::vector<Element> big;
  Element* mapped = buf;
  if (args.size() > 8) {
    big.resize(args.size());
    mapped = big.data();
  }
  for (std::size_t i = 0; i < args.size(); ++i) mapped[i] = perm_.forward(args[i]);
  return base_.atom(relation, std::span<const Element>(mapped, args.size()));
}

Element Presentation::constant(std::size_t constant) const { return perm_.inverse(base_.constant(constant)); }

LazyStructure Presentation::as_structure() const {
  auto self = std::make_shared<Presentation>(*this);
  LazyStructure::ConstantFn cf;
  if (signature().constant_count() > 0) cf = [self](std::size_t c) { return self->constant(c); };
  return LazyStructure(signature(), [self](std::size_t r, std::span<const Element> a) { return self->atom(r, a); },
                       std::move(cf));
}

Presentation permuted_copy(const LazyStructure& s, std::uint64_t seed) { return Presentation(s, Permutation(seed)); }

namespace {

template <typename AtomQuery>
void add_all_tuples(FiniteStructure::Builder& b, std::size_t relation, std::size_t arity, std::size_t n,
                    const AtomQuery& query) {
  std::vector<Element> t(arity, 0);
  while (true) {
    if (query(relation, std::span<const Element>(t))) b.add(relation, t);
    std::size_t pos = arity;
    while (pos > 0) {
      --pos;
      if (++t[pos] <= n) break;
      t[pos] = 0;
      if (pos == 0) return;
    }
  }
}

// All tuples over {0..m} containing m: the first occurrence of m sits at
// `first`, earlier slots range over {0..m-1}, later slots over {0..m}.
template <typename AtomQuery>
void add_tuples_with_newest(FiniteStructure::Builder& b, std::size_t relation, std::size_t arity, Element m,
                            const AtomQuery& query) {
  std::vector<Element> t(arity);
  for (std::size_t first = 0; first < arity; ++first) {
    if (first > 0 && m == 0) break;
    std::vector<Element> limit(arity);
    for (std::size_t i = 0; i < arity; ++i) limit[i] = i < first ? m - 1 : m;
    std::fill(t.begin(), t.end(), 0);
    t[first] = m;
    while (true) {
      if (query(relation, std::span<const Element>(t))) b.add(relation, t);
      std::size_t pos = arity;
      bool done = true;
      while (pos > 0) {
        --pos;
        if (pos == first) continue;
        if (t[pos] < limit[pos]) {
          ++t[pos];
          done = false;
          break;
        }
        t[pos] = 0;
      }
      if (done) break;
    }
  }
}

template <typename Source>
FiniteStructure restrict_impl(const Source& s, std::size_t n) {
  const auto& sig = s.signature();
  FiniteStructure::Builder b(sig, n + 1);
  auto query = [&](std::size_t r, std::span<const Element> a) { return s.atom(r, a); };
  for (std::size_t r = 0; r < sig.relation_count(); ++r) add_all_tuples(b, r, sig.arity(r), n, query);
  for (std::size_t c = 0; c < sig.constant_count(); ++c) {
    Element v = s.constant(c);
    if (v <= n) b.set_constant(c, v);
  }
  return std::move(b).build();
}

}  // namespace

FiniteStructure restrict(const Presentation& p, std::size_t n) { return restrict_impl(p, n); }
FiniteStructure restrict(const LazyStructure& s, std::size_t n) { return restrict_impl(s, n); }

FiniteStructure induced_substructure(const LazyStructure& s, std::span<const Element> elements) {
  const auto& sig = s.signature();
  if (elements.empty()) throw Error("induced substructure needs at least one element");
  FiniteStructure::Builder b(sig, elements.size());
  const std::size_t n = elements.size() - 1;
  std::vector<Element> mapped;
  auto query = [&](std::size_t r, std::span<const Element> a) {
    mapped.resize(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) mapped[i] = elements[a[i]];
    return s.atom(r, mapped);
  };
  for (std::size_t r = 0; r < sig.relation_count(); ++r) add_all_tuples(b, r, sig.arity(r), n, query);
  for (std::size_t c = 0; c < sig.constant_count(); ++c) {
    Element v = s.constant(c);
    auto it = std::find(elements.begin(), elements.end(), v);
    if (it != elements.end()) b.set_constant(c, static_cast<Element>(it - elements.begin()));
  }
  return std::move(b).build();
}

RestrictionChain::RestrictionChain(Presentation p) : presentation_(std::move(p)) {
  current_ = restrict(presentation_, 0);
}

const FiniteStructure& RestrictionChain::advance() {
  const Element m = static_cast<Element>(stage_ + 1);
  const auto& sig = presentation_.signature();
  FiniteStructure::Builder b(current_, m + 1);
  auto query = [&](std::size_t r, std::span<const Element> a) { return presentation_.atom(r, a); };
  for (std::size_t r = 0; r < sig.relation_count(); ++r) add_tuples_with_newest(b, r, sig.arity(r), m, query);
  for (std::size_t c = 0; c < sig.constant_count(); ++c) {
    if (current_.constant(c)) continue;
    Element v = presentation_.constant(c);
    if (v == m) b.set_constant(c, v);
  }
  current_ = std::move(b).build();
  ++stage_;
  return current_;
}

}  // namespace infex
