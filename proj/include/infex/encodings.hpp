#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "infex/ce_set.hpp"
#include "infex/formula.hpp"
#include "infex/sigma2.hpp"
#include "infex/structure.hpp"

namespace infex {

// Abstract nodes of the chain tree: root r, sink c, and per block i the
// nodes a_i, b_i and d_{i,0..i}.
struct VNode {
  enum class Kind : std::uint8_t { Root, Sink, A, B, D };
  Kind kind = Kind::Root;
  std::size_t block = 0;
  std::size_t index = 0;  // j for d_{i,j}

  static VNode root() { return {Kind::Root, 0, 0}; }
  static VNode sink() { return {Kind::Sink, 0, 0}; }
  static VNode a(std::size_t i) { return {Kind::A, i, 0}; }
  static VNode b(std::size_t i) { return {Kind::B, i, 0}; }
  static VNode d(std::size_t i, std::size_t j) { return {Kind::D, i, j}; }
  bool operator==(const VNode&) const = default;
};

std::string to_string(const VNode& n);

// Canonical numbering: r=0, c=1, block i occupies [base(i), base(i)+i+2]
// with a_i=base(i), b_i=base(i)+1, d_{i,j}=base(i)+2+j.
namespace vlayout {
Element base(std::size_t block);
Element code_of(const VNode& n);
VNode node_of(Element code);
}  // namespace vlayout

// Atoms of the chain tree on abstract nodes.
bool v_edge(const VNode& u, const VNode& v);
bool v_unary(char relation, const VNode& u);  // 'U' or 'Q'

LazyStructure build_V();

// theta_i over variables x, y0..yi, z.
QFFormula theta(std::size_t i);
// The same conjunction over an arbitrary signature containing R, Q, U.
QFNodePtr theta_node(const Signature& sig, Term x, const std::vector<Term>& ys, Term z);

// Dovetail numbering of T[W]: 0=r, 1=c; stage s emits a_s, d_{s,0..s}, then
// b_i for each i in W_s not yet emitted, ascending.
class TreeNumbering {
 public:
  explicit TreeNumbering(CeSetApprox w);

  const CeSetApprox& set() const { return w_; }
  VNode node(Element code) const;
  // Code of n if it is emitted by stage `stage_limit`.
  std::optional<Element> code_of(const VNode& n, std::size_t stage_limit) const;
  // Stage at which the given code is emitted.
  std::size_t stage_of(Element code) const;

 private:
  struct Table;
  CeSetApprox w_;
  std::shared_ptr<Table> table_;
};

LazyStructure build_TW(const CeSetApprox& w);

// Bit string standing in for X plus the schedules (k, m) -> set whose
// eventual inclusion in E certifies k in X (plus) or k not in X (minus).
struct XConfig {
  using Schedule = std::function<CeSetApprox(std::size_t k, std::size_t m)>;
  std::string bits;
  Schedule plus_schedule;
  Schedule minus_schedule;

  // Default schedules: the matching sign at m=0 enumerates the empty set,
  // every other (sign, m) enumerates {e_m}, the m-th element outside E.
  static XConfig with_default_schedules(std::string bits, const CeSetApprox& e);
  static XConfig from_json(const Json& j, const CeSetApprox& e);
};

// m-th natural outside the eventual E.
std::size_t non_member(const CeSetApprox& e, std::size_t m);

// One kind of appended tree: T[W] with a T-marking rule over its copies.
struct TreeKind {
  enum class Marking : std::uint8_t { Alternating, AllT, NoneT };
  CeSetApprox w;
  // The extra element x when W = E ∪ {x}; nullopt when W = E.
  std::optional<std::size_t> extra;
  Marking marking = Marking::Alternating;
  std::string description;

  bool marked(std::size_t copy) const;
};

// Root a = r^k (code 0) with infinitely many appended trees. Tree t is the
// copy (kind, copy) given by Cantor unpairing; it starts at round t*t and
// each round emits one more node of every started tree, in tree order.
class CStructure {
 public:
  enum class Mode : std::uint8_t { Base, Plus, Minus, K };

  static CStructure base(const CeSetApprox& e);
  static CStructure plus(const CeSetApprox& e);
  static CStructure minus(const CeSetApprox& e);
  static CStructure with_config(const XConfig& config, const CeSetApprox& e, std::size_t k);

  Mode mode() const;
  const CeSetApprox& e() const;
  const TreeKind& kind(std::size_t kappa) const;
  const LazyStructure& structure() const;

  // Global code of local node `local` of tree t.
  static Element global_code(std::size_t tree, Element local);
  // (tree, local) for a non-root code.
  static std::pair<std::size_t, Element> locate(Element code);
  static std::size_t tree_index(std::size_t kind, std::size_t copy);
  static std::pair<std::size_t, std::size_t> tree_kind_copy(std::size_t tree);

  const TreeNumbering& numbering(std::size_t kappa) const;

  struct Impl;

 private:
  explicit CStructure(std::shared_ptr<Impl> impl);
  std::shared_ptr<Impl> impl_;
};

// Finite substructure containing the root and, for every kind whose type
// index is below `depth`, its first T-copy and first non-T copy with r, c,
// blocks 0..depth and the b-nodes of those blocks.
FiniteStructure tree_complete_truncation(const CStructure& c, std::size_t depth);

// exists x [R(a,x) & T(x) (or ~T(x)) & clauses], with clause s present at
// stage s iff s is not yet in E.
Sigma2Sentence xi(char sign, const CeSetApprox& e);
// Clause body for index i over variables x, xh, y0..yi, z, v.
ClausePtr xi_clause(std::size_t i);

// Resolves "xi-plus(E)" / "xi-minus(E)".
Disjunct resolve_generator(const std::string& id, const Signature& signature);
// "xi-plus({0,2,3})" etc. as a whole sentence.
Sigma2Sentence sentence_by_name(const std::string& id);

}  // namespace infex
