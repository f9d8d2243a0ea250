#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "infex/signature.hpp"

namespace infex {

// Elements of every structure are natural numbers (domain omega).
using Element = std::uint32_t;

inline constexpr Element kNoElement = ~Element{0};

// A countable structure on omega given by its atomic diagram. The atom
// function must be pure; tuples of the wrong arity are false.
class LazyStructure {
 public:
  using AtomFn = std::function<bool(std::size_t relation, std::span<const Element> args)>;
  using ConstantFn = std::function<Element(std::size_t constant)>;

  LazyStructure(Signature signature, AtomFn atom, ConstantFn constant = {});

  const Signature& signature() const { return signature_; }
  bool atom(std::size_t relation, std::span<const Element> args) const;
  bool atom(std::size_t relation, std::initializer_list<Element> args) const {
    return atom(relation, std::span<const Element>(args.begin(), args.size()));
  }
  Element constant(std::size_t constant) const;

 private:
  Signature signature_;
  AtomFn atom_;
  ConstantFn constant_;
};

// A finite structure on {0, ..., size-1}. The atom set is closed-world:
// a ground atom is true iff it is listed.
class FiniteStructure {
 public:
  class Builder;

  FiniteStructure();

  const Signature& signature() const { return signature_; }
  std::size_t size() const { return size_; }

  bool holds(std::size_t relation, std::span<const Element> args) const;
  bool holds(std::size_t relation, std::initializer_list<Element> args) const {
    return holds(relation, std::span<const Element>(args.begin(), args.size()));
  }
  std::optional<Element> constant(std::size_t constant) const { return constants_.at(constant); }

  // Flattened, lexicographically sorted tuples of one relation.
  std::span<const Element> tuples(std::size_t relation) const { return relations_.at(relation).tuples; }
  std::size_t tuple_count(std::size_t relation) const;
  std::size_t atom_count() const;

  // Indexes for unary and binary relations.
  std::span<const Element> members(std::size_t relation) const;
  std::span<const Element> successors(std::size_t relation, Element u) const;
  std::span<const Element> predecessors(std::size_t relation, Element u) const;

  bool operator==(const FiniteStructure& other) const;

  // Distinct for every built structure; copies share it. Usable as a memo key.
  std::uint64_t id() const { return id_; }

 private:
  struct RelationData {
    std::size_t arity = 0;
    std::vector<Element> tuples;
    std::vector<char> member;
    std::vector<std::uint32_t> out_offsets, in_offsets;
    std::vector<Element> out_targets, in_targets;
  };

  void build_indexes();

  Signature signature_;
  std::size_t size_ = 0;
  std::vector<RelationData> relations_;
  std::vector<std::optional<Element>> constants_;
  std::uint64_t id_ = 0;
};

class FiniteStructure::Builder {
 public:
  Builder(Signature signature, std::size_t size);
  // Starts from an existing structure, growing its domain to `size`.
  Builder(const FiniteStructure& base, std::size_t size);

  Builder& add(std::size_t relation, std::span<const Element> args);
  Builder& add(std::size_t relation, std::initializer_list<Element> args) {
    return add(relation, std::span<const Element>(args.begin(), args.size()));
  }
  Builder& set_constant(std::size_t constant, Element value);
  FiniteStructure build() &&;

 private:
  FiniteStructure result_;
};

// Seeded permutation of omega that only moves elements inside fixed blocks
// [j(j+1)/2, (j+1)(j+2)/2). Seed 0 is the identity.
class Permutation {
 public:
  explicit Permutation(std::uint64_t seed = 0);

  std::uint64_t seed() const { return seed_; }
  Element forward(Element u) const;
  Element inverse(Element u) const;

 private:
  struct Table;
  std::uint64_t seed_;
  std::shared_ptr<Table> table_;
};

// A copy of a base structure: element u of the copy stands for
// perm.forward(u) of the base.
class Presentation {
 public:
  Presentation(LazyStructure base, Permutation perm = Permutation{});

  const LazyStructure& base() const { return base_; }
  const Permutation& permutation() const { return perm_; }
  const Signature& signature() const { return base_.signature(); }

  bool atom(std::size_t relation, std::span<const Element> args) const;
  Element constant(std::size_t constant) const;
  LazyStructure as_structure() const;

 private:
  LazyStructure base_;
  Permutation perm_;
};

// Induced substructure on {0, ..., n}.
FiniteStructure restrict(const Presentation& p, std::size_t n);
FiniteStructure restrict(const LazyStructure& s, std::size_t n);

// Induced substructure on the listed elements; elements[i] becomes i.
FiniteStructure induced_substructure(const LazyStructure& s, std::span<const Element> elements);

Presentation permuted_copy(const LazyStructure& s, std::uint64_t seed);

// Walks the chain p|0, p|1, ... querying only atoms that involve the newest
// element. Produces exactly restrict(p, n) at every step.
class RestrictionChain {
 public:
  explicit RestrictionChain(Presentation p);

  std::size_t stage() const { return stage_; }
  const FiniteStructure& current() const { return current_; }
  const FiniteStructure& advance();

 private:
  Presentation presentation_;
  std::size_t stage_ = 0;
  FiniteStructure current_;
};

}  // namespace infex
