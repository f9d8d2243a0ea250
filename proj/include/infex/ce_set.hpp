#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "infex/json_io.hpp"

namespace infex {

// Monotone stage enumeration W_0 ⊆ W_1 ⊆ ... of a set of naturals.
class CeSetApprox {
 public:
  using EnumFn = std::function<std::vector<std::size_t>(std::size_t stage)>;

  // Every element present from stage 0.
  static CeSetApprox frozen(std::vector<std::size_t> elements);
  // Element e appears at the given stage; repeated elements keep the earliest.
  static CeSetApprox staged(std::vector<std::pair<std::size_t, std::size_t>> stage_element_pairs);
  // Primes <= stage.
  static CeSetApprox primes();
  // enum_at must be monotone in the stage. `limit` is the eventual set when known.
  static CeSetApprox from_function(EnumFn enum_at, std::optional<std::vector<std::size_t>> limit = std::nullopt,
                                   std::string description = "custom");

  // Sorted, duplicate free.
  std::vector<std::size_t> enum_at(std::size_t stage) const;
  bool contains(std::size_t element, std::size_t stage) const;
  // Stage at which `element` is enumerated, searching stages <= max_stage.
  std::optional<std::size_t> first_stage(std::size_t element, std::size_t max_stage) const;
  const std::optional<std::vector<std::size_t>>& limit() const;
  std::string describe() const;

  // {"kind": "frozen", "elements": [...]} or {"kind": "staged", "pairs": [[stage, e], ...]}
  // or {"kind": "primes"}.
  Json to_json() const;
  static CeSetApprox from_json(const Json& j);
  // "{0,2,3}" style set literal, or "primes".
  static CeSetApprox parse_literal(const std::string& text);

 private:
  struct Impl;
  explicit CeSetApprox(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;

  friend CeSetApprox family_I(const CeSetApprox& e, std::size_t x);
};

// E ∪ {x}, with x present from stage 0.
CeSetApprox family_I(const CeSetApprox& e, std::size_t x);

std::string set_literal(const std::vector<std::size_t>& elements);

}  // namespace infex
