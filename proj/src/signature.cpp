#include "infex/signature.hpp"

#include <set>

#include "infex/error.hpp"

namespace infex {

Signature::Signature() : data_(std::make_shared<Data>()) {}

Signature::Signature(std::vector<RelationSymbol> relations, std::vector<std::string> constants) {
  std::set<std::string> seen;
  for (const auto& r : relations) {
    if (r.arity == 0) throw Error("relation '" + r.name + "' must have arity >= 1");
    if (r.name.empty()) throw Error("empty relation name");
    if (!seen.insert(r.name).second) throw Error("duplicate symbol name '" + r.name + "'");
  }
  for (const auto& c : constants) {
    if (c.empty()) throw Error("empty constant name");
    if (!seen.insert(c).second) throw Error("duplicate symbol name '" + c + "'");
  }
  data_ = std::make_shared<Data>(Data{std::move(relations), std::move(constants)});
}

Signature Signature::tree_signature() {
  static const Signature sig({{"R", 2}, {"Q", 1}, {"U", 1}}, {});
  return sig;
}

Signature Signature::marked_tree_signature() {
  static const Signature sig({{"R", 2}, {"Q", 1}, {"U", 1}, {"T", 1}}, {"a"});
  return sig;
}

std::optional<std::size_t> Signature::find_relation(std::string_view name) const {
  for (std::size_t i = 0; i < data_->relations.size(); ++i) {
    if (data_->relations[i].name == name) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> Signature::find_constant(std::string_view name) const {
  for (std::size_t i = 0; i < data_->constants.size(); ++i) {
    if (data_->constants[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t Signature::relation(std::string_view name) const {
  if (auto r = find_relation(name)) return *r;
  throw Error("unknown relation symbol '" + std::string(name) + "'");
}

std::size_t Signature::constant(std::string_view name) const {
  if (auto c = find_constant(name)) return *c;
  throw Error("unknown constant symbol '" + std::string(name) + "'");
}

bool Signature::operator==(const Signature& other) const {
  if (data_ == other.data_) return true;
  return data_->relations == other.data_->relations && data_->constants == other.data_->constants;
}

}  // namespace infex
