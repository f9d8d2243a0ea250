#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace infex {

struct RelationSymbol {
  std::string name;
  std::size_t arity = 1;

  bool operator==(const RelationSymbol&) const = default;
};

// Relational signature: relation symbols with arities plus constant symbols.
// Cheap to copy; the symbol tables are shared.
class Signature {
 public:
  Signature();
  Signature(std::vector<RelationSymbol> relations, std::vector<std::string> constants);

  // L0 = {R/2, Q/1, U/1}
  static Signature tree_signature();
  // L = L0 + {T/1; constant a}
  static Signature marked_tree_signature();

  const std::vector<RelationSymbol>& relations() const { return data_->relations; }
  const std::vector<std::string>& constants() const { return data_->constants; }
  std::size_t relation_count() const { return data_->relations.size(); }
  std::size_t constant_count() const { return data_->constants.size(); }
  std::size_t arity(std::size_t relation) const { return data_->relations.at(relation).arity; }
  const std::string& relation_name(std::size_t relation) const { return data_->relations.at(relation).name; }
  const std::string& constant_name(std::size_t constant) const { return data_->constants.at(constant); }

  std::optional<std::size_t> find_relation(std::string_view name) const;
  std::optional<std::size_t> find_constant(std::string_view name) const;
  // Throws infex::Error for unknown names.
  std::size_t relation(std::string_view name) const;
  std::size_t constant(std::string_view name) const;

  bool operator==(const Signature& other) const;

 private:
  struct Data {
    std::vector<RelationSymbol> relations;
    std::vector<std::string> constants;
  };
  std::shared_ptr<const Data> data_;
};

}  // namespace infex
