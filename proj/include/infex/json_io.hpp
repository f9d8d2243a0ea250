#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "infex/structure.hpp"

namespace infex {

using Json = nlohmann::json;

// Parses JSON text; syntax errors become ParseError with line/column.
Json parse_json(std::string_view text);
Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

Json signature_to_json(const Signature& sig);
Signature signature_from_json(const Json& j);

// {"signature": ..., "size": n, "atoms": [["R",[0,2]], ...], "constants": {"a": 0}}
// Atoms are sorted by symbol name, then lexicographically by tuple.
Json structure_to_json(const FiniteStructure& f);
FiniteStructure structure_from_json(const Json& j);

}  // namespace infex
