#include "infex/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "infex/error.hpp"

namespace infex {

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("invalid JSON", line, column);
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

Json signature_to_json(const Signature& sig) {
  Json rels = Json::array();
  for (const auto& r : sig.relations()) rels.push_back(Json::array({r.name, r.arity}));
  return Json{{"relations", rels}, {"constants", sig.constants()}};
}

Signature signature_from_json(const Json& j) {
  try {
    std::vector<RelationSymbol> rels;
    for (const auto& r : j.at("relations")) rels.push_back({r.at(0).get<std::string>(), r.at(1).get<std::size_t>()});
    std::vector<std::string> consts;
    if (j.contains("constants")) consts = j.at("constants").get<std::vector<std::string>>();
    return Signature(std::move(rels), std::move(consts));
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad signature: ") + e.what(), 0, 0);
  }
}

Json structure_to_json(const FiniteStructure& f) {
  const auto& sig = f.signature();
  std::vector<std::size_t> by_name(sig.relation_count());
  std::iota(by_name.begin(), by_name.end(), 0);
  std::sort(by_name.begin(), by_name.end(),
            [&](std::size_t a, std::size_t b) { return sig.relation_name(a) < sig.relation_name(b); });
  Json atoms = Json::array();
  for (std::size_t r : by_name) {
    const std::size_t k = sig.arity(r);
    auto t = f.tuples(r);
    for (std::size_t i = 0; i < t.size(); i += k) {
      atoms.push_back(Json::array({sig.relation_name(r), std::vector<Element>(t.begin() + i, t.begin() + i + k)}));
    }
  }
  Json consts = Json::object();
  for (std::size_t c = 0; c < sig.constant_count(); ++c) {
    if (auto v = f.constant(c)) consts[sig.constant_name(c)] = *v;
  }
  return Json{{"signature", signature_to_json(sig)}, {"size", f.size()}, {"atoms", atoms}, {"constants", consts}};
}

FiniteStructure structure_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("signature")) throw Error("structure JSON needs a 'signature' field");
  Signature sig = signature_from_json(j.at("signature"));
  try {
    FiniteStructure::Builder b(sig, j.at("size").get<std::size_t>());
    for (const auto& a : j.at("atoms")) {
      auto args = a.at(1).get<std::vector<Element>>();
      b.add(sig.relation(a.at(0).get<std::string>()), args);
    }
    if (j.contains("constants")) {
      for (const auto& [name, value] : j.at("constants").items()) b.set_constant(sig.constant(name), value.get<Element>());
    }
    return std::move(b).build();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad structure document: ") + e.what(), 0, 0);
  }
}

}  // namespace infex
