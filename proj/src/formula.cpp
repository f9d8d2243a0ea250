#include "infex/formula.hpp"

#include <algorithm>
#include <set>

#include "infex/error.hpp"

namespace infex {

namespace qf {

namespace {
QFNodePtr make(QFNode node) { return std::make_shared<const QFNode>(std::move(node)); }
}  // namespace

QFNodePtr top() {
  static const QFNodePtr t = make({QFNode::Kind::True, 0, {}, {}});
  return t;
}

QFNodePtr bottom() {
  static const QFNodePtr f = make({QFNode::Kind::False, 0, {}, {}});
  return f;
}

QFNodePtr atom(std::size_t relation, std::vector<Term> args) {
  return make({QFNode::Kind::Atom, relation, std::move(args), {}});
}

QFNodePtr equal(Term a, Term b) { return make({QFNode::Kind::Equal, 0, {a, b}, {}}); }

QFNodePtr distinct(std::vector<Term> terms) { return make({QFNode::Kind::Distinct, 0, std::move(terms), {}}); }

QFNodePtr negate(QFNodePtr f) { return make({QFNode::Kind::Not, 0, {}, {std::move(f)}}); }

QFNodePtr all_of(std::vector<QFNodePtr> parts) {
  if (parts.empty()) return top();
  if (parts.size() == 1) return parts.front();
  return make({QFNode::Kind::And, 0, {}, std::move(parts)});
}

QFNodePtr any_of(std::vector<QFNodePtr> parts) {
  if (parts.empty()) return bottom();
  if (parts.size() == 1) return parts.front();
  return make({QFNode::Kind::Or, 0, {}, std::move(parts)});
}

QFNodePtr implies(QFNodePtr premise, QFNodePtr conclusion) {
  return make({QFNode::Kind::Implies, 0, {}, {std::move(premise), std::move(conclusion)}});
}

}  // namespace qf

namespace {

void validate(const Signature& sig, std::size_t var_count, const QFNode& n, std::set<std::size_t>& consts,
              std::size_t& count) {
  ++count;
  for (const Term& t : n.terms) {
    if (t.is_var()) {
      if (t.index >= var_count) throw Error("formula uses an undeclared variable");
    } else {
      if (t.index >= sig.constant_count()) throw Error("formula uses an unknown constant");
      consts.insert(t.index);
    }
  }
  switch (n.kind) {
    case QFNode::Kind::Atom:
      if (n.relation >= sig.relation_count()) throw Error("formula uses an unknown relation");
      if (n.terms.size() != sig.arity(n.relation)) {
        throw Error("arity mismatch for '" + sig.relation_name(n.relation) + "'");
      }
      break;
    case QFNode::Kind::Equal:
      if (n.terms.size() != 2) throw Error("equality needs two terms");
      break;
    case QFNode::Kind::Not:
      if (n.children.size() != 1) throw Error("negation needs one operand");
      break;
    case QFNode::Kind::Implies:
      if (n.children.size() != 2) throw Error("implication needs two operands");
      break;
    default:
      break;
  }
  for (const auto& c : n.children) {
    if (!c) throw Error("null subformula");
    validate(sig, var_count, *c, consts, count);
  }
}

}  // namespace

QFFormula::QFFormula(Signature signature, std::vector<std::string> variables, QFNodePtr root)
    : signature_(std::move(signature)), variables_(std::move(variables)), root_(std::move(root)) {
  if (!root_) throw Error("null formula");
  std::set<std::size_t> consts;
  validate(signature_, variables_.size(), *root_, consts, node_count_);
  constants_.assign(consts.begin(), consts.end());
}

namespace {

inline Element term_value(const FiniteStructure& f, const Term& t, std::span<const Element> asg) {
  return t.is_var() ? asg[t.index] : *f.constant(t.index);
}

}  // namespace

bool eval_node(const FiniteStructure& f, const QFNode& n, std::span<const Element> asg) {
  switch (n.kind) {
    case QFNode::Kind::True:
      return true;
    case QFNode::Kind::False:
      return false;
    case QFNode::Kind::Atom: {
      Element buf[8];
      std::vector<Element> big;
      Element* args = buf;
      if (n.terms.size() > 8) {
        big.resize(n.terms.size());
        args = big.data();
      }
      for (std::size_t i = 0; i < n.terms.size(); ++i) args[i] = term_value(f, n.terms[i], asg);
      return f.holds(n.relation, std::span<const Element>(args, n.terms.size()));
    }
    case QFNode::Kind::Equal:
      return term_value(f, n.terms[0], asg) == term_value(f, n.terms[1], asg);
    case QFNode::Kind::Distinct: {
      std::vector<Element> vals;
      vals.reserve(n.terms.size());
      for (const Term& t : n.terms) vals.push_back(term_value(f, t, asg));
      std::sort(vals.begin(), vals.end());
      return std::adjacent_find(vals.begin(), vals.end()) == vals.end();
    }
    case QFNode::Kind::Not:
      return !eval_node(f, *n.children[0], asg);
    case QFNode::Kind::And:
      for (const auto& c : n.children) {
        if (!eval_node(f, *c, asg)) return false;
      }
      return true;
    case QFNode::Kind::Or:
      for (const auto& c : n.children) {
        if (eval_node(f, *c, asg)) return true;
      }
      return false;
    case QFNode::Kind::Implies:
      return !eval_node(f, *n.children[0], asg) || eval_node(f, *n.children[1], asg);
  }
  return false;
}

bool eval_qf(const FiniteStructure& f, const QFFormula& formula, std::span<const Element> asg) {
  if (!(f.signature() == formula.signature())) throw Error("formula and structure signatures differ");
  if (asg.size() < formula.variable_count()) throw Error("unbound term: assignment too short");
  for (std::size_t i = 0; i < formula.variable_count(); ++i) {
    if (asg[i] >= f.size()) throw Error("unbound term: variable '" + formula.variables()[i] + "'");
  }
  for (std::size_t c : formula.constants_used()) {
    if (!f.constant(c)) throw Error("unbound term: constant '" + f.signature().constant_name(c) + "'");
  }
  return eval_node(f, formula.root(), asg);
}

namespace {

std::string term_name(const QFFormula& f, const Term& t) {
  return t.is_var() ? f.variables()[t.index] : f.signature().constant_name(t.index);
}

void print(const QFFormula& f, const QFNode& n, std::string& out) {
  auto join = [&](const char* sep) {
    out += "(";
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      if (i) out += sep;
      print(f, *n.children[i], out);
    }
    out += ")";
  };
  switch (n.kind) {
    case QFNode::Kind::True:
      out += "true";
      break;
    case QFNode::Kind::False:
      out += "false";
      break;
    case QFNode::Kind::Atom:
      out += f.signature().relation_name(n.relation) + "(";
      for (std::size_t i = 0; i < n.terms.size(); ++i) {
        if (i) out += ",";
        out += term_name(f, n.terms[i]);
      }
      out += ")";
      break;
    case QFNode::Kind::Equal:
      out += term_name(f, n.terms[0]) + " = " + term_name(f, n.terms[1]);
      break;
    case QFNode::Kind::Distinct:
      out += "distinct(";
      for (std::size_t i = 0; i < n.terms.size(); ++i) {
        if (i) out += ",";
        out += term_name(f, n.terms[i]);
      }
      out += ")";
      break;
    case QFNode::Kind::Not:
      out += "~";
      print(f, *n.children[0], out);
      break;
    case QFNode::Kind::And:
      join(" & ");
      break;
    case QFNode::Kind::Or:
      join(" | ");
      break;
    case QFNode::Kind::Implies:
      join(" -> ");
      break;
  }
}

Json node_to_json(const QFFormula& f, const QFNode& n) {
  auto terms = [&] {
    Json a = Json::array();
    for (const Term& t : n.terms) a.push_back(term_name(f, t));
    return a;
  };
  auto kids = [&] {
    Json a = Json::array();
    for (const auto& c : n.children) a.push_back(node_to_json(f, *c));
    return a;
  };
  switch (n.kind) {
    case QFNode::Kind::True:
      return true;
    case QFNode::Kind::False:
      return false;
    case QFNode::Kind::Atom:
      return Json{{"atom", f.signature().relation_name(n.relation)}, {"args", terms()}};
    case QFNode::Kind::Equal:
      return Json{{"eq", terms()}};
    case QFNode::Kind::Distinct:
      return Json{{"distinct", terms()}};
    case QFNode::Kind::Not:
      return Json{{"not", node_to_json(f, *n.children[0])}};
    case QFNode::Kind::And:
      return Json{{"and", kids()}};
    case QFNode::Kind::Or:
      return Json{{"or", kids()}};
    case QFNode::Kind::Implies:
      return Json{{"implies", kids()}};
  }
  return nullptr;
}

class NodeReader {
 public:
  NodeReader(const Signature& sig, const std::vector<std::string>& vars) : sig_(sig), vars_(vars) {}

  QFNodePtr read(const Json& j) const {
    if (j.is_boolean()) return j.get<bool>() ? qf::top() : qf::bottom();
    if (!j.is_object() || j.size() == 0) throw ParseError("formula node must be an object or boolean", 0, 0);
    if (j.contains("atom")) {
      std::vector<Term> args;
      for (const auto& a : j.at("args")) args.push_back(term(a));
      return qf::atom(sig_.relation(j.at("atom").get<std::string>()), std::move(args));
    }
    if (j.contains("eq")) {
      const auto& a = j.at("eq");
      if (a.size() != 2) throw ParseError("'eq' needs two terms", 0, 0);
      return qf::equal(term(a[0]), term(a[1]));
    }
    if (j.contains("distinct")) {
      std::vector<Term> ts;
      for (const auto& a : j.at("distinct")) ts.push_back(term(a));
      return qf::distinct(std::move(ts));
    }
    if (j.contains("not")) return qf::negate(read(j.at("not")));
    if (j.contains("and")) return qf::all_of(list(j.at("and")));
    if (j.contains("or")) return qf::any_of(list(j.at("or")));
    if (j.contains("implies")) {
      auto parts = list(j.at("implies"));
      if (parts.size() != 2) throw ParseError("'implies' needs two operands", 0, 0);
      return qf::implies(parts[0], parts[1]);
    }
    throw ParseError("unknown formula node " + j.dump(), 0, 0);
  }

 private:
  std::vector<QFNodePtr> list(const Json& j) const {
    std::vector<QFNodePtr> out;
    for (const auto& c : j) out.push_back(read(c));
    return out;
  }

  Term term(const Json& j) const {
    const auto name = j.get<std::string>();
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i] == name) return Term::var(static_cast<std::uint32_t>(i));
    }
    if (auto c = sig_.find_constant(name)) return Term::constant(static_cast<std::uint32_t>(*c));
    throw ParseError("unknown term '" + name + "'", 0, 0);
  }

  const Signature& sig_;
  const std::vector<std::string>& vars_;
};

}  // namespace

std::string to_string(const QFFormula& formula) {
  std::string out;
  print(formula, formula.root(), out);
  return out;
}

Json qf_to_json(const QFFormula& formula) { return node_to_json(formula, formula.root()); }

QFFormula qf_from_json(const Signature& signature, std::vector<std::string> variables, const Json& j) {
  try {
    auto root = NodeReader(signature, variables).read(j);
    return QFFormula(signature, std::move(variables), std::move(root));
  } catch (const ParseError&) {
    throw;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad formula: ") + e.what(), 0, 0);
  } catch (const Error& e) {
    throw ParseError(e.what(), 0, 0);
  }
}

}  // namespace infex
