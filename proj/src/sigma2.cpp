#include "infex/sigma2.hpp"

#include <algorithm>
#include <cstdint>

#include "infex/error.hpp"

namespace infex {

namespace {

SearchPlan refutation_plan_for(const QFFormula& body, std::size_t free_count) {
  ConstraintSet cs;
  collect_forced(body.root(), false, cs);
  return SearchPlan(std::move(cs), body.variable_count(), free_count);
}

}  // namespace

UniversalClause::UniversalClause(QFFormula body, std::size_t free_count, Refuter refuter)
    : body_(std::move(body)),
      free_count_(free_count),
      plan_(refutation_plan_for(body_, free_count)),
      refuter_(std::move(refuter)) {}

std::string UniversalClause::to_string() const {
  std::string out = "forall ";
  for (std::size_t i = free_count_; i < body_.variable_count(); ++i) {
    if (i > free_count_) out += ",";
    out += body_.variables()[i];
  }
  if (bound_count() == 0) out += "()";
  out += ". " + infex::to_string(body_);
  return out;
}

Pi1Matrix Pi1Matrix::enumerated(ClauseAt clause_at) {
  if (!clause_at) throw Error("enumerated matrix needs a clause function");
  Pi1Matrix m;
  m.clause_at_ = std::move(clause_at);
  return m;
}

Pi1Matrix Pi1Matrix::finite(std::vector<ClausePtr> clauses) {
  Pi1Matrix m;
  m.finite_ = std::move(clauses);
  return m;
}

Pi1Matrix Pi1Matrix::staged(StagedClauses clauses) {
  if (!clauses) throw Error("staged matrix needs a clause function");
  Pi1Matrix m;
  m.staged_ = std::move(clauses);
  return m;
}

ClausePtr Pi1Matrix::clause_at(std::size_t index) const {
  if (finite_) return index < finite_->size() ? (*finite_)[index] : nullptr;
  if (clause_at_) return clause_at_(index);
  throw Error("clause_at is undefined for staged matrices");
}

std::vector<std::pair<std::size_t, ClausePtr>> Pi1Matrix::visible(std::size_t stage_bound) const {
  std::vector<std::pair<std::size_t, ClausePtr>> out;
  if (staged_) {
    auto list = staged_(stage_bound);
    out.reserve(list.size());
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (list[i]) out.emplace_back(i, std::move(list[i]));
    }
    return out;
  }
  if (finite_) {
    const std::size_t n = std::min(finite_->size(), stage_bound == SIZE_MAX ? SIZE_MAX : stage_bound + 1);
    for (std::size_t i = 0; i < n; ++i) {
      if ((*finite_)[i]) out.emplace_back(i, (*finite_)[i]);
    }
    return out;
  }
  for (std::size_t i = 0; i <= stage_bound; ++i) {
    if (auto c = clause_at_(i)) out.emplace_back(i, std::move(c));
  }
  return out;
}

Sigma2Sentence::Sigma2Sentence(Signature signature, std::string label, std::vector<Disjunct> disjuncts,
                               std::string generator_id)
    : signature_(std::move(signature)),
      label_(std::move(label)),
      disjuncts_(std::move(disjuncts)),
      generator_id_(std::move(generator_id)) {
  for (const auto& d : disjuncts_) {
    if (d.guard) {
      if (!(d.guard->signature() == signature_)) throw Error("guard signature differs from the sentence's");
      if (d.guard->variable_count() != d.exists.size()) throw Error("guard must use exactly the existential block");
    }
    if (auto& fin = d.matrix.finite_clauses()) {
      for (const auto& c : *fin) {
        if (c && c->free_count() != d.exists.size()) {
          throw Error("clause free variables do not match the existential block");
        }
      }
    }
  }
}

bool tuple_less(std::span<const Element> a, std::span<const Element> b) {
  const Element ma = a.empty() ? 0 : *std::max_element(a.begin(), a.end());
  const Element mb = b.empty() ? 0 : *std::max_element(b.begin(), b.end());
  if (a.empty() != b.empty()) return a.empty();
  if (ma != mb) return ma < mb;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool candidate_less(const Candidate& a, const Candidate& b) {
  if (tuple_less(a.tuple, b.tuple)) return true;
  if (tuple_less(b.tuple, a.tuple)) return false;
  if (a.sentence != b.sentence) return a.sentence < b.sentence;
  return a.disjunct < b.disjunct;
}

bool clause_refuted(const FiniteStructure& f, const UniversalClause& clause, std::span<const Element> tuple,
                    std::size_t domain_limit, std::vector<Element>* evidence) {
  if (tuple.size() != clause.free_count()) throw Error("witness tuple has the wrong length");
  if (!evidence && clause.refuter()) return clause.refuter()(f, tuple, domain_limit);
  std::vector<Element> buf(clause.body().variable_count(), 0);
  std::copy(tuple.begin(), tuple.end(), buf.begin());
  const QFNode& body = clause.body().root();
  const std::size_t k = clause.free_count();
  bool found = false;
  const bool stopped =
      AssignmentSearch::run(f, clause.refutation_plan(), buf, domain_limit, [&](std::span<const Element> a) {
        if (eval_node(f, body, a)) return false;
        if (!evidence) return true;
        auto inst = a.subspan(k);
        if (!found || std::lexicographical_compare(inst.begin(), inst.end(), evidence->begin(), evidence->end())) {
          evidence->assign(inst.begin(), inst.end());
        }
        found = true;
        return false;
      });
  return evidence ? found : stopped;
}

namespace {

using Visible = std::vector<std::pair<std::size_t, ClausePtr>>;

bool missing_constant(const FiniteStructure& f, const QFFormula& q) {
  for (std::size_t c : q.constants_used()) {
    if (!f.constant(c)) return true;
  }
  return false;
}

bool pending(const FiniteStructure& f, const Disjunct& d, const Visible& vis) {
  if (d.guard && missing_constant(f, *d.guard)) return true;
  for (const auto& [i, c] : vis) {
    if (missing_constant(f, c->body())) return true;
  }
  return false;
}

void check_signature(const FiniteStructure& f, const Sigma2Sentence& s) {
  if (!(f.signature() == s.signature())) throw Error("sentence and structure signatures differ");
}

}  // namespace

std::vector<WitnessStatus> witness_scan(const FiniteStructure& f, const Sigma2Sentence& sentence,
                                        std::size_t stage_bound) {
  check_signature(f, sentence);
  std::vector<WitnessStatus> out;
  const std::size_t n = f.size();
  for (std::size_t di = 0; di < sentence.disjuncts().size(); ++di) {
    const Disjunct& d = sentence.disjuncts()[di];
    const Visible vis = d.matrix.visible(stage_bound);
    const bool is_pending = pending(f, d, vis);
    const std::size_t k = d.exists.size();
    if (k > 0 && n == 0) continue;
    std::vector<Element> t(k, 0);
    while (true) {
      WitnessStatus st;
      st.disjunct = di;
      st.tuple = t;
      st.pending = is_pending;
      if (!is_pending) {
        if (d.guard && !eval_node(f, d.guard->root(), t)) {
          st.refuted = true;
          st.evidence = RefutingEvidence{std::nullopt, {}};
        } else {
          for (const auto& [idx, c] : vis) {
            std::vector<Element> ev;
            if (clause_refuted(f, *c, t, n, &ev)) {
              st.refuted = true;
              st.evidence = RefutingEvidence{idx, std::move(ev)};
              break;
            }
          }
        }
      }
      out.push_back(std::move(st));
      std::size_t pos = k;
      while (pos > 0 && t[pos - 1] + 1 == n) t[--pos] = 0;
      if (pos == 0) break;
      ++t[pos - 1];
    }
  }
  return out;
}

std::optional<Candidate> least_unrefuted(const FiniteStructure& f, std::span<const Sigma2Sentence> sentences,
                                         std::size_t stage_bound) {
  struct Block {
    std::vector<const UniversalClause*> quantified;
  };
  std::vector<std::vector<Block>> blocks(sentences.size());
  std::vector<Candidate> candidates;
  std::vector<Visible> keep;

  for (std::size_t si = 0; si < sentences.size(); ++si) {
    const Sigma2Sentence& s = sentences[si];
    check_signature(f, s);
    blocks[si].resize(s.disjuncts().size());
    for (std::size_t di = 0; di < s.disjuncts().size(); ++di) {
      const Disjunct& d = s.disjuncts()[di];
      keep.push_back(d.matrix.visible(stage_bound));
      const Visible& vis = keep.back();
      if (pending(f, d, vis)) continue;
      const std::size_t k = d.exists.size();
      ConstraintSet cs;
      std::vector<const QFNode*> checks;
      if (d.guard) {
        collect_forced(d.guard->root(), true, cs);
        checks.push_back(&d.guard->root());
      }
      for (const auto& [idx, c] : vis) {
        if (c->free_count() != k) throw Error("clause free variables do not match the existential block");
        if (c->bound_count() == 0) {
          collect_forced(c->body().root(), true, cs);
          checks.push_back(&c->body().root());
        } else {
          blocks[si][di].quantified.push_back(c.get());
        }
      }
      SearchPlan plan(std::move(cs), k, 0);
      std::vector<Element> asg(k, 0);
      AssignmentSearch::run(f, plan, asg, f.size(), [&](std::span<const Element> a) {
        for (const QFNode* n : checks) {
          if (!eval_node(f, *n, a)) return false;
        }
        candidates.push_back({si, di, std::vector<Element>(a.begin(), a.end())});
        return false;
      });
    }
  }

  std::sort(candidates.begin(), candidates.end(), candidate_less);
  for (auto& cand : candidates) {
    bool refuted = false;
    for (const UniversalClause* c : blocks[cand.sentence][cand.disjunct].quantified) {
      if (clause_refuted(f, *c, cand.tuple, f.size())) {
        refuted = true;
        break;
      }
    }
    if (!refuted) return std::move(cand);
  }
  return std::nullopt;
}

std::optional<Witness> find_witness(const FiniteStructure& f, const Sigma2Sentence& sentence,
                                    std::size_t stage_bound) {
  auto c = least_unrefuted(f, std::span<const Sigma2Sentence>(&sentence, 1), stage_bound);
  if (!c) return std::nullopt;
  return Witness{c->disjunct, std::move(c->tuple)};
}

bool eval_sigma2_closed(const FiniteStructure& f, const Sigma2Sentence& sentence, std::size_t stage_bound) {
  return find_witness(f, sentence, stage_bound).has_value();
}

Json sentence_to_json(const Sigma2Sentence& sentence) {
  Json ds = Json::array();
  for (const Disjunct& d : sentence.disjuncts()) {
    Json jd;
    jd["exists"] = d.exists;
    if (d.guard) jd["guard"] = qf_to_json(*d.guard);
    if (!d.generator_id.empty()) {
      jd["clauses"] = d.generator_id;
    } else if (const auto& fin = d.matrix.finite_clauses()) {
      Json cl = Json::array();
      for (const auto& c : *fin) {
        if (!c) continue;
        const auto& vars = c->body().variables();
        cl.push_back({{"forall", std::vector<std::string>(vars.begin() + c->free_count(), vars.end())},
                      {"body", qf_to_json(c->body())}});
      }
      jd["clauses"] = std::move(cl);
    } else {
      throw Error("matrix has no finite or named form and cannot be serialized");
    }
    ds.push_back(std::move(jd));
  }
  return Json{{"label", sentence.label()}, {"disjuncts", std::move(ds)}};
}

Sigma2Sentence sentence_from_json(const Signature& signature, const Json& j, const GeneratorResolver& resolver) {
  try {
    if (!j.is_object()) throw ParseError("sentence must be an object", 0, 0);
    std::vector<Disjunct> disjuncts;
    for (const Json& jd : j.at("disjuncts")) {
      std::vector<std::string> exists = jd.value("exists", std::vector<std::string>{});
      const Json& cl = jd.at("clauses");
      if (cl.is_string()) {
        if (!resolver) throw ParseError("no resolver for generator '" + cl.get<std::string>() + "'", 0, 0);
        Disjunct d = resolver(cl.get<std::string>(), signature);
        if (jd.contains("exists") && exists != d.exists) {
          throw ParseError("existential block does not match generator '" + cl.get<std::string>() + "'", 0, 0);
        }
        if (!d.guard && jd.contains("guard")) d.guard = qf_from_json(signature, d.exists, jd.at("guard"));
        if (d.generator_id.empty()) d.generator_id = cl.get<std::string>();
        disjuncts.push_back(std::move(d));
        continue;
      }
      Disjunct d;
      d.exists = exists;
      if (jd.contains("guard")) d.guard = qf_from_json(signature, exists, jd.at("guard"));
      std::vector<ClausePtr> clauses;
      for (const Json& c : cl) {
        std::vector<std::string> vars = exists;
        for (const auto& v : c.value("forall", std::vector<std::string>{})) vars.push_back(v);
        clauses.push_back(std::make_shared<const UniversalClause>(qf_from_json(signature, vars, c.at("body")),
                                                                  exists.size()));
      }
      d.matrix = Pi1Matrix::finite(std::move(clauses));
      disjuncts.push_back(std::move(d));
    }
    return Sigma2Sentence(signature, j.value("label", std::string{}), std::move(disjuncts));
  } catch (const ParseError&) {
    throw;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad sentence: ") + e.what(), 0, 0);
  }
}

}  // namespace infex
