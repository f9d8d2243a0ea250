#include <gtest/gtest.h>

#include <map>
#include <set>

#include "infex/encodings.hpp"
#include "infex/error.hpp"
#include "infex/isomorphism.hpp"
#include "support/oracle.hpp"

using namespace infex;

namespace {

constexpr std::size_t R = 0, Q = 1, U = 2, T = 3;

Element code(const VNode& n) { return vlayout::code_of(n); }

// Every element of V with block index < blocks, i.e. codes below base(blocks).
FiniteStructure v_blocks(std::size_t blocks) { return restrict(build_V(), vlayout::base(blocks) - 1); }

// x values for which some ybar, z satisfy theta_i, by full expansion.
std::set<Element> theta_solutions(const FiniteStructure& f, std::size_t i) {
  const QFFormula th = theta(i);
  std::set<Element> out;
  oracle::each_tuple(f.size(), i + 3, [&](const std::vector<Element>& t) {
    if (oracle::qf(f, th.root(), t)) out.insert(t[0]);
    return false;
  });
  return out;
}

std::vector<Element> neighbours(const LazyStructure& s, Element u, Element bound) {
  std::vector<Element> out;
  for (Element v = 0; v < bound; ++v) {
    if (s.atom(R, {u, v})) out.push_back(v);
  }
  return out;
}

}  // namespace

TEST(VLayout, CanonicalFormula) {
  EXPECT_EQ(vlayout::base(0), 2u);
  Element sum = 2;
  for (std::size_t i = 0; i < 40; ++i) {
    EXPECT_EQ(vlayout::base(i), sum);
    EXPECT_EQ(code(VNode::a(i)), sum);
    EXPECT_EQ(code(VNode::b(i)), sum + 1);
    for (std::size_t j = 0; j <= i; ++j) EXPECT_EQ(code(VNode::d(i, j)), sum + 2 + j);
    sum += static_cast<Element>(i + 3);
  }
  EXPECT_EQ(code(VNode::root()), 0u);
  EXPECT_EQ(code(VNode::sink()), 1u);
}

TEST(VLayout, MutuallyInverse) {
  for (Element c = 0; c < 5000; ++c) EXPECT_EQ(vlayout::code_of(vlayout::node_of(c)), c);
}

TEST(BuildV, EdgeAndUnaryFacts) {
  const LazyStructure v = build_V();
  EXPECT_TRUE(v.atom(R, {code(VNode::root()), code(VNode::a(0))}));
  EXPECT_FALSE(v.atom(R, {code(VNode::root()), code(VNode::b(0))}));
  for (std::size_t i = 0; i <= 5; ++i) {
    for (std::size_t j = 0; j <= i; ++j) EXPECT_FALSE(v.atom(U, {code(VNode::d(i, j))}));
    EXPECT_TRUE(v.atom(U, {code(VNode::a(i))}));
    EXPECT_TRUE(v.atom(U, {code(VNode::b(i))}));
  }
  EXPECT_TRUE(v.atom(Q, {code(VNode::sink())}));
  EXPECT_FALSE(v.atom(Q, {code(VNode::root())}));
  const FiniteStructure f = v_blocks(3);
  EXPECT_EQ(f.successors(R, code(VNode::a(2))).size(), 3u);
  const auto nb = neighbours(v, code(VNode::a(2)), 200);
  EXPECT_EQ(nb, (std::vector<Element>{code(VNode::root()), code(VNode::b(2)), code(VNode::d(2, 0))}));
}

TEST(BuildV, SymmetricIrreflexiveEdges) {
  const LazyStructure v = build_V();
  for (Element a = 0; a < 60; ++a) {
    EXPECT_FALSE(v.atom(R, {a, a}));
    for (Element b = 0; b < 60; ++b) EXPECT_EQ(v.atom(R, {a, b}), v.atom(R, {b, a}));
  }
}

TEST(Theta, ChainAssignmentSatisfies) {
  const FiniteStructure f = v_blocks(3);
  const std::vector<Element> asg{code(VNode::a(1)), code(VNode::d(1, 0)), code(VNode::d(1, 1)), code(VNode::sink())};
  EXPECT_TRUE(eval_qf(f, theta(1), asg));
  std::vector<Element> wrong = asg;
  wrong[2] = code(VNode::d(1, 0));
  EXPECT_FALSE(eval_qf(f, theta(1), wrong));
}

TEST(Theta, SolutionSetIsExactlyA1) {
  const FiniteStructure f = v_blocks(5);
  const auto sol = theta_solutions(f, 1);
  EXPECT_EQ(sol, (std::set<Element>{code(VNode::a(1))}));
  EXPECT_FALSE(sol.count(code(VNode::b(1))));
}

TEST(TreeNumbering, BijectiveOnInitialSegments) {
  for (const CeSetApprox& w : {CeSetApprox::frozen({}), CeSetApprox::frozen({1}), CeSetApprox::primes(),
                               CeSetApprox::staged({{5, 0}, {2, 3}, {9, 9}})}) {
    const TreeNumbering num(w);
    std::set<std::string> seen;
    for (Element c = 0; c < 800; ++c) {
      const VNode n = num.node(c);
      EXPECT_TRUE(seen.insert(to_string(n)).second) << to_string(n);
      EXPECT_EQ(num.code_of(n, num.stage_of(c)), c);
      if (c > 1 && num.stage_of(c) > 0) {
        EXPECT_FALSE(num.code_of(n, num.stage_of(c) - 1).has_value());
      }
      if (n.kind == VNode::Kind::B) {
        EXPECT_TRUE(w.contains(n.block, num.stage_of(c)));
      }
    }
  }
}

TEST(TreeNumbering, BlockCodeBound) {
  // Block i is fully emitted by stage i, hence coded below 2 + sum_{s<=i}(s+2) + #b-nodes.
  const TreeNumbering num(CeSetApprox::primes());
  for (std::size_t i = 0; i < 30; ++i) {
    const Element bound = static_cast<Element>(2 + (i + 1) * (i + 4) / 2 + (i + 1));
    EXPECT_LT(*num.code_of(VNode::a(i), i), bound);
    EXPECT_LT(*num.code_of(VNode::d(i, i), i), bound);
  }
}

TEST(BuildTW, PrimesFragment) {
  const LazyStructure t = build_TW(CeSetApprox::primes());
  const TreeNumbering num(CeSetApprox::primes());
  EXPECT_TRUE(num.code_of(VNode::b(2), 100).has_value());
  EXPECT_FALSE(num.code_of(VNode::b(4), 100).has_value());
  const Element a2 = *num.code_of(VNode::a(2), 100), b2 = *num.code_of(VNode::b(2), 100);
  EXPECT_TRUE(t.atom(R, {a2, b2}));
  EXPECT_TRUE(t.atom(U, {b2}));
}

TEST(BuildTW, EmptySetHasNoBNodes) {
  const LazyStructure t = build_TW(CeSetApprox::frozen({}));
  const TreeNumbering num(CeSetApprox::frozen({}));
  for (Element c = 0; c < 300; ++c) EXPECT_NE(num.node(c).kind, VNode::Kind::B);
  for (std::size_t i = 0; i < 8; ++i) {
    const Element a = *num.code_of(VNode::a(i), 50);
    EXPECT_EQ(neighbours(t, a, 300), (std::vector<Element>{0, *num.code_of(VNode::d(i, 0), 50)}));
  }
}

TEST(BuildTW, SingletonHasOneBNode) {
  const TreeNumbering num(CeSetApprox::frozen({1}));
  std::vector<std::size_t> blocks;
  for (Element c = 0; c < 400; ++c) {
    if (num.node(c).kind == VNode::Kind::B) blocks.push_back(num.node(c).block);
  }
  EXPECT_EQ(blocks, std::vector<std::size_t>{1});
}

TEST(BuildTW, ThetaDefinesANodes) {
  const CeSetApprox w = CeSetApprox::frozen({0, 2});
  const TreeNumbering num(w);
  // Elements of blocks 0..3 plus r and c.
  std::vector<Element> els{0, 1};
  for (std::size_t i = 0; i <= 3; ++i) {
    els.push_back(*num.code_of(VNode::a(i), 10));
    for (std::size_t j = 0; j <= i; ++j) els.push_back(*num.code_of(VNode::d(i, j), 10));
    if (auto b = num.code_of(VNode::b(i), 10)) els.push_back(*b);
  }
  std::sort(els.begin(), els.end());
  const FiniteStructure f = induced_substructure(build_TW(w), els);
  const auto pos = [&](Element c) { return static_cast<Element>(std::lower_bound(els.begin(), els.end(), c) - els.begin()); };
  for (std::size_t i = 0; i <= 1; ++i) {
    EXPECT_EQ(theta_solutions(f, i), (std::set<Element>{pos(*num.code_of(VNode::a(i), 10))}));
  }
}

TEST(CeSet, FrozenStagedPrimes) {
  const CeSetApprox f = CeSetApprox::frozen({3, 0, 2, 2});
  EXPECT_EQ(f.enum_at(0), (std::vector<std::size_t>{0, 2, 3}));
  EXPECT_EQ(f.describe(), "{0,2,3}");
  const CeSetApprox s = CeSetApprox::staged({{4, 7}, {1, 2}, {9, 7}});
  EXPECT_TRUE(s.enum_at(0).empty());
  EXPECT_EQ(s.enum_at(3), std::vector<std::size_t>{2});
  EXPECT_EQ(s.enum_at(4), (std::vector<std::size_t>{2, 7}));
  EXPECT_EQ(s.first_stage(7, 100), 4u);
  EXPECT_FALSE(s.first_stage(8, 100).has_value());
  const CeSetApprox p = CeSetApprox::primes();
  EXPECT_EQ(p.enum_at(12), (std::vector<std::size_t>{2, 3, 5, 7, 11}));
  for (std::size_t st = 0; st < 60; ++st) {
    const auto a = p.enum_at(st), b = p.enum_at(st + 1);
    EXPECT_TRUE(std::includes(b.begin(), b.end(), a.begin(), a.end()));
  }
}

TEST(CeSet, JsonAndLiterals) {
  for (const CeSetApprox& s : {CeSetApprox::frozen({0, 2, 3}), CeSetApprox::staged({{3, 1}, {0, 5}}),
                               CeSetApprox::primes()}) {
    const CeSetApprox back = CeSetApprox::from_json(s.to_json());
    for (std::size_t st = 0; st < 20; ++st) EXPECT_EQ(back.enum_at(st), s.enum_at(st));
  }
  EXPECT_EQ(CeSetApprox::parse_literal("{ 4, 1 }").enum_at(0), (std::vector<std::size_t>{1, 4}));
  EXPECT_TRUE(CeSetApprox::parse_literal("{}").enum_at(5).empty());
  EXPECT_THROW(CeSetApprox::parse_literal("{1,x}"), Error);
  EXPECT_THROW(CeSetApprox::from_json(Json{{"kind", "other"}}), Error);
}

TEST(FamilyI, Cases) {
  const CeSetApprox e = CeSetApprox::frozen({0, 2, 3});
  EXPECT_EQ(*family_I(e, 2).limit(), (std::vector<std::size_t>{0, 2, 3}));
  EXPECT_EQ(*family_I(e, 4).limit(), (std::vector<std::size_t>{0, 2, 3, 4}));
  EXPECT_EQ(family_I(e, 4).enum_at(0), (std::vector<std::size_t>{0, 2, 3, 4}));
  // Staged E: x present from stage 0, E's elements when they arrive.
  const CeSetApprox live = CeSetApprox::staged({{5, 1}});
  EXPECT_EQ(family_I(live, 6).enum_at(0), std::vector<std::size_t>{6});
  EXPECT_EQ(family_I(live, 6).enum_at(5), (std::vector<std::size_t>{1, 6}));
}

TEST(FamilyI, EnumerationOverComplement) {
  const CeSetApprox e = CeSetApprox::frozen({0, 2, 3});
  std::set<std::vector<std::size_t>> listed;
  for (std::size_t m = 0; m < 6; ++m) listed.insert(*family_I(e, non_member(e, m)).limit());
  EXPECT_EQ(listed.size(), 6u);
  EXPECT_EQ(non_member(e, 0), 1u);
  EXPECT_EQ(non_member(e, 1), 4u);
  EXPECT_EQ(non_member(e, 2), 5u);
}

TEST(CStructure, DovetailInverse) {
  for (std::size_t t = 0; t < 40; ++t) {
    EXPECT_EQ(CStructure::tree_index(CStructure::tree_kind_copy(t).first, CStructure::tree_kind_copy(t).second), t);
    for (Element l = 0; l < 50; ++l) {
      const Element g = CStructure::global_code(t, l);
      EXPECT_EQ(CStructure::locate(g), std::make_pair(t, l));
    }
  }
  // Codes 1..N are hit exactly once.
  std::set<std::pair<std::size_t, Element>> seen;
  for (Element g = 1; g < 5000; ++g) EXPECT_TRUE(seen.insert(CStructure::locate(g)).second);
  EXPECT_THROW(CStructure::locate(0), Error);
}

TEST(CStructure, RootAndMarkingFacts) {
  const CeSetApprox e = CeSetApprox::frozen({0, 2, 3});
  for (const CStructure& c : {CStructure::base(e), CStructure::plus(e), CStructure::minus(e)}) {
    const LazyStructure& s = c.structure();
    EXPECT_EQ(s.constant(0), 0u);
    EXPECT_FALSE(s.atom(T, {0}));
    EXPECT_TRUE(s.atom(U, {0}));
    for (Element g = 1; g < 3000; ++g) {
      if (!s.atom(T, {g})) continue;
      EXPECT_EQ(CStructure::locate(g).second, 0u);
      EXPECT_TRUE(s.atom(R, {0, g}));
    }
  }
}

TEST(CStructure, PlusAndMinusETrees) {
  const CeSetApprox e = CeSetApprox::frozen({0, 2, 3});
  const CStructure p = CStructure::plus(e), m = CStructure::minus(e);
  EXPECT_EQ(*p.kind(1).w.limit(), *e.limit());
  EXPECT_FALSE(p.kind(1).extra.has_value());
  for (std::size_t copy = 0; copy < 5; ++copy) {
    EXPECT_TRUE(p.kind(1).marked(copy));
    EXPECT_FALSE(m.kind(1).marked(copy));
  }
  for (std::size_t kappa : {0u, 2u, 3u, 7u}) {
    ASSERT_TRUE(p.kind(kappa).extra.has_value());
    EXPECT_FALSE(std::binary_search(e.limit()->begin(), e.limit()->end(), *p.kind(kappa).extra));
    EXPECT_TRUE(p.kind(kappa).marked(0));
    EXPECT_FALSE(p.kind(kappa).marked(1));
  }
}

TEST(CStructure, BaseHasBothMarkingsPerExtra) {
  const CeSetApprox e = CeSetApprox::frozen({0, 2, 3});
  const CStructure b = CStructure::base(e);
  const LazyStructure& s = b.structure();
  std::map<std::size_t, std::set<bool>> marks;
  for (Element g = 1; g < 4000; ++g) {
    auto [t, l] = CStructure::locate(g);
    if (l != 0) continue;
    const auto [kappa, copy] = CStructure::tree_kind_copy(t);
    marks[*b.kind(kappa).extra].insert(s.atom(T, {g}));
  }
  for (std::size_t m = 0; m < 4; ++m) EXPECT_EQ(marks[non_member(e, m)], (std::set<bool>{false, true}));
}

TEST(CStructure, TreesMatchTheirNumbering) {
  const CeSetApprox e = CeSetApprox::frozen({1, 4});
  const CStructure c = CStructure::minus(e);
  const LazyStructure& s = c.structure();
  for (std::size_t t : {0u, 1u, 4u, 9u}) {
    const auto [kappa, copy] = CStructure::tree_kind_copy(t);
    const TreeNumbering& num = c.numbering(kappa);
    for (Element l = 0; l < 40; ++l) {
      const Element g = CStructure::global_code(t, l);
      EXPECT_EQ(s.atom(U, {g}), v_unary('U', num.node(l)));
      EXPECT_EQ(s.atom(Q, {g}), v_unary('Q', num.node(l)));
      for (Element l2 = 0; l2 < 40; ++l2) {
        EXPECT_EQ(s.atom(R, {g, CStructure::global_code(t, l2)}), v_edge(num.node(l), num.node(l2)));
      }
    }
  }
}

TEST(XConfig, DefaultSchedules) {
  const CeSetApprox e = CeSetApprox::frozen({0, 2, 3});
  const XConfig x = XConfig::with_default_schedules("10", e);
  EXPECT_TRUE(x.plus_schedule(0, 0).enum_at(0).empty());
  EXPECT_EQ(x.minus_schedule(0, 0).enum_at(0), std::vector<std::size_t>{1});
  EXPECT_EQ(x.minus_schedule(0, 3).enum_at(0), std::vector<std::size_t>{6});
  EXPECT_TRUE(x.minus_schedule(1, 0).enum_at(0).empty());
  EXPECT_EQ(x.plus_schedule(1, 2).enum_at(0), std::vector<std::size_t>{5});
  EXPECT_THROW(XConfig::with_default_schedules("012", e), Error);
  const XConfig y = XConfig::from_json(Json{{"bits", "0110"}, {"mode", "default-schedules"}}, e);
  EXPECT_EQ(y.bits, "0110");
  EXPECT_THROW(XConfig::from_json(Json{{"bits", "01"}, {"mode", "sideways"}}, e), ParseError);
}

TEST(XConfig, InconsistentConfigurationsRejected) {
  const CeSetApprox e = CeSetApprox::frozen({0, 2, 3});
  XConfig both = XConfig::with_default_schedules("1", e);
  both.minus_schedule = [](std::size_t, std::size_t) { return CeSetApprox::frozen({2}); };
  EXPECT_THROW(CStructure::with_config(both, e, 0), Error);
  XConfig neither = XConfig::with_default_schedules("1", e);
  neither.plus_schedule = [](std::size_t, std::size_t) { return CeSetApprox::frozen({7}); };
  EXPECT_THROW(CStructure::with_config(neither, e, 0), Error);
  XConfig disagree = XConfig::with_default_schedules("0", e);
  disagree.bits = "1";
  EXPECT_THROW(CStructure::with_config(disagree, e, 0), Error);
  EXPECT_THROW(CStructure::with_config(XConfig::with_default_schedules("1", e), e, 1), Error);
}

TEST(XConfig, KStructureKinds) {
  const CeSetApprox e = CeSetApprox::frozen({0, 2, 3});
  const XConfig x = XConfig::with_default_schedules("10", e);
  const CStructure in = CStructure::with_config(x, e, 0), out = CStructure::with_config(x, e, 1);
  // Bit 1: the plus tree at m=0 codes E with T roots; every other scheduled tree codes some E ∪ {x}.
  EXPECT_FALSE(in.kind(0).extra.has_value());
  EXPECT_TRUE(in.kind(0).marked(0));
  EXPECT_TRUE(in.kind(1).extra.has_value());
  // Bit 0: the plus tree at m=0 carries a T root but codes E ∪ {x}.
  EXPECT_TRUE(out.kind(0).extra.has_value());
  EXPECT_TRUE(out.kind(0).marked(0));
  EXPECT_FALSE(out.kind(1).extra.has_value());
  EXPECT_FALSE(out.kind(1).marked(0));
  for (std::size_t kappa = 2; kappa < 20; ++kappa) {
    EXPECT_TRUE(in.kind(kappa).extra.has_value());
    EXPECT_TRUE(out.kind(kappa).extra.has_value());
  }
}

TEST(XConfig, BitOneMatchesPlusOnTreeCompleteTruncations) {
  const CeSetApprox e = CeSetApprox::frozen({0, 2, 3});
  const XConfig x = XConfig::with_default_schedules("10", e);
  // Small tree-complete truncations: same multiset of (tree type, mark) pairs.
  EXPECT_TRUE(finite_isomorphic(tree_complete_truncation(CStructure::with_config(x, e, 0), 1),
                                tree_complete_truncation(CStructure::plus(e), 1)));
  EXPECT_TRUE(finite_isomorphic(tree_complete_truncation(CStructure::with_config(x, e, 1), 1),
                                tree_complete_truncation(CStructure::minus(e), 1)));
  EXPECT_FALSE(finite_isomorphic(tree_complete_truncation(CStructure::plus(e), 1),
                                 tree_complete_truncation(CStructure::minus(e), 1)));
}

TEST(Xi, TruthTableOnTreeCompleteTruncations) {
  for (const auto& lit : {"{}", "{0,2,3}", "{1,4}"}) {
    const CeSetApprox e = CeSetApprox::parse_literal(lit);
    const FiniteStructure p = tree_complete_truncation(CStructure::plus(e), 6);
    const FiniteStructure m = tree_complete_truncation(CStructure::minus(e), 6);
    const std::size_t stage = 12;
    EXPECT_TRUE(eval_sigma2_closed(p, xi('+', e), stage)) << lit;
    EXPECT_FALSE(eval_sigma2_closed(p, xi('-', e), stage)) << lit;
    EXPECT_FALSE(eval_sigma2_closed(m, xi('+', e), stage)) << lit;
    EXPECT_TRUE(eval_sigma2_closed(m, xi('-', e), stage)) << lit;
  }
}

TEST(Xi, WitnessIsATRootOfAnETree) {
  const CeSetApprox e = CeSetApprox::frozen({0, 2, 3});
  const CStructure c = CStructure::plus(e);
  const Presentation pres(c.structure());
  const FiniteStructure f = restrict(pres, 400);
  auto w = find_witness(f, xi('+', e), 400);
  ASSERT_TRUE(w);
  const auto [t, l] = CStructure::locate(w->tuple[0]);
  EXPECT_EQ(l, 0u);
  EXPECT_EQ(CStructure::tree_kind_copy(t).first, 1u);
  EXPECT_TRUE(f.holds(T, {w->tuple[0]}));
}

TEST(Xi, RefutedExactlyWhenTheBranchAndChainArePresent) {
  // A non-T root of a tree coding E ∪ {l} in the minus structure.
  const CeSetApprox e = CeSetApprox::frozen({0, 2, 3});
  const CStructure c = CStructure::minus(e);
  std::size_t kappa = 0;
  while (!c.kind(kappa).extra || c.kind(kappa).marked(1)) ++kappa;
  const std::size_t ell = *c.kind(kappa).extra;
  const std::size_t t = CStructure::tree_index(kappa, 1);
  const TreeNumbering& num = c.numbering(kappa);
  auto g = [&](const VNode& n) { return CStructure::global_code(t, *num.code_of(n, 50)); };
  std::vector<Element> needed{g(VNode::b(ell)), g(VNode::sink())};
  for (std::size_t j = 0; j <= ell; ++j) needed.push_back(g(VNode::d(ell, j)));
  const std::vector<Element> base{0, g(VNode::root()), g(VNode::a(ell))};
  const Sigma2Sentence s = xi('-', e);
  for (std::size_t skip = 0; skip <= needed.size(); ++skip) {
    std::vector<Element> els = base;
    for (std::size_t i = 0; i < needed.size(); ++i) {
      if (i != skip) els.push_back(needed[i]);
    }
    std::sort(els.begin(), els.end());
    const FiniteStructure f = induced_substructure(c.structure(), els);
    const Element root = static_cast<Element>(std::find(els.begin(), els.end(), g(VNode::root())) - els.begin());
    bool refuted = false;
    for (const auto& st : witness_scan(f, s, 20)) {
      if (st.tuple[0] == root) {
        refuted = st.refuted;
        if (st.refuted) {
          ASSERT_TRUE(st.evidence && st.evidence->clause_index);
          EXPECT_EQ(*st.evidence->clause_index, ell);
        }
      }
    }
    EXPECT_EQ(refuted, skip == needed.size()) << "skip " << skip;
  }
}

TEST(Generators, ResolveByName) {
  const Sigma2Sentence s = sentence_by_name("xi-plus({1,4})");
  EXPECT_EQ(s.label(), "+");
  EXPECT_EQ(s.generator_id(), "xi-plus({1,4})");
  EXPECT_EQ(sentence_by_name("xi-minus({})").label(), "-");
  EXPECT_THROW(sentence_by_name("xi-up({})"), Error);
  EXPECT_THROW(resolve_generator("xi-plus({0})", Signature::tree_signature()), Error);
}
