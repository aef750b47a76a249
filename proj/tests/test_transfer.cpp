#include "support.hpp"

using namespace ainf;
using namespace ainf::test;

namespace {

SpacePtr two_term() { return GradedSpace::make(QQ(), {{0, {"u"}}, {1, {"v"}}}); }

GradedMap id_differential(const SpacePtr& V) {
  GradedMap d(V, V, 1);
  d.set(1, 0, q(1));
  return d;
}

}  // namespace

TEST(Transfer, ZeroDifferentialContraction) {
  AlgebraPtr t2 = fix_t2(QQ());
  Contraction c = contraction_from_complex(t2->space, GradedMap(t2->space, t2->space, 1));
  EXPECT_EQ(c.small->dim(), t2->space->dim());
  EXPECT_EQ(c.incl.matrix(), Matrix::identity(4, QQ()));
  EXPECT_EQ(c.proj.matrix(), Matrix::identity(4, QQ()));
  EXPECT_TRUE(c.htpy.is_zero());
  EXPECT_TRUE(verify_contraction(c));
}

TEST(Transfer, AcyclicContraction) {
  SpacePtr V = two_term();
  Contraction c = contraction_from_complex(V, id_differential(V));
  EXPECT_EQ(c.small->dim(), 0u);
  EXPECT_EQ(c.htpy.get(0, 1), q(-1));
  EXPECT_TRUE(verify_contraction(c));
}

TEST(Transfer, FixDContraction) {
  AlgebraPtr d = fix_d(QQ());
  Contraction c = contraction_from_complex(d->space, differential(*d));
  std::string why;
  EXPECT_TRUE(verify_contraction(c, &why)) << why;
  std::map<int, size_t> dims{{0, 1}, {1, 2}, {2, 2}, {3, 1}};
  for (auto [deg, n] : dims) EXPECT_EQ(c.small->dim_in(deg), n);
  Contraction seeded = contraction_from_complex(d->space, differential(*d), {.seed = 9});
  EXPECT_TRUE(verify_contraction(seeded, &why)) << why;
}

TEST(Transfer, FixT2HasNoHigherOps) {
  AlgebraPtr t2 = fix_t2(QQ());
  AlgebraTransfer t = minimal_model(t2);
  EXPECT_TRUE(t.saturated);
  for (const auto& [k, m] : t.minimal->ops) EXPECT_TRUE(k == 2 || m.is_zero()) << k;
  EXPECT_EQ(t.minimal->op(2).table().size(), t2->op(2).table().size());
  EXPECT_TRUE(check_alg_morphism(t.f).pass);
  EXPECT_EQ(t.f.comp(1).to_map().matrix(), Matrix::identity(4, QQ()));
}

TEST(Transfer, FixDMasseyProduct) {
  AlgebraPtr d = fix_d(QQ());
  Contraction c = contraction_from_complex(d->space, differential(*d));
  AlgebraTransfer t = transfer_algebra(d, c);
  ASSERT_TRUE(t.minimal->has_op(3));
  SpacePtr H = t.minimal->space;
  SparseVec v = t.minimal->op(3).apply({at(H, "[e1]"), at(H, "[e1]"), at(H, "[e2]")});
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(H->label(v.begin()->first), "[e1e3]");
  EXPECT_TRUE(v.begin()->second == q(1) || v.begin()->second == q(-1));

  // brute-force tree sum at arity 3
  MultiOp m2 = d->op(2);
  MultiOp hm2 = post_compose(c.htpy, m2);
  MultiOp tree = partial(m2, 0, hm2);
  tree.add(partial(m2, 1, hm2), Scalar(-1));
  MultiOp oracle = post_compose(c.proj, pre_compose(tree, {&c.incl, &c.incl, &c.incl}));
  MultiOp m3 = t.minimal->op(3);
  EXPECT_TRUE(m3 == oracle || m3 == oracle.scaled(Scalar(-1)));

  EXPECT_TRUE(check_alg_relations(*t.minimal).pass);
  EXPECT_TRUE(check_alg_morphism(t.f).pass);
  EXPECT_TRUE(is_quasi_iso(t.f));
}

TEST(Transfer, FixDMasseyClassIsNonzero) {
  AlgebraTransfer t = minimal_model(fix_d(QQ()));
  AlgebraM3Class c = algebra_m3_class(*t.minimal);
  EXPECT_TRUE(c.closed);
  EXPECT_FALSE(c.exact);
}

TEST(Transfer, ExactM3IsGaugedAway) {
  // strict transport of T2 along a degree -1 gauge: m3 = -(the linear part) is exact
  AlgebraPtr t2 = fix_t2(QQ());
  SpacePtr A = t2->space;
  MultiOp g = MultiOp::algebra(A, 2, -1);
  g.add({at(A, "e1"), at(A, "e2")}, at(A, "e1"), q(1));
  auto low = std::make_shared<AInfAlgebra>(*t2);
  AlgMorphism f(low, t2, 3);
  f.set_comp(1, MultiOp::from_map(GradedMap::identity(A)));
  f.set_comp(2, g);
  MultiOp res = morphism_residual(f, 3);
  ASSERT_FALSE(res.is_zero());
  auto twisted = std::make_shared<AInfAlgebra>(*t2);
  twisted->set_op(3, res.scaled(Scalar(-1)));
  AlgebraM3Class c = algebra_m3_class(*twisted);
  EXPECT_TRUE(c.closed);
  ASSERT_TRUE(c.exact);
  EXPECT_TRUE(c.gauge.has_value());
}

TEST(Transfer, HeisenbergModuleClassIsNonzero) {
  PairFixture h = heisenberg_dg_module(QQ());
  PairTransfer t = minimal_model(h.algebra, h.module);
  const AInfModule& mm = *t.minimal_module;
  HochschildSetting S = HochschildSetting::of(*t.alg.minimal, truncate_to_M2(mm));
  MultiOp m3 = mm.op(3);
  ASSERT_FALSE(m3.is_zero());
  EXPECT_TRUE(is_closed(S, m3));
  EXPECT_FALSE(coboundary_primitive(S, m3).has_value());
}

TEST(Transfer, RandomDgasSelfVerify) {
  Rng rng(21);
  for (int i = 0; i < 10; ++i) {
    AlgebraPtr a = random_dga(rng, QQ());
    AlgebraTransfer t = minimal_model(a);
    EXPECT_TRUE(check_alg_relations(*t.minimal).pass);
    EXPECT_TRUE(check_alg_morphism(t.f).pass);
    EXPECT_TRUE(is_quasi_iso(t.f));
  }
}

TEST(Transfer, RegularModuleOverFixT2) {
  AlgebraPtr t2 = fix_t2(QQ());
  auto m = std::make_shared<AInfModule>(regular_module(t2));
  PairTransfer t = minimal_model(t2, m);
  EXPECT_EQ(t.minimal_module->op(2).table().size(), t.alg.minimal->op(2).table().size());
  for (const auto& [k, op] : t.minimal_module->ops) EXPECT_TRUE(k == 2 || op.is_zero());
  EXPECT_TRUE(check_pair(t.pair).pass);
}

TEST(Transfer, AcyclicModuleVanishes) {
  AlgebraPtr a = truncated_polynomial(QQ(), 1);
  SpacePtr V = two_term();
  auto m = std::make_shared<AInfModule>(a, V);
  MultiOp m1 = MultiOp::module(a->space, V, 1, 1);
  m1.add({0}, 1, q(1));
  m->set_op(1, m1);
  MultiOp m2 = MultiOp::module(a->space, V, 2, 0);
  m2.add({0, 0}, 0, q(1));
  m2.add({1, 0}, 1, q(1));
  m->set_op(2, m2);
  ASSERT_TRUE(check_mod_relations(*m).pass);
  PairTransfer t = minimal_model(a, m);
  EXPECT_EQ(t.minimal_module->space->dim(), 0u);
  EXPECT_TRUE(check_pair(t.pair).pass);
}

TEST(Transfer, EquivalenceProbe) {
  PairFixture h = heisenberg_module(QQ());
  EquivProbe self = minimal_pair_equiv_probe(h.algebra, h.module, h.algebra, h.module);
  EXPECT_EQ(self.verdict, EquivVerdict::EquivalentWitnessed);
  auto m2 = std::make_shared<AInfModule>(truncate_to_M2(*h.module));
  EXPECT_EQ(minimal_pair_equiv_probe(h.algebra, h.module, h.algebra, m2).verdict, EquivVerdict::NotEquivalentByInvariants);
  Rng rng(4);
  ModulePtr a = random_valid_module(rng, QQ()), b = random_valid_module(rng, QQ());
  EXPECT_EQ(minimal_pair_equiv_probe(a->algebra, a, b->algebra, b).verdict, EquivVerdict::Unknown);
}
