#include "support.hpp"

using namespace ainf;
using namespace ainf::test;

TEST(Algebra, GradedAssociativePasses) {
  for (AlgebraPtr a : {fix_t2(QQ()), truncated_polynomial(QQ(), 4), upper_triangular(QQ()), split_pair(QQ())}) {
    EXPECT_TRUE(a->graded_associative());
    EXPECT_TRUE(check_alg_relations(*a).pass);
  }
}

TEST(Algebra, FixDPasses) {
  AlgebraPtr d = fix_d(QQ());
  EXPECT_EQ(d->space->dim(), 8u);
  EXPECT_EQ(d->op(1).apply({at(d->space, "e3")}), vec(d->space, {{"e1e2", 1}}));
  EXPECT_TRUE(check_alg_relations(*d).pass);
}

TEST(Algebra, FixDWithBrokenProductFailsLeibniz) {
  AlgebraPtr d = fix_d(QQ());
  SpacePtr V = d->space;
  // an extra e1e2 . e1 term breaks d(e3 e1) = d(e3) e1 - e3 d(e1)
  MultiOp m2 = d->op(2);
  m2.add({at(V, "e1e2"), at(V, "e1")}, at(V, "e1e2e3"), q(1));
  AlgebraPtr b = with_op(*d, 2, m2);
  CheckResult r = check_alg_relations(*b);
  ASSERT_FALSE(r.pass);
  EXPECT_EQ(r.failure->m, 2);
  EXPECT_FALSE(bar_check(*b).pass);
}

TEST(Algebra, BarDifferentialUnfoldsDga) {
  AlgebraPtr d = fix_d(QQ());
  BarComplex b = bar_differential(*d, 2);
  SpacePtr s = b.letters;
  // length-1 words: d = suspended m1
  Key w{at(s, "e3")};
  SparseVec img = b.apply({{b.index.at(w), q(1)}});
  ASSERT_EQ(img.size(), 1u);
  EXPECT_EQ(b.words[img.begin()->first], Key({at(s, "e1e2")}));
  EXPECT_TRUE(bar_check(*d).pass);
}

TEST(Algebra, BarAgreesWithRelationsOnRandom) {
  Rng rng(11);
  for (int i = 0; i < 40; ++i) {
    AlgebraPtr a = i % 2 ? random_valid_algebra(rng, QQ()) : std::make_shared<AInfAlgebra>(random_algebra_ops(rng, QQ()));
    EXPECT_EQ(check_alg_relations(*a).pass, bar_check(*a).pass);
  }
}

TEST(Algebra, IdentityMorphismPasses) {
  AlgebraPtr d = fix_d(QQ());
  EXPECT_TRUE(check_alg_morphism(AlgMorphism::identity(d)).pass);
  EXPECT_TRUE(is_quasi_iso(AlgMorphism::identity(d)));
}

TEST(Algebra, NonMultiplicativeStrictMapFails) {
  AlgebraPtr a = truncated_polynomial(QQ(), 3);
  GradedMap f(a->space, a->space, 0);
  f.set(0, 0, q(1));
  f.set(1, 1, q(2));
  f.set(2, 2, q(2));  // x^2 -> 2x^2 but (2x)^2 = 4x^2
  CheckResult r = check_alg_morphism(AlgMorphism::strict(a, a, f));
  ASSERT_FALSE(r.pass);
  EXPECT_EQ(r.failure->m, 2);
}

TEST(Algebra, ZeroMorphismNotQuasiIso) {
  AlgebraPtr a = fix_t2(QQ());
  EXPECT_FALSE(is_quasi_iso(AlgMorphism::strict(a, a, GradedMap(a->space, a->space, 0))));
}

TEST(Algebra, CompositionUnitsAndAssociativity) {
  AlgebraPtr a = truncated_polynomial(QQ(), 3);
  GradedMap g1(a->space, a->space, 0);
  g1.set(0, 0, q(1));
  g1.set(1, 1, q(2));
  g1.set(2, 2, q(4));
  AlgMorphism g = AlgMorphism::strict(a, a, g1);
  AlgMorphism id = AlgMorphism::identity(a);
  EXPECT_EQ(compose_alg_morphisms(g, id).comps, g.comps);
  EXPECT_EQ(compose_alg_morphisms(id, g).comps, g.comps);
  GradedMap h1(a->space, a->space, 0);
  h1.set(0, 0, q(1));
  h1.set(1, 1, q(-3));
  h1.set(2, 2, q(9));
  AlgMorphism h = AlgMorphism::strict(a, a, h1);
  EXPECT_EQ(compose_alg_morphisms(compose_alg_morphisms(h, g), g).comps,
            compose_alg_morphisms(h, compose_alg_morphisms(g, g)).comps);
  EXPECT_TRUE(check_alg_morphism(compose_alg_morphisms(h, g)).pass);
}

TEST(Algebra, TransferMorphismComposesWithHigherComps) {
  AlgebraTransfer t = minimal_model(fix_d(QQ()));
  AlgMorphism twice = compose_alg_morphisms(AlgMorphism::identity(t.f.target), t.f);
  EXPECT_EQ(twice.comps, t.f.comps);
  EXPECT_TRUE(check_alg_morphism(twice).pass);
}

TEST(Algebra, CohomologyDimensions) {
  AlgebraPtr t2 = fix_t2(QQ());
  CohomologyResult h = cohomology(*t2);
  EXPECT_EQ(h.algebra->space->dim(), 4u);
  EXPECT_EQ(h.algebra->op(2).table(), t2->op(2).table());
  CohomologyResult hd = cohomology(*fix_d(QQ()));
  EXPECT_EQ(hd.algebra->space->dim_in(0), 1u);
  EXPECT_EQ(hd.algebra->space->dim_in(1), 2u);
  EXPECT_EQ(hd.algebra->space->dim_in(2), 2u);
  EXPECT_EQ(hd.algebra->space->dim_in(3), 1u);
  EXPECT_TRUE(hd.algebra->graded_associative());
}

TEST(Algebra, AcyclicComplexHasNoCohomology) {
  SpacePtr V = GradedSpace::make(QQ(), {{0, {"u"}}, {1, {"v"}}});
  AInfAlgebra a(V);
  MultiOp m1 = MultiOp::algebra(V, 1, 1);
  m1.add({0}, 1, q(1));
  a.set_op(1, m1);
  EXPECT_EQ(cohomology(a).algebra->space->dim(), 0u);
}
