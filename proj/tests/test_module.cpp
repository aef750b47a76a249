#include "support.hpp"

using namespace ainf;
using namespace ainf::test;

namespace {

ModulePtr regular(const AlgebraPtr& a) { return std::make_shared<AInfModule>(regular_module(a)); }

}  // namespace

TEST(Module, RegularModulePasses) {
  for (AlgebraPtr a : {fix_t2(QQ()), fix_d(QQ()), upper_triangular(QQ())}) {
    ModulePtr m = regular(a);
    EXPECT_TRUE(check_mod_relations(*m).pass);
    EXPECT_TRUE(module_bar_check(*m).pass);
  }
}

TEST(Module, DgModuleOverDgaPasses) {
  PairFixture p = heisenberg_dg_module(QQ());
  EXPECT_TRUE(check_mod_relations(*p.module).pass);
  EXPECT_TRUE(module_bar_check(*p.module).pass);
}

TEST(Module, NonAssociativeActionFails) {
  AlgebraPtr a = truncated_polynomial(QQ(), 3);
  AInfModule m = regular_module(a);
  MultiOp m2 = m.op(2);
  // x acting on x twice no longer matches x^2
  m2.add({at(m.space, "x"), at(a->space, "x")}, at(m.space, "x2"), q(1));
  m.set_op(2, m2);
  CheckResult r = check_mod_relations(m);
  ASSERT_FALSE(r.pass);
  EXPECT_EQ(r.failure->m, 3);
  EXPECT_FALSE(module_bar_check(m).pass);
}

TEST(Module, BarAgreesWithRelationsOnRandom) {
  Rng rng(5);
  for (int i = 0; i < 30; ++i) {
    ModulePtr m = random_valid_module(rng, QQ());
    EXPECT_TRUE(check_mod_relations(*m).pass);
    EXPECT_TRUE(module_bar_check(*m).pass);
    AInfModule bad = perturb(rng, *m);
    EXPECT_EQ(check_mod_relations(bad).pass, module_bar_check(bad).pass);
  }
}

TEST(Module, IdentityAndZeroMorphisms) {
  ModulePtr m = regular(fix_d(QQ()));
  EXPECT_TRUE(check_mod_morphism(ModMorphism::identity(m)).pass);
  ModMorphism z(m, m);
  z.set_comp(1, MultiOp::module(m->algebra->space, m->space, 1, 0));
  EXPECT_TRUE(check_mod_morphism(z).pass);
  EXPECT_FALSE(is_quasi_iso(z));
}

TEST(Module, FormalityWitnessIsAMorphism) {
  auto f = formal_fixtures(QQ(), 1, 7).front();
  FormalityCertificate c = prove_module_formality(f.algebra, f.module);
  ASSERT_TRUE(c.witness.has_value());
  EXPECT_TRUE(check_mod_morphism(*c.witness).pass);
  EXPECT_TRUE(c.witness->has_comp(2));
}

TEST(Module, CompositionUnitsWeightsAssociativity) {
  AlgebraPtr a = truncated_polynomial(QQ(), 3);
  ModulePtr m = regular(a);
  GradedMap u(m->space, m->space, 0), v(m->space, m->space, 0);
  for (size_t i = 0; i < 3; ++i) {
    u.set(i, i, q(2));
    v.set(i, i, q(-5));
  }
  ModMorphism g = ModMorphism::strict(m, m, u), f = ModMorphism::strict(m, m, v);
  ModMorphism id = ModMorphism::identity(m);
  EXPECT_EQ(compose_mod_morphisms(g, id).comps, g.comps);
  EXPECT_EQ(compose_mod_morphisms(id, g).comps, g.comps);
  ModMorphism gf = compose_mod_morphisms(g, f);
  EXPECT_EQ(gf.comp(1).to_map(), compose_graded(u, v));
  EXPECT_EQ(compose_mod_morphisms(compose_mod_morphisms(g, f), g).comps,
            compose_mod_morphisms(g, compose_mod_morphisms(f, g)).comps);
}

TEST(Module, CompositionWithHigherComponents) {
  auto f = formal_fixtures(QQ(), 2, 7)[1];
  FormalityCertificate c = prove_module_formality(f.algebra, f.module);
  ModMorphism w = *c.witness;
  ModMorphism after = compose_mod_morphisms(ModMorphism::identity(w.target), w);
  EXPECT_EQ(after.comps, w.comps);
  EXPECT_TRUE(check_mod_morphism(compose_mod_morphisms(w, ModMorphism::identity(w.source))).pass);
}

TEST(Module, RestrictAlongIdentity) {
  AlgebraPtr a = fix_d(QQ());
  ModulePtr m = regular(a);
  AInfModule r = restrict_along(AlgMorphism::identity(a), *m);
  EXPECT_EQ(r.ops, m->ops);
}

TEST(Module, RestrictAlongStrictMorphism) {
  AlgebraPtr a = truncated_polynomial(QQ(), 3);
  GradedMap s(a->space, a->space, 0);
  s.set(0, 0, q(1));
  s.set(1, 1, q(3));
  s.set(2, 2, q(9));
  AlgMorphism f = AlgMorphism::strict(a, a, s);
  ModulePtr m = regular(a);
  AInfModule r = restrict_along(f, *m);
  EXPECT_TRUE(check_mod_relations(r).pass);
  EXPECT_EQ(r.op(2).apply({at(m->space, "1"), at(a->space, "x")}), vec(m->space, {{"x", 3}}));
}

TEST(Module, RestrictAlongTransferKeepsHomology) {
  AlgebraPtr d = fix_d(QQ());
  AlgebraTransfer t = minimal_model(d);
  ModulePtr m = regular(d);
  AInfModule r = restrict_along(t.f, *m);
  EXPECT_TRUE(check_mod_relations(r).pass);
  EXPECT_EQ(homology_dims(differential(r)), homology_dims(differential(*m)));
}

TEST(Module, TruncateToM2) {
  PairFixture h = heisenberg_module(QQ());
  ASSERT_TRUE(h.module->has_op(3));
  AInfModule m2 = truncate_to_M2(*h.module);
  EXPECT_FALSE(m2.has_op(3));
  EXPECT_EQ(m2.op(2), h.module->op(2));
  EXPECT_EQ(truncate_to_M2(m2).ops, m2.ops);
  AInfModule reg = regular_module(fix_t2(QQ()));
  EXPECT_EQ(truncate_to_M2(reg).ops, reg.ops);
}

TEST(Module, PairChecks) {
  AlgebraPtr a = fix_t2(QQ());
  ModulePtr m = regular(a);
  AlgMorphism f = AlgMorphism::identity(a);
  ModulePtr pulled = std::make_shared<AInfModule>(restrict_along(f, *m));
  ModMorphism g(m, pulled);
  g.set_comp(1, ModMorphism::identity(m).comp(1));
  EXPECT_TRUE(check_pair({f, g, m}).pass);

  PairFixture dg = heisenberg_dg_module(QQ());
  PairTransfer t = minimal_model(dg.algebra, dg.module);
  EXPECT_TRUE(check_pair(t.pair).pass);

  PairMorphism broken = t.pair;
  MultiOp g1 = broken.g.comp(1);
  g1.add(g1.table().begin()->first, g1.table().begin()->second);
  broken.g.set_comp(1, g1);
  PairCheck pc = check_pair(broken);
  EXPECT_FALSE(pc.pass);
  EXPECT_TRUE(pc.algebra_side.pass);
  EXPECT_NE(pc.message.find("module"), std::string::npos);
}

TEST(Module, FixDOverItselfTransfersToNonzeroM3) {
  AlgebraPtr d = fix_d(QQ());
  PairTransfer t = minimal_model(d, regular(d));
  EXPECT_TRUE(t.minimal_module->has_op(3));
  EXPECT_FALSE(t.minimal_module->op(3).is_zero());
  EXPECT_TRUE(check_mod_relations(*t.minimal_module).pass);
}
