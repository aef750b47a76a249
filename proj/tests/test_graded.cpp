#include "support.hpp"

using namespace ainf;
using namespace ainf::test;

namespace {

SpacePtr two_two() { return GradedSpace::make(QQ(), {{0, {"a", "b"}}, {1, {"c", "d"}}}); }

GradedMap random_map(Rng& rng, const SpacePtr& s) {
  GradedMap g(s, s, 0);
  for (size_t i = 0; i < s->dim(); ++i)
    for (size_t j = 0; j < s->dim(); ++j)
      if (s->degree(i) == s->degree(j)) g.set(i, j, q(uniform(rng, -3, 3)));
  return g;
}

}  // namespace

TEST(Graded, SpaceOrderAndLookup) {
  SpacePtr s = GradedSpace::make(QQ(), {{2, {"z"}}, {0, {"x", "y"}}});
  EXPECT_EQ(s->dim(), 3u);
  EXPECT_EQ(s->label(0), "x");
  EXPECT_EQ(s->degree(2), 2);
  EXPECT_EQ(s->dim_in(0), 2u);
  EXPECT_FALSE(s->find("w").has_value());
  EXPECT_THROW(GradedSpace::make(QQ(), {{0, {"x", "x"}}}), InputError);
}

TEST(Graded, ComposeIdentityAndZero) {
  Rng rng(1);
  SpacePtr s = two_two();
  GradedMap f = random_map(rng, s);
  EXPECT_EQ(compose_graded(GradedMap::identity(s), f), f);
  EXPECT_TRUE(compose_graded(GradedMap(s, s, 0), f).is_zero());
}

TEST(Graded, ComposeMatchesDenseProduct) {
  Rng rng(2);
  SpacePtr s = two_two();
  for (int t = 0; t < 10; ++t) {
    GradedMap f = random_map(rng, s), g = random_map(rng, s);
    EXPECT_EQ(compose_graded(g, f).matrix(), g.matrix() * f.matrix());
  }
}

TEST(Graded, ApplyMulti) {
  AlgebraPtr a = truncated_polynomial(QQ(), 3);
  SpacePtr V = a->space;
  EXPECT_EQ(a->op(2).apply({at(V, "1"), at(V, "x")}), vec(V, {{"x", 1}}));
  AlgebraPtr d = fix_d(QQ());
  EXPECT_EQ(d->op(2).apply({at(d->space, "e1"), at(d->space, "e2")}), vec(d->space, {{"e1e2", 1}}));
  EXPECT_EQ(d->op(2).apply({at(d->space, "e2"), at(d->space, "e1")}), vec(d->space, {{"e1e2", -1}}));
  EXPECT_TRUE(d->op(2).apply_vectors({SparseVec{}, vec(d->space, {{"e1", 1}})}).empty());
}

TEST(Graded, DegreeViolationRejected) {
  AlgebraPtr d = fix_d(QQ());
  MultiOp m = MultiOp::algebra(d->space, 2, 0);
  EXPECT_THROW(m.add({at(d->space, "e1"), at(d->space, "e2")}, at(d->space, "e1"), q(1)), DegreeViolation);
}

TEST(Graded, SuspensionRoundTrip) {
  Rng rng(3);
  const Ring* Q = QQ();
  for (int t = 0; t < 50; ++t) {
    AInfAlgebra a = random_algebra_ops(rng, Q);
    int k = uniform(rng, 1, 3);
    MultiOp m = random_op(rng, Shape::Algebra, std::vector<SpacePtr>(k, a.space), a.space, 2 - k);
    SpacePtr s = a.space->shifted(-1);
    MultiOp d = suspend_op(m, std::vector<SpacePtr>(k, s), s);
    EXPECT_EQ(d.degree(), 1);
    EXPECT_EQ(desuspend_op(d, std::vector<SpacePtr>(k, a.space), a.space), m);
  }
}

TEST(Graded, SuspensionDegreeForTernaryOp) {
  SpacePtr V = GradedSpace::make(QQ(), {{0, {"a"}}, {1, {"b"}}});
  MultiOp m3 = MultiOp::algebra(V, 3, -1);
  m3.add({0, 0, 1}, 0, q(1));
  SpacePtr s = V->shifted(-1);
  EXPECT_EQ(suspend_op(m3, {s, s, s}, s).degree(), 1);
}

TEST(Graded, SuspendedDifferentialSign) {
  SpacePtr V = GradedSpace::make(QQ(), {{0, {"a"}}, {1, {"b"}}});
  MultiOp m1 = MultiOp::algebra(V, 1, 1);
  m1.add({0}, 1, q(1));
  SpacePtr s = V->shifted(-1);
  MultiOp d1 = suspend_op(m1, {s}, s);
  // d(sa) = (-1)^{deg m1} s m1(a)
  EXPECT_EQ(d1.apply({0}), vec(s, {{"b", -1}}));
}

TEST(Graded, TensorBasisContract) {
  SpacePtr one = GradedSpace::make(QQ(), {{0, {"a"}}});
  EXPECT_EQ(tensor_basis({one}), std::vector<Key>({{0}}));
  SpacePtr xy = GradedSpace::make(QQ(), {{0, {"x", "y"}}});
  EXPECT_EQ(tensor_basis({xy, xy}), std::vector<Key>({{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
  SpacePtr n3 = GradedSpace::make(QQ(), {{1, {"p", "q", "r"}}});
  for (int k = 1; k <= 4; ++k) {
    size_t expect = 1;
    for (int i = 0; i < k; ++i) expect *= 3;
    EXPECT_EQ(tensor_basis(std::vector<SpacePtr>(k, n3)).size(), expect);
  }
}

TEST(Graded, PartialCompositionKoszulSign) {
  // odd b; inner op of degree 1 moved past b picks up -1
  SpacePtr V = GradedSpace::make(QQ(), {{0, {"a"}}, {1, {"b"}}, {2, {"c"}}});
  MultiOp outer = MultiOp::algebra(V, 2, 0);
  outer.add({1, 1}, 2, q(1));
  MultiOp inner = MultiOp::algebra(V, 1, 1);
  inner.add({0}, 1, q(1));
  MultiOp p1 = partial(outer, 1, inner);
  EXPECT_EQ(p1.apply({1, 0}), vec(V, {{"c", -1}}));
  MultiOp p0 = partial(outer, 0, inner);
  EXPECT_EQ(p0.apply({0, 1}), vec(V, {{"c", 1}}));
}

TEST(Graded, MorphismSignFormula) {
  // s = sum_{u>=2} (1 - i_u) sum_{v<u} i_v
  EXPECT_EQ(SignConvention::morphism({1, 1}), 0);
  EXPECT_EQ(SignConvention::morphism({2, 1}), 0);
  EXPECT_EQ(SignConvention::morphism({1, 2}), -1);
  EXPECT_EQ(SignConvention::morphism({2, 3}), -4);
  EXPECT_EQ(SignConvention::stasheff(1, 2, 1), 3);
}

TEST(Graded, SaturationBound) {
  AlgebraPtr t2 = fix_t2(QQ());
  // degree-1 generators feed ops of every arity
  EXPECT_FALSE(saturation_bound(*t2->space, nullptr, *t2->space, 2).has_value());
  AlgebraPtr dual = truncated_polynomial(QQ(), 2);
  AInfModule m = graded_free_module(dual, {0, 1, 2, 3});
  auto b = saturation_bound(*dual->space, m.space.get(), *m.space, 2);
  ASSERT_TRUE(b.has_value());
  EXPECT_EQ(*b, 5);
}
