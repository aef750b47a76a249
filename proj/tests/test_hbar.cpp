#include "support.hpp"

using namespace ainf;
using namespace ainf::test;

namespace {

Matrix mat(const Ring* R, std::vector<std::vector<Scalar>> rows) {
  Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size(), R);
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
  return m;
}

PolyComplex two_term(const Matrix& d) {
  PolyComplex c{d.ring(), {{0, d.cols()}, {1, d.rows()}}, {{0, d}}};
  c.validate();
  return c;
}

}  // namespace

TEST(Hbar, DiagonalSmithForm) {
  const Ring* P = QQh();
  Matrix a = mat(P, {{px(P, {0, 1}), Scalar::zero(P)}, {Scalar::zero(P), px(P, {0, 0, 1})}});
  SmithForm s = smith_normal_form(a);
  EXPECT_TRUE(is_valid_smith(a, s));
  EXPECT_EQ(s.rank, 2u);
  std::vector<Scalar> inv = s.invariants();
  ASSERT_EQ(inv.size(), 2u);
  EXPECT_EQ(inv[0], px(P, {0, 1}));
  EXPECT_EQ(inv[1], px(P, {0, 0, 1}));
  EXPECT_EQ(s.U * s.D * s.V, a);
}

TEST(Hbar, NonDividingDiagonalIsRebalanced) {
  const Ring* P = QQh();
  // diag(h + 1, h): coprime, so the form is diag(1, h(h+1))
  Matrix a = mat(P, {{px(P, {1, 1}), Scalar::zero(P)}, {Scalar::zero(P), px(P, {0, 1})}});
  SmithForm s = smith_normal_form(a);
  std::string why;
  EXPECT_TRUE(is_valid_smith(a, s, &why)) << why;
  std::vector<Scalar> inv = s.invariants();
  ASSERT_EQ(inv.size(), 2u);
  EXPECT_EQ(inv[0], Scalar::one(P));
  EXPECT_EQ(inv[1], px(P, {0, 1, 1}));
}

TEST(Hbar, RandomSmithForms) {
  Rng rng(41);
  const Ring* P = QQh();
  for (int t = 0; t < 100; ++t) {
    size_t r = uniform(rng, 1, 5), c = uniform(rng, 1, 5);
    Matrix a = random_poly_matrix(rng, P, r, c, 4);
    SmithForm s = smith_normal_form(a);
    std::string why;
    ASSERT_TRUE(is_valid_smith(a, s, &why)) << why;
    EXPECT_EQ(s.U * s.D * s.V, a);
    EXPECT_EQ(s.P * a * s.Q, s.D);
    EXPECT_EQ(s.rank, generic_rank(a));
  }
}

TEST(Hbar, TimesHComplex) {
  const Ring* P = QQh();
  PolyComplex c = two_term(mat(P, {{px(P, {0, 1})}}));
  PolyCohomology h = poly_cohomology(c);
  EXPECT_EQ(h.free_rank[0], 0u);
  EXPECT_EQ(h.free_rank[1], 0u);
  EXPECT_EQ(h.torsion[1], std::vector<int>{1});
  FreenessReport f = freeness_test(c);
  EXPECT_FALSE(f.free);
  EXPECT_EQ(f.dims.generic[0], 0u);
  EXPECT_EQ(f.dims.special[0], 1u);
  EXPECT_EQ(f.dims.generic[1], 0u);
  EXPECT_EQ(f.dims.special[1], 1u);
}

TEST(Hbar, SquareTorsion) {
  const Ring* P = QQh();
  Matrix d = mat(P, {{px(P, {0, 1}), Scalar::zero(P)}, {Scalar::zero(P), px(P, {0, 0, 1})}});
  PolyCohomology h = poly_cohomology(two_term(d));
  EXPECT_EQ(h.torsion[1], (std::vector<int>{1, 2}));
}

TEST(Hbar, NonHAdicFactorIsNotTorsionHere) {
  // h + 1 is a unit in k[[h]]
  const Ring* P = QQh();
  PolyComplex c = two_term(mat(P, {{px(P, {1, 1})}}));
  PolyCohomology h = poly_cohomology(c);
  EXPECT_TRUE(h.torsion[1].empty());
  EXPECT_TRUE(freeness_test(c).free);
}

TEST(Hbar, ZeroDifferential) {
  const Ring* P = QQh();
  PolyComplex c = two_term(Matrix(2, 3, P));
  PolyCohomology h = poly_cohomology(c);
  EXPECT_EQ(h.free_rank[0], 3u);
  EXPECT_EQ(h.free_rank[1], 2u);
  EXPECT_TRUE(freeness_test(c).free);
}

TEST(Hbar, PidSolve) {
  const Ring* P = QQh();
  Matrix a = mat(P, {{px(P, {0, 1}), Scalar::zero(P)}, {Scalar::zero(P), px(P, {0, 0, 1})}});
  auto x = pid_solve(a, {px(P, {0, 1, 1}), px(P, {0, 0, 3})});
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ((*x)[0], px(P, {1, 1}));
  EXPECT_EQ((*x)[1], px(P, {3}));
  EXPECT_FALSE(pid_solve(a, {Scalar::one(P), Scalar::zero(P)}).has_value());
}

TEST(Hbar, RandomComplexesFreenessAndSemicontinuity) {
  Rng rng(43);
  const Ring* P = QQh();
  for (int t = 0; t < 50; ++t) {
    PolyComplex c = random_poly_complex(rng, P);
    c.validate();
    FreenessReport f = freeness_test(c);
    bool torsion_free = true;
    for (const auto& [i, ts] : f.cohomology.torsion)
      if (!ts.empty()) torsion_free = false;
    EXPECT_EQ(f.free, torsion_free);
    long euler_g = 0, euler_s = 0, euler_r = 0;
    for (const auto& [i, n] : c.ranks) {
      EXPECT_GE(f.dims.special[i], f.dims.generic[i]);
      EXPECT_EQ(f.dims.generic[i], f.cohomology.free_rank[i]);
      // special fibre = free part plus two copies of each torsion summand's degree shift
      size_t extra = f.cohomology.torsion[i].size() + f.cohomology.torsion[i + 1].size();
      EXPECT_EQ(f.dims.special[i], f.dims.generic[i] + extra);
      long sg = i % 2 ? -1 : 1;
      euler_g += sg * static_cast<long>(f.dims.generic[i]);
      euler_s += sg * static_cast<long>(f.dims.special[i]);
      euler_r += sg * static_cast<long>(n);
    }
    EXPECT_EQ(euler_g, euler_r);
    EXPECT_EQ(euler_s, euler_r);
    EXPECT_EQ(f.free, f.jumps.empty());
  }
}

TEST(Hbar, RankAtPoints) {
  const Ring* P = QQh();
  Matrix a = mat(P, {{px(P, {0, 1}), px(P, {1})}, {px(P, {0, 1}), px(P, {1})}});
  EXPECT_EQ(generic_rank(a), 1u);
  EXPECT_EQ(rank_at(a, q(0)), 1u);
  Matrix b = mat(P, {{px(P, {-1, 1}), Scalar::zero(P)}, {Scalar::zero(P), px(P, {2})}});
  EXPECT_EQ(generic_rank(b), 2u);
  EXPECT_EQ(rank_at(b, q(1)), 1u);
  EXPECT_EQ(rank_at(b, q(0)), 2u);
}
