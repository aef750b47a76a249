#include "support.hpp"

using namespace ainf;
using namespace ainf::test;

TEST(Coeff, EvalAtConstantTerm) {
  Scalar p = px(QQh(), {1, 0, 1});
  EXPECT_EQ(eval_at(p, q(0)), q(1));
  EXPECT_EQ(eval_at(p, q(1)), q(2));
}

TEST(Coeff, EvalAtModFive) {
  const Ring* F5 = Ring::prime_field(5);
  const Ring* R = Ring::poly(F5);
  Scalar p = Scalar::from_poly(R, {mpq_class(-2), mpq_class(3)});
  EXPECT_TRUE(eval_at(p, Scalar::from_int(F5, 4)).is_zero());
}

TEST(Coeff, FractionEmbedAndReduce) {
  const Ring* F = Ring::fraction(QQh());
  RingMorphism emb = RingMorphism::fraction_embed(QQh());
  Scalar h = emb(Scalar::variable(QQh()));
  EXPECT_EQ(h.num(), Coeffs({0, 1}));
  EXPECT_EQ(h.den(), Coeffs({1}));
  EXPECT_TRUE(emb(Scalar::zero(QQh())).is_zero());
  Scalar r = emb(px(QQh(), {-1, 0, 1})) / emb(px(QQh(), {-1, 1}));
  EXPECT_EQ(r, Scalar::from_fraction(F, {1, 1}, {1}));
  EXPECT_EQ(r.den(), Coeffs({1}));
}

TEST(Coeff, BaseChangeExamples) {
  RingMorphism tr = RingMorphism::quotient(QQh(), 2);
  EXPECT_TRUE(tr(px(QQh(), {0, 0, 0, 1})).is_zero());
  RingMorphism m5 = RingMorphism::mod_p(QQ(), 5);
  Scalar half = m5(Scalar::from_rational(QQ(), mpq_class(1, 2)));
  EXPECT_EQ(half, Scalar::from_int(Ring::prime_field(5), 3));
  Scalar h = Scalar::variable(QQh());
  EXPECT_EQ(RingMorphism::identity(QQh())(h), h);
}

TEST(Coeff, PrimeFieldArithmetic) {
  const Ring* F7 = Ring::prime_field(7);
  Scalar a = Scalar::from_int(F7, 3);
  EXPECT_EQ(a * a.inverse(), Scalar::one(F7));
  EXPECT_EQ(a + Scalar::from_int(F7, 4), Scalar::zero(F7));
  EXPECT_THROW(Scalar::zero(F7).inverse(), NotInvertible);
}

TEST(Coeff, TruncatedRingKillsHighPowers) {
  const Ring* T = Ring::truncated(QQ(), 3);
  Scalar h = Scalar::variable(T);
  EXPECT_FALSE((h * h).is_zero());
  EXPECT_TRUE((h * h * h).is_zero());
  Scalar u = Scalar::one(T) + h;
  EXPECT_TRUE(u.is_unit());
  EXPECT_EQ(u * u.inverse(), Scalar::one(T));
  EXPECT_FALSE(h.is_unit());
}

TEST(Coeff, RingInterningAndDescriptors) {
  EXPECT_EQ(Ring::parse("QQ[h]"), QQh());
  EXPECT_EQ(Ring::parse("GF(5)"), Ring::prime_field(5));
  EXPECT_EQ(Ring::parse("QQ[h]/(h^4)"), Ring::truncated(QQ(), 4));
  EXPECT_EQ(Ring::parse("Frac(QQ[h])"), Ring::fraction(QQh()));
  for (const char* d : {"QQ", "GF(11)", "QQ[t]", "GF(3)[h]/(h^2)", "Frac(QQ[h])"})
    EXPECT_EQ(Ring::parse(d)->descriptor(), d);
  EXPECT_THROW(Ring::parse("ZZ"), InputError);
  EXPECT_THROW(Ring::parse("GF(4)"), InputError);
}

TEST(Coeff, ScalarTextRoundTrip) {
  std::vector<Scalar> xs{Scalar::from_rational(QQ(), mpq_class(-3, 4)), Scalar::from_int(Ring::prime_field(5), 2),
                         px(QQh(), {1, 0, -2}), Scalar::from_fraction(Ring::fraction(QQh()), {1}, {0, 1})};
  for (const Scalar& x : xs) EXPECT_EQ(Scalar::parse(x.ring(), x.to_string()), x) << x.to_string();
  EXPECT_THROW(Scalar::parse(QQ(), "1/0x"), InputError);
}

TEST(Coeff, PolynomialGcdAndDivision) {
  const Ring* F = QQ();
  Coeffs a{-1, 0, 1}, b{1, 1}, qc, rc;
  poly::divmod(F, a, b, qc, rc);
  EXPECT_EQ(qc, Coeffs({-1, 1}));
  EXPECT_TRUE(rc.empty());
  EXPECT_EQ(poly::gcd(F, a, Coeffs{-1, 1}), Coeffs({-1, 1}));
}

TEST(Coeff, RingMismatchIsLoud) {
  EXPECT_THROW(q(1) + Scalar::one(Ring::prime_field(3)), RingMismatch);
}

TEST(Coeff, ValuationAndSign) {
  EXPECT_EQ(px(QQh(), {0, 0, 3, 1}).valuation(), 2);
  EXPECT_EQ(Scalar::zero(QQh()).valuation(), -1);
  EXPECT_EQ(sign(QQ(), 3), q(-1));
  EXPECT_EQ(sign(QQ(), -2), q(1));
}
