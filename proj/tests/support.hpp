#pragma once

#include <gtest/gtest.h>

#include "ainf/bar.hpp"
#include "ainf/document.hpp"
#include "ainf/random.hpp"

namespace ainf {
inline void PrintTo(const Scalar& s, std::ostream* os) { *os << s.to_string(); }
inline void PrintTo(const MultiOp& m, std::ostream* os) { *os << to_json(m).dump(); }
inline void PrintTo(const Matrix& m, std::ostream* os) { *os << to_json(m).dump(); }
}  // namespace ainf

namespace ainf::test {

inline const Ring* QQ() { return Ring::rationals(); }
inline const Ring* QQh() { return Ring::poly(Ring::rationals()); }

inline int at(const SpacePtr& s, const std::string& l) { return static_cast<int>(s->index(l)); }

inline Scalar q(long v) { return Scalar::from_int(QQ(), v); }

// polynomial from low-to-high integer coefficients
inline Scalar px(const Ring* R, std::initializer_list<long> c) {
  Coeffs v;
  for (long x : c) v.push_back(mpq_class(x));
  return Scalar::from_poly(R, v);
}

inline SparseVec vec(const SpacePtr& s, std::initializer_list<std::pair<const char*, long>> terms) {
  SparseVec v;
  for (const auto& [l, c] : terms) v[at(s, l)] = Scalar::from_int(s->ring(), c);
  return v;
}

inline AlgebraPtr with_op(const AInfAlgebra& a, int k, const MultiOp& m) {
  auto b = std::make_shared<AInfAlgebra>(a);
  b->set_op(k, m);
  return b;
}

}  // namespace ainf::test
