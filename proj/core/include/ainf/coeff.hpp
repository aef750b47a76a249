#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ainf {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// bad user input: malformed data, unknown fields, shape problems
struct InputError : Error {
  using Error::Error;
};
struct RingMismatch : Error {
  using Error::Error;
};
struct NotInvertible : Error {
  using Error::Error;
};

enum class RingKind { Rationals, PrimeField, Poly, Truncated, Fraction };

// Rings are interned; compare by pointer.
class Ring {
 public:
  static const Ring* rationals();
  static const Ring* prime_field(std::uint64_t p);
  static const Ring* poly(const Ring* base, std::string var = "h");
  static const Ring* truncated(const Ring* base, int order, std::string var = "h");
  static const Ring* fraction(const Ring* poly_ring);
  static const Ring* parse(std::string_view desc);

  RingKind kind() const { return kind_; }
  std::uint64_t characteristic() const { return p_; }
  // ground field (QQ or GF(p)) underneath everything
  const Ring* field() const;
  // for Poly/Truncated: coefficient field; for Fraction: the polynomial ring
  const Ring* base() const { return base_; }
  int order() const { return order_; }
  const std::string& var() const { return var_; }
  bool is_field() const { return kind_ == RingKind::Rationals || kind_ == RingKind::PrimeField || kind_ == RingKind::Fraction; }
  bool is_base_field() const { return kind_ == RingKind::Rationals || kind_ == RingKind::PrimeField; }
  bool is_polynomial_like() const { return kind_ == RingKind::Poly || kind_ == RingKind::Truncated; }
  std::string descriptor() const;

 private:
  Ring() = default;
  RingKind kind_ = RingKind::Rationals;
  std::uint64_t p_ = 0;
  const Ring* base_ = nullptr;
  int order_ = 0;
  std::string var_;
  static const Ring* intern(Ring r);
};

std::string to_string(const Ring* r);

using Coeffs = std::vector<mpq_class>;

class Scalar {
 public:
  Scalar() = default;  // untyped 0
  Scalar(long v) : c_(v) {}
  Scalar(const mpq_class& v) : c_(v) { c_.canonicalize(); }

  static Scalar zero(const Ring* r);
  static Scalar one(const Ring* r);
  static Scalar from_int(const Ring* r, long v);
  static Scalar from_rational(const Ring* r, const mpq_class& v);
  static Scalar from_poly(const Ring* r, Coeffs c);
  static Scalar from_fraction(const Ring* r, Coeffs num, Coeffs den);
  static Scalar variable(const Ring* r);
  static Scalar parse(const Ring* r, std::string_view text);

  const Ring* ring() const { return ring_; }
  bool typed() const { return ring_ != nullptr; }
  Scalar coerce(const Ring* r) const;

  bool is_zero() const;
  bool is_one() const;
  bool is_unit() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar inverse() const;
  Scalar operator/(const Scalar& o) const { return *this * o.inverse(); }
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  // field value, valid for base-field rings and untyped constants
  const mpq_class& value() const { return c_; }
  // coefficient lists for Poly/Truncated/Fraction
  const Coeffs& num() const { return num_; }
  const Coeffs& den() const { return den_; }
  int poly_degree() const { return static_cast<int>(num_.size()) - 1; }
  // h-adic valuation of a polynomial-like value; -1 for zero
  int valuation() const;

  std::string to_string() const;

 private:
  const Ring* ring_ = nullptr;
  mpq_class c_;
  Coeffs num_, den_;
  void normalize();
};

Scalar pow(const Scalar& s, unsigned e);
Scalar sign(const Ring* r, long e);  // (-1)^e

// evaluation of a polynomial-like scalar (or fraction) at a field point
Scalar eval_at(const Scalar& s, const Scalar& point);

enum class MorphismKind { Identity, EvalAt, Quotient, FractionEmbed, ModP, Constant };

// Ring homomorphisms used for base change.
struct RingMorphism {
  MorphismKind kind = MorphismKind::Identity;
  const Ring* source = nullptr;
  const Ring* target = nullptr;
  Scalar point;  // EvalAt

  static RingMorphism identity(const Ring* r);
  static RingMorphism eval_at(const Ring* poly_ring, const Scalar& point);
  static RingMorphism quotient(const Ring* source, int order);
  static RingMorphism fraction_embed(const Ring* poly_ring);
  static RingMorphism mod_p(const Ring* source, std::uint64_t p);
  static RingMorphism constant(const Ring* field, const Ring* target);
  static RingMorphism parse(const Ring* source, std::string_view text);

  Scalar operator()(const Scalar& s) const;
};

Scalar base_change_scalar(const Scalar& s, const RingMorphism& phi);

// polynomial helpers over a base field (QQ or GF(p)); exposed for hbar
namespace poly {
void normalize(const Ring* field, Coeffs& a);
Coeffs add(const Ring* field, const Coeffs& a, const Coeffs& b);
Coeffs sub(const Ring* field, const Coeffs& a, const Coeffs& b);
Coeffs mul(const Ring* field, const Coeffs& a, const Coeffs& b);
// a = q*b + r
void divmod(const Ring* field, const Coeffs& a, const Coeffs& b, Coeffs& q, Coeffs& r);
Coeffs gcd(const Ring* field, const Coeffs& a, const Coeffs& b);
}  // namespace poly

}  // namespace ainf
