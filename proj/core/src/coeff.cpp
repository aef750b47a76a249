#include "ainf/coeff.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <mutex>
#include <sstream>

namespace ainf {

namespace {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// reduce a rational into [0,p)
mpq_class mod_reduce(const mpq_class& v, std::uint64_t p) {
  mpz_class P(static_cast<unsigned long>(p));
  mpz_class n = v.get_num() % P;
  if (n < 0) n += P;
  mpz_class d = v.get_den() % P;
  if (d < 0) d += P;
  if (d == 0) throw NotInvertible("denominator " + v.get_den().get_str() + " not invertible mod " + std::to_string(p));
  mpz_class di;
  mpz_invert(di.get_mpz_t(), d.get_mpz_t(), P.get_mpz_t());
  mpz_class r = (n * di) % P;
  return mpq_class(r);
}

mpq_class field_norm(const Ring* f, const mpq_class& v) {
  if (f->kind() == RingKind::PrimeField) return mod_reduce(v, f->characteristic());
  mpq_class c = v;
  c.canonicalize();
  return c;
}

mpq_class field_inv(const Ring* f, const mpq_class& v) {
  if (v == 0) throw NotInvertible("division by zero");
  if (f->kind() == RingKind::PrimeField) return mod_reduce(mpq_class(1) / v, f->characteristic());
  return mpq_class(1) / v;
}

void strip(Coeffs& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

}  // namespace

// ---------------------------------------------------------------- Ring

const Ring* Ring::intern(Ring r) {
  static std::mutex mu;
  static std::deque<Ring> pool;
  std::lock_guard<std::mutex> lock(mu);
  for (const Ring& x : pool)
    if (x.kind_ == r.kind_ && x.p_ == r.p_ && x.base_ == r.base_ && x.order_ == r.order_ && x.var_ == r.var_) return &x;
  pool.push_back(std::move(r));
  return &pool.back();
}

const Ring* Ring::rationals() {
  static const Ring* q = intern(Ring{});
  return q;
}

const Ring* Ring::prime_field(std::uint64_t p) {
  if (!is_prime(p)) throw InputError("not a prime: " + std::to_string(p));
  Ring r;
  r.kind_ = RingKind::PrimeField;
  r.p_ = p;
  return intern(r);
}

const Ring* Ring::poly(const Ring* base, std::string var) {
  if (!base->is_base_field()) throw InputError("poly ring must wrap QQ or GF(p)");
  Ring r;
  r.kind_ = RingKind::Poly;
  r.p_ = base->p_;
  r.base_ = base;
  r.var_ = std::move(var);
  return intern(r);
}

const Ring* Ring::truncated(const Ring* base, int order, std::string var) {
  if (!base->is_base_field()) throw InputError("truncated ring must wrap QQ or GF(p)");
  if (order < 1) throw InputError("truncation order must be >= 1");
  Ring r;
  r.kind_ = RingKind::Truncated;
  r.p_ = base->p_;
  r.base_ = base;
  r.order_ = order;
  r.var_ = std::move(var);
  return intern(r);
}

const Ring* Ring::fraction(const Ring* poly_ring) {
  if (poly_ring->kind() != RingKind::Poly) throw InputError("fraction field is only formed over a poly ring");
  Ring r;
  r.kind_ = RingKind::Fraction;
  r.p_ = poly_ring->p_;
  r.base_ = poly_ring;
  r.var_ = poly_ring->var_;
  return intern(r);
}

const Ring* Ring::field() const {
  switch (kind_) {
    case RingKind::Rationals:
    case RingKind::PrimeField: return this;
    case RingKind::Poly:
    case RingKind::Truncated: return base_;
    case RingKind::Fraction: return base_->base_;
  }
  return this;
}

std::string Ring::descriptor() const {
  switch (kind_) {
    case RingKind::Rationals: return "QQ";
    case RingKind::PrimeField: return "GF(" + std::to_string(p_) + ")";
    case RingKind::Poly: return base_->descriptor() + "[" + var_ + "]";
    case RingKind::Truncated: return base_->descriptor() + "[" + var_ + "]/(" + var_ + "^" + std::to_string(order_) + ")";
    case RingKind::Fraction: return "Frac(" + base_->descriptor() + ")";
  }
  return "?";
}

std::string to_string(const Ring* r) { return r ? r->descriptor() : "<untyped>"; }

namespace {

const Ring* parse_field(std::string_view& s) {
  if (s.substr(0, 2) == "QQ") {
    s.remove_prefix(2);
    return Ring::rationals();
  }
  if (s.substr(0, 3) == "GF(") {
    auto close = s.find(')');
    if (close == std::string_view::npos) throw InputError("bad ring descriptor");
    std::string num(s.substr(3, close - 3));
    s.remove_prefix(close + 1);
    try {
      return Ring::prime_field(std::stoull(num));
    } catch (const std::logic_error&) {
      throw InputError("bad prime in ring descriptor: " + num);
    }
  }
  throw InputError("bad ring descriptor");
}

}  // namespace

const Ring* Ring::parse(std::string_view desc) {
  std::string_view s = desc;
  bool frac = false;
  if (s.substr(0, 5) == "Frac(") {
    if (s.back() != ')') throw InputError("bad ring descriptor: " + std::string(desc));
    s = s.substr(5, s.size() - 6);
    frac = true;
  }
  const Ring* f = parse_field(s);
  if (s.empty()) {
    if (frac) throw InputError("Frac needs a poly ring: " + std::string(desc));
    return f;
  }
  if (s.front() != '[') throw InputError("bad ring descriptor: " + std::string(desc));
  auto close = s.find(']');
  if (close == std::string_view::npos) throw InputError("bad ring descriptor: " + std::string(desc));
  std::string var(s.substr(1, close - 1));
  s.remove_prefix(close + 1);
  if (s.empty()) {
    const Ring* p = Ring::poly(f, var);
    return frac ? Ring::fraction(p) : p;
  }
  std::string tail = "/(" + var + "^";
  if (frac || s.substr(0, tail.size()) != tail || s.back() != ')') throw InputError("bad ring descriptor: " + std::string(desc));
  std::string num(s.substr(tail.size(), s.size() - tail.size() - 1));
  try {
    return Ring::truncated(f, std::stoi(num), var);
  } catch (const std::logic_error&) {
    throw InputError("bad ring descriptor: " + std::string(desc));
  }
}

// ---------------------------------------------------------------- poly helpers

namespace poly {

void normalize(const Ring* f, Coeffs& a) {
  for (auto& c : a) c = field_norm(f, c);
  strip(a);
}

Coeffs add(const Ring* f, const Coeffs& a, const Coeffs& b) {
  Coeffs r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < r.size(); ++i) {
    mpq_class v = 0;
    if (i < a.size()) v += a[i];
    if (i < b.size()) v += b[i];
    r[i] = v;
  }
  normalize(f, r);
  return r;
}

Coeffs sub(const Ring* f, const Coeffs& a, const Coeffs& b) {
  Coeffs r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < r.size(); ++i) {
    mpq_class v = 0;
    if (i < a.size()) v += a[i];
    if (i < b.size()) v -= b[i];
    r[i] = v;
  }
  normalize(f, r);
  return r;
}

Coeffs mul(const Ring* f, const Coeffs& a, const Coeffs& b) {
  if (a.empty() || b.empty()) return {};
  Coeffs r(a.size() + b.size() - 1, mpq_class(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  normalize(f, r);
  return r;
}

void divmod(const Ring* f, const Coeffs& a, const Coeffs& b, Coeffs& q, Coeffs& r) {
  if (b.empty()) throw NotInvertible("polynomial division by zero");
  r = a;
  q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, mpq_class(0));
  mpq_class lead_inv = field_inv(f, b.back());
  while (r.size() >= b.size() && !r.empty()) {
    size_t shift = r.size() - b.size();
    mpq_class c = field_norm(f, r.back() * lead_inv);
    q[shift] = c;
    for (size_t j = 0; j < b.size(); ++j) r[shift + j] = field_norm(f, r[shift + j] - c * b[j]);
    strip(r);
  }
  normalize(f, q);
}

Coeffs gcd(const Ring* f, const Coeffs& a, const Coeffs& b) {
  Coeffs x = a, y = b;
  while (!y.empty()) {
    Coeffs q, r;
    divmod(f, x, y, q, r);
    x = std::move(y);
    y = std::move(r);
  }
  if (!x.empty()) {
    mpq_class inv = field_inv(f, x.back());
    for (auto& c : x) c = field_norm(f, c * inv);
  }
  return x;
}

}  // namespace poly

// ---------------------------------------------------------------- Scalar

void Scalar::normalize() {
  if (!ring_) {
    c_.canonicalize();
    return;
  }
  const Ring* f = ring_->field();
  switch (ring_->kind()) {
    case RingKind::Rationals:
    case RingKind::PrimeField:
      c_ = field_norm(f, c_);
      num_.clear();
      den_.clear();
      return;
    case RingKind::Poly:
      poly::normalize(f, num_);
      den_.clear();
      break;
    case RingKind::Truncated:
      if (static_cast<int>(num_.size()) > ring_->order()) num_.resize(ring_->order());
      poly::normalize(f, num_);
      den_.clear();
      break;
    case RingKind::Fraction: {
      poly::normalize(f, num_);
      poly::normalize(f, den_);
      if (den_.empty()) throw NotInvertible("zero denominator");
      if (num_.empty()) {
        den_ = {mpq_class(1)};
        break;
      }
      Coeffs g = poly::gcd(f, num_, den_);
      Coeffs q, r;
      poly::divmod(f, num_, g, q, r);
      num_ = q;
      poly::divmod(f, den_, g, q, r);
      den_ = q;
      mpq_class inv = field_inv(f, den_.back());
      for (auto& c : num_) c = field_norm(f, c * inv);
      for (auto& c : den_) c = field_norm(f, c * inv);
      break;
    }
  }
  c_ = 0;
}

Scalar Scalar::zero(const Ring* r) { return from_int(r, 0); }
Scalar Scalar::one(const Ring* r) { return from_int(r, 1); }
Scalar Scalar::from_int(const Ring* r, long v) { return from_rational(r, mpq_class(v)); }

Scalar Scalar::from_rational(const Ring* r, const mpq_class& v) {
  Scalar s;
  s.ring_ = r;
  if (!r || r->is_base_field()) {
    s.c_ = v;
  } else {
    s.num_ = {v};
    if (r->kind() == RingKind::Fraction) s.den_ = {mpq_class(1)};
  }
  s.normalize();
  return s;
}

Scalar Scalar::from_poly(const Ring* r, Coeffs c) {
  if (!r || r->is_base_field()) throw RingMismatch("from_poly needs a polynomial-like ring, got " + ainf::to_string(r));
  Scalar s;
  s.ring_ = r;
  s.num_ = std::move(c);
  if (r->kind() == RingKind::Fraction) s.den_ = {mpq_class(1)};
  s.normalize();
  return s;
}

Scalar Scalar::from_fraction(const Ring* r, Coeffs num, Coeffs den) {
  if (!r || r->kind() != RingKind::Fraction) throw RingMismatch("from_fraction needs a fraction field");
  Scalar s;
  s.ring_ = r;
  s.num_ = std::move(num);
  s.den_ = std::move(den);
  s.normalize();
  return s;
}

Scalar Scalar::variable(const Ring* r) { return from_poly(r, {mpq_class(0), mpq_class(1)}); }

Scalar Scalar::coerce(const Ring* r) const {
  if (ring_ == r) return *this;
  if (!ring_) return from_rational(r, c_);
  if (!r) throw RingMismatch("cannot coerce to untyped");
  throw RingMismatch("ring mismatch: " + ring_->descriptor() + " vs " + r->descriptor());
}

namespace {

const Ring* common(const Scalar& a, const Scalar& b) {
  if (a.ring() == b.ring()) return a.ring();
  if (!a.ring()) return b.ring();
  if (!b.ring()) return a.ring();
  throw RingMismatch("ring mismatch: " + a.ring()->descriptor() + " vs " + b.ring()->descriptor());
}

}  // namespace

bool Scalar::is_zero() const {
  if (!ring_ || ring_->is_base_field()) return c_ == 0;
  return num_.empty();
}

bool Scalar::is_one() const {
  if (!ring_ || ring_->is_base_field()) return c_ == 1;
  if (num_.size() != 1 || num_[0] != 1) return false;
  return ring_->kind() != RingKind::Fraction || (den_.size() == 1 && den_[0] == 1);
}

bool Scalar::is_unit() const {
  if (!ring_ || ring_->is_field()) return !is_zero();
  if (ring_->kind() == RingKind::Poly) return num_.size() == 1;
  return !num_.empty() && num_[0] != 0;  // truncated: unit iff constant term nonzero
}

int Scalar::valuation() const {
  if (num_.empty()) return -1;
  int v = 0;
  while (num_[v] == 0) ++v;
  return v;
}

Scalar Scalar::operator+(const Scalar& o) const {
  if (ring_ == o.ring_ && (!ring_ || ring_->kind() == RingKind::Rationals)) {
    Scalar s;
    s.ring_ = ring_;
    s.c_ = c_ + o.c_;
    return s;
  }
  const Ring* r = common(*this, o);
  Scalar a = coerce(r), b = o.coerce(r);
  Scalar s;
  s.ring_ = r;
  if (!r || r->is_base_field()) {
    s.c_ = a.c_ + b.c_;
  } else if (r->kind() == RingKind::Fraction) {
    const Ring* f = r->field();
    s.num_ = poly::add(f, poly::mul(f, a.num_, b.den_), poly::mul(f, b.num_, a.den_));
    s.den_ = poly::mul(f, a.den_, b.den_);
  } else {
    s.num_ = poly::add(r->field(), a.num_, b.num_);
  }
  s.normalize();
  return s;
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  if (!ring_ || ring_->is_base_field()) {
    s.c_ = -c_;
  } else {
    for (auto& c : s.num_) c = -c;
  }
  s.normalize();
  return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  if (ring_ == o.ring_ && (!ring_ || ring_->kind() == RingKind::Rationals)) {
    Scalar s;
    s.ring_ = ring_;
    s.c_ = c_ * o.c_;
    return s;
  }
  const Ring* r = common(*this, o);
  Scalar a = coerce(r), b = o.coerce(r);
  Scalar s;
  s.ring_ = r;
  if (!r || r->is_base_field()) {
    s.c_ = a.c_ * b.c_;
  } else {
    const Ring* f = r->field();
    if (r->kind() == RingKind::Truncated) {
      // avoid computing terms past the truncation
      size_t n = static_cast<size_t>(r->order());
      Coeffs x = a.num_, y = b.num_;
      if (x.size() > n) x.resize(n);
      if (y.size() > n) y.resize(n);
      s.num_ = poly::mul(f, x, y);
    } else {
      s.num_ = poly::mul(f, a.num_, b.num_);
    }
    if (r->kind() == RingKind::Fraction) s.den_ = poly::mul(f, a.den_, b.den_);
  }
  s.normalize();
  return s;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw NotInvertible("inverse of zero");
  Scalar s;
  s.ring_ = ring_;
  if (!ring_ || ring_->is_base_field()) {
    s.c_ = ring_ ? field_inv(ring_, c_) : mpq_class(1) / c_;
  } else if (ring_->kind() == RingKind::Fraction) {
    s.num_ = den_;
    s.den_ = num_;
  } else if (ring_->kind() == RingKind::Poly) {
    if (num_.size() != 1) throw NotInvertible("polynomial " + to_string() + " is not a unit");
    s.num_ = {field_inv(ring_->field(), num_[0])};
  } else {
    // power series inverse mod h^N
    if (num_[0] == 0) throw NotInvertible("truncated series with zero constant term");
    const Ring* f = ring_->field();
    int n = ring_->order();
    Coeffs inv(n, mpq_class(0));
    mpq_class c0 = field_inv(f, num_[0]);
    inv[0] = c0;
    for (int k = 1; k < n; ++k) {
      mpq_class acc = 0;
      for (int j = 1; j <= k; ++j)
        if (j < static_cast<int>(num_.size())) acc += num_[j] * inv[k - j];
      inv[k] = field_norm(f, -acc * c0);
    }
    s.num_ = inv;
  }
  s.normalize();
  return s;
}

bool Scalar::operator==(const Scalar& o) const {
  if (ring_ != o.ring_) {
    if (ring_ && o.ring_) return false;
    const Ring* r = ring_ ? ring_ : o.ring_;
    return coerce(r) == o.coerce(r);
  }
  if (!ring_ || ring_->is_base_field()) return c_ == o.c_;
  return num_ == o.num_ && den_ == o.den_;
}

namespace {

std::string coeff_list(const Coeffs& c) {
  std::string s = "[";
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += c[i].get_str();
  }
  return s + "]";
}

Coeffs parse_coeff_list(const Ring* f, std::string_view t) {
  if (t.size() < 2 || t.front() != '[' || t.back() != ']') throw InputError("expected coefficient list, got '" + std::string(t) + "'");
  t = t.substr(1, t.size() - 2);
  Coeffs out;
  while (!t.empty()) {
    auto comma = t.find(',');
    std::string item(t.substr(0, comma));
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    mpq_class v;
    if (item.empty() || v.set_str(item, 10) != 0) throw InputError("bad coefficient '" + item + "'");
    v.canonicalize();
    out.push_back(field_norm(f, v));
    if (comma == std::string_view::npos) break;
    t.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

std::string Scalar::to_string() const {
  if (!ring_ || ring_->kind() == RingKind::Rationals) return c_.get_str();
  if (ring_->kind() == RingKind::PrimeField) return c_.get_str() + " mod " + std::to_string(ring_->characteristic());
  if (ring_->kind() == RingKind::Fraction) return coeff_list(num_) + "/" + coeff_list(den_);
  return coeff_list(num_);
}

Scalar Scalar::parse(const Ring* r, std::string_view text) {
  std::string t(text);
  t.erase(std::remove_if(t.begin(), t.end(), ::isspace), t.end());
  if (!r || r->is_base_field()) {
    if (r && r->kind() == RingKind::PrimeField) {
      auto pos = t.find("mod");
      if (pos != std::string::npos) {
        std::string pstr = t.substr(pos + 3);
        if (pstr != std::to_string(r->characteristic())) throw InputError("modulus mismatch in '" + std::string(text) + "'");
        t = t.substr(0, pos);
      }
    }
    mpq_class v;
    if (t.empty() || v.set_str(t, 10) != 0) throw InputError("bad scalar '" + std::string(text) + "'");
    v.canonicalize();
    return from_rational(r, v);
  }
  const Ring* f = r->field();
  if (r->kind() == RingKind::Fraction) {
    auto slash = t.find("]/[");
    if (slash == std::string::npos) return from_poly(r, parse_coeff_list(f, t));
    return from_fraction(r, parse_coeff_list(f, t.substr(0, slash + 1)), parse_coeff_list(f, t.substr(slash + 2)));
  }
  if (!t.empty() && t.front() != '[') {
    mpq_class v;
    if (v.set_str(t, 10) != 0) throw InputError("bad scalar '" + std::string(text) + "'");
    v.canonicalize();
    return from_rational(r, v);
  }
  return from_poly(r, parse_coeff_list(f, t));
}

Scalar pow(const Scalar& s, unsigned e) {
  Scalar r = Scalar::one(s.ring());
  Scalar b = s;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

Scalar sign(const Ring* r, long e) { return Scalar::from_int(r, (e % 2 == 0) ? 1 : -1); }

Scalar eval_at(const Scalar& s, const Scalar& point) {
  const Ring* r = s.ring();
  if (!r || r->is_base_field()) throw RingMismatch("eval_at needs a polynomial ring, got " + to_string(r));
  const Ring* f = r->field();
  Scalar a = point.coerce(f);
  if (r->kind() == RingKind::Truncated && !a.is_zero())
    throw RingMismatch("evaluation of a truncated ring is only a homomorphism at 0");
  auto horner = [&](const Coeffs& c) {
    Scalar acc = Scalar::zero(f);
    for (size_t i = c.size(); i-- > 0;) acc = acc * a + Scalar::from_rational(f, c[i]);
    return acc;
  };
  if (r->kind() == RingKind::Fraction) {
    Scalar d = horner(s.den());
    if (d.is_zero()) throw NotInvertible("denominator vanishes at evaluation point");
    return horner(s.num()) / d;
  }
  return horner(s.num());
}

// ---------------------------------------------------------------- morphisms

RingMorphism RingMorphism::identity(const Ring* r) { return {MorphismKind::Identity, r, r, {}}; }

RingMorphism RingMorphism::eval_at(const Ring* poly_ring, const Scalar& point) {
  if (!poly_ring->is_polynomial_like() && poly_ring->kind() != RingKind::Fraction)
    throw RingMismatch("evaluation needs a polynomial ring");
  return {MorphismKind::EvalAt, poly_ring, poly_ring->field(), point.coerce(poly_ring->field())};
}

RingMorphism RingMorphism::quotient(const Ring* source, int order) {
  if (!source->is_polynomial_like()) throw RingMismatch("quotient by h^N needs a polynomial ring");
  if (source->kind() == RingKind::Truncated && order > source->order()) throw RingMismatch("cannot enlarge truncation");
  return {MorphismKind::Quotient, source, Ring::truncated(source->field(), order, source->var()), {}};
}

RingMorphism RingMorphism::fraction_embed(const Ring* poly_ring) {
  return {MorphismKind::FractionEmbed, poly_ring, Ring::fraction(poly_ring), {}};
}

RingMorphism RingMorphism::mod_p(const Ring* source, std::uint64_t p) {
  const Ring* fp = Ring::prime_field(p);
  const Ring* target = nullptr;
  if (source->kind() == RingKind::Rationals) target = fp;
  else if (source->kind() == RingKind::Poly && source->field()->kind() == RingKind::Rationals) target = Ring::poly(fp, source->var());
  else if (source->kind() == RingKind::Truncated && source->field()->kind() == RingKind::Rationals)
    target = Ring::truncated(fp, source->order(), source->var());
  else throw RingMismatch("mod-p reduction needs rational coefficients");
  return {MorphismKind::ModP, source, target, {}};
}

RingMorphism RingMorphism::constant(const Ring* field, const Ring* target) {
  if (!field->is_base_field() || target->field() != field) throw RingMismatch("constant embedding needs the ground field");
  return {MorphismKind::Constant, field, target, {}};
}

RingMorphism RingMorphism::parse(const Ring* source, std::string_view text) {
  std::string t(text);
  if (t == "id" || t == "identity") return identity(source);
  if (t == "frac") return fraction_embed(source);
  if (t.rfind("eval:", 0) == 0) return eval_at(source, Scalar::parse(source->field(), t.substr(5)));
  if (t.rfind("trunc:", 0) == 0) return quotient(source, std::stoi(t.substr(6)));
  if (t.rfind("mod:", 0) == 0) return mod_p(source, std::stoull(t.substr(4)));
  throw InputError("unknown ring morphism '" + t + "'");
}

Scalar RingMorphism::operator()(const Scalar& s0) const {
  Scalar s = s0.coerce(source);
  switch (kind) {
    case MorphismKind::Identity: return s;
    case MorphismKind::EvalAt: return ainf::eval_at(s, point);
    case MorphismKind::Quotient: return Scalar::from_poly(target, s.num());
    case MorphismKind::FractionEmbed: return Scalar::from_poly(target, s.num());
    case MorphismKind::ModP:
      if (source->is_base_field()) return Scalar::from_rational(target, s.value());
      return Scalar::from_poly(target, s.num());
    case MorphismKind::Constant: return Scalar::from_rational(target, s.value());
  }
  return s;
}

Scalar base_change_scalar(const Scalar& s, const RingMorphism& phi) { return phi(s); }

}  // namespace ainf
