#include "ainf/hbar.hpp"

#include <algorithm>

namespace ainf {

namespace {

void require_poly(const Ring* R, const char* what) {
  if (!R || R->kind() != RingKind::Poly) throw RingMismatch(std::string(what) + " needs a polynomial ring k[h]");
}

void divmod(const Scalar& a, const Scalar& b, Scalar& q, Scalar& r) {
  const Ring* R = b.ring();
  Coeffs qc, rc;
  poly::divmod(R->base(), a.coerce(R).num(), b.num(), qc, rc);
  q = Scalar::from_poly(R, qc);
  r = Scalar::from_poly(R, rc);
}

int deg(const Scalar& s) { return s.is_zero() ? -1 : s.poly_degree(); }

Scalar leading(const Scalar& s) { return Scalar::from_rational(s.ring(), s.num().back()); }

struct Smith {
  Matrix A, P, Pinv, Q, Qinv;
  const Ring* R;
  size_t m, n;

  // row i += c * row t
  void row_add(size_t i, size_t t, const Scalar& c) {
    if (c.is_zero()) return;
    for (size_t j = 0; j < n; ++j) A.at(i, j) += c * A.at(t, j);
    for (size_t j = 0; j < m; ++j) P.at(i, j) += c * P.at(t, j);
    for (size_t j = 0; j < m; ++j) Pinv.at(j, t) -= c * Pinv.at(j, i);
  }
  void row_swap(size_t i, size_t t) {
    if (i == t) return;
    for (size_t j = 0; j < n; ++j) std::swap(A.at(i, j), A.at(t, j));
    for (size_t j = 0; j < m; ++j) std::swap(P.at(i, j), P.at(t, j));
    for (size_t j = 0; j < m; ++j) std::swap(Pinv.at(j, i), Pinv.at(j, t));
  }
  void row_scale(size_t i, const Scalar& u) {
    Scalar ui = u.inverse();
    for (size_t j = 0; j < n; ++j) A.at(i, j) *= u;
    for (size_t j = 0; j < m; ++j) P.at(i, j) *= u;
    for (size_t j = 0; j < m; ++j) Pinv.at(j, i) *= ui;
  }
  // col j += c * col t
  void col_add(size_t j, size_t t, const Scalar& c) {
    if (c.is_zero()) return;
    for (size_t i = 0; i < m; ++i) A.at(i, j) += c * A.at(i, t);
    for (size_t i = 0; i < n; ++i) Q.at(i, j) += c * Q.at(i, t);
    for (size_t i = 0; i < n; ++i) Qinv.at(t, i) -= c * Qinv.at(j, i);
  }
  void col_swap(size_t j, size_t t) {
    if (j == t) return;
    for (size_t i = 0; i < m; ++i) std::swap(A.at(i, j), A.at(i, t));
    for (size_t i = 0; i < n; ++i) std::swap(Q.at(i, j), Q.at(i, t));
    for (size_t i = 0; i < n; ++i) std::swap(Qinv.at(j, i), Qinv.at(t, i));
  }
};

}  // namespace

std::vector<Scalar> SmithForm::invariants() const {
  std::vector<Scalar> r;
  for (size_t i = 0; i < rank; ++i) r.push_back(D.at(i, i));
  return r;
}

SmithForm smith_normal_form(const Matrix& a) {
  const Ring* R = a.ring();
  require_poly(R, "Smith normal form");
  size_t m = a.rows(), n = a.cols();
  Smith s{a, Matrix::identity(m, R), Matrix::identity(m, R), Matrix::identity(n, R), Matrix::identity(n, R), R, m, n};
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < n; ++j) s.A.at(i, j) = s.A.at(i, j).coerce(R);
  size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    bool any = false;
    for (;;) {
      // smallest-degree pivot in the trailing block, made monic
      int best = -1;
      size_t bi = 0, bj = 0;
      for (size_t i = t; i < m; ++i)
        for (size_t j = t; j < n; ++j) {
          int d = deg(s.A.at(i, j));
          if (d >= 0 && (best < 0 || d < best)) best = d, bi = i, bj = j;
        }
      if (best < 0) break;
      any = true;
      s.row_swap(t, bi);
      s.col_swap(t, bj);
      s.row_scale(t, leading(s.A.at(t, t)).inverse());
      bool rem = false;
      for (size_t i = t + 1; i < m; ++i) {
        if (s.A.at(i, t).is_zero()) continue;
        Scalar q, r;
        divmod(s.A.at(i, t), s.A.at(t, t), q, r);
        s.row_add(i, t, -q);
        rem = rem || !r.is_zero();
      }
      for (size_t j = t + 1; j < n; ++j) {
        if (s.A.at(t, j).is_zero()) continue;
        Scalar q, r;
        divmod(s.A.at(t, j), s.A.at(t, t), q, r);
        s.col_add(j, t, -q);
        rem = rem || !r.is_zero();
      }
      if (rem) continue;
      // divisibility of the trailing block
      bool fixed = false;
      for (size_t i = t + 1; i < m && !fixed; ++i)
        for (size_t j = t + 1; j < n && !fixed; ++j) {
          if (s.A.at(i, j).is_zero()) continue;
          Scalar q, r;
          divmod(s.A.at(i, j), s.A.at(t, t), q, r);
          if (!r.is_zero()) {
            s.row_add(t, i, Scalar::one(R));
            fixed = true;
          }
        }
      if (!fixed) break;
    }
    if (!any) break;
  }
  SmithForm out;
  out.D = s.A;
  out.P = s.P;
  out.Q = s.Q;
  out.U = s.Pinv;
  out.V = s.Qinv;
  out.rank = t;
  return out;
}

bool is_valid_smith(const Matrix& a, const SmithForm& s, std::string* why) {
  auto fail = [&](const std::string& w) {
    if (why) *why = w;
    return false;
  };
  const Ring* R = a.ring();
  if (!(s.U * s.D * s.V == a)) return fail("U D V differs from the input");
  if (!(s.P * a * s.Q == s.D)) return fail("P A Q differs from D");
  if (!(s.U * s.P == Matrix::identity(a.rows(), R))) return fail("U is not the inverse of P");
  if (!(s.Q * s.V == Matrix::identity(a.cols(), R))) return fail("V is not the inverse of Q");
  for (size_t i = 0; i < s.D.rows(); ++i)
    for (size_t j = 0; j < s.D.cols(); ++j)
      if (i != j && !s.D.at(i, j).is_zero()) return fail("D is not diagonal");
  for (size_t i = 0; i < s.rank; ++i) {
    const Scalar& d = s.D.at(i, i);
    if (d.is_zero()) return fail("zero inside the rank block");
    if (d.num().back() != 1) return fail("invariant factor is not monic");
    if (i + 1 < s.rank) {
      Scalar q, r;
      divmod(s.D.at(i + 1, i + 1), d, q, r);
      if (!r.is_zero()) return fail("invariant factors do not divide each other");
    }
  }
  for (size_t i = s.rank; i < std::min(s.D.rows(), s.D.cols()); ++i)
    if (!s.D.at(i, i).is_zero()) return fail("nonzero entry past the rank");
  return true;
}

std::optional<std::vector<Scalar>> pid_solve(const Matrix& a, const std::vector<Scalar>& b) {
  const Ring* R = a.ring();
  require_poly(R, "pid_solve");
  SmithForm s = smith_normal_form(a);
  std::vector<Scalar> pb(a.rows(), Scalar::zero(R));
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.rows(); ++j) pb[i] += s.P.at(i, j) * b[j].coerce(R);
  std::vector<Scalar> y(a.cols(), Scalar::zero(R));
  for (size_t i = 0; i < a.rows(); ++i) {
    if (i < s.rank) {
      Scalar q, r;
      divmod(pb[i], s.D.at(i, i), q, r);
      if (!r.is_zero()) return std::nullopt;
      y[i] = q;
    } else if (!pb[i].is_zero()) {
      return std::nullopt;
    }
  }
  std::vector<Scalar> x(a.cols(), Scalar::zero(R));
  for (size_t i = 0; i < a.cols(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) x[i] += s.Q.at(i, j) * y[j];
  return x;
}

std::optional<SparseVec> pid_solve(const ColumnSystem& a, const SparseVec& b) {
  const Ring* R = a.ring;
  require_poly(R, "pid_solve");
  bool constant = true;
  for (const auto& c : a.columns)
    for (const auto& [i, x] : c)
      if (x.coerce(R).poly_degree() > 0) constant = false;
  if (constant) {
    // D has ground-field entries: solve one power of h at a time
    const Ring* F = R->base();
    RingMorphism at0 = RingMorphism::eval_at(R, Scalar::zero(F));
    ColumnSystem d0{F, a.rows, {}};
    for (const auto& c : a.columns) {
      SparseVec v;
      for (const auto& [i, x] : c) v[i] = at0(x.coerce(R));
      d0.columns.push_back(v);
    }
    int top = 0;
    for (const auto& [i, x] : b) top = std::max(top, x.coerce(R).poly_degree());
    SparseVec out;
    Scalar h = Scalar::variable(R);
    for (int e = 0; e <= top; ++e) {
      SparseVec be;
      for (const auto& [i, x] : b) {
        Coeffs c = x.coerce(R).num();
        if (e < static_cast<int>(c.size()) && c[e] != 0) be[i] = Scalar::from_rational(F, c[e]);
      }
      if (be.empty()) continue;
      auto xe = d0.solve(be);
      if (!xe) return std::nullopt;
      Scalar he = pow(h, static_cast<unsigned>(e));
      for (const auto& [j, x] : *xe) {
        Scalar& slot = out[j];
        slot = slot + Scalar::from_rational(R, x.value()) * he;
      }
    }
    SparseVec clean;
    for (auto& [j, x] : out)
      if (!x.is_zero()) clean[j] = x;
    return clean;
  }
  Matrix A(a.rows, a.columns.size(), R);
  for (size_t j = 0; j < a.columns.size(); ++j)
    for (const auto& [i, x] : a.columns[j]) A.at(i, j) = x;
  std::vector<Scalar> bv(a.rows, Scalar::zero(R));
  for (const auto& [i, x] : b) bv[i] = x;
  auto x = pid_solve(A, bv);
  if (!x) return std::nullopt;
  SparseVec out;
  for (size_t j = 0; j < x->size(); ++j)
    if (!(*x)[j].is_zero()) out[static_cast<int>(j)] = (*x)[j];
  return out;
}

// ---------------------------------------------------------------- complexes

size_t PolyComplex::rank(int i) const {
  auto it = ranks.find(i);
  return it == ranks.end() ? 0 : it->second;
}

Matrix PolyComplex::diff(int i) const {
  auto it = d.find(i);
  if (it != d.end()) return it->second;
  return Matrix(rank(i + 1), rank(i), ring);
}

void PolyComplex::validate() const {
  require_poly(ring, "poly complex");
  for (const auto& [i, m] : d) {
    if (m.rows() != rank(i + 1) || m.cols() != rank(i))
      throw InputError("differential " + std::to_string(i) + " has shape " + std::to_string(m.rows()) + "x" +
                       std::to_string(m.cols()) + ", expected " + std::to_string(rank(i + 1)) + "x" +
                       std::to_string(rank(i)));
    if (m.ring() != ring) throw RingMismatch("differential " + std::to_string(i) + " has the wrong ring");
  }
  for (const auto& [i, m] : d) {
    auto nx = d.find(i + 1);
    if (nx != d.end() && !(nx->second * m).is_zero()) throw InputError("d^2 != 0 at degree " + std::to_string(i));
  }
}

size_t rank_at(const Matrix& a, const Scalar& at) {
  const Ring* R = a.ring();
  RingMorphism phi = RingMorphism::eval_at(R, at);
  return rank(a.map_entries(phi));
}

size_t generic_rank(const Matrix& a) { return smith_normal_form(a).rank; }

namespace {

std::vector<int> degrees_of(const PolyComplex& c) {
  std::vector<int> out;
  for (const auto& [i, r] : c.ranks) out.push_back(i);
  return out;
}

}  // namespace

PolyCohomology poly_cohomology(const PolyComplex& c) {
  c.validate();
  PolyCohomology out;
  std::map<int, SmithForm> snf;
  for (int i : degrees_of(c)) snf[i] = smith_normal_form(c.diff(i));
  auto rk = [&](int i) -> size_t {
    auto it = snf.find(i);
    return it == snf.end() ? 0 : it->second.rank;
  };
  for (int i : degrees_of(c)) {
    out.free_rank[i] = c.rank(i) - rk(i) - rk(i - 1);
    std::vector<int> tors;
    auto it = snf.find(i - 1);
    if (it != snf.end())
      for (const auto& f : it->second.invariants()) {
        int v = f.valuation();
        if (v > 0) tors.push_back(v);
      }
    out.torsion[i] = tors;
  }
  return out;
}

FibreDims fibre_dims(const PolyComplex& c) {
  c.validate();
  FibreDims out;
  const Ring* F = c.ring->base();
  std::map<int, size_t> r0, rg;
  for (int i : degrees_of(c)) {
    Matrix m = c.diff(i);
    r0[i] = rank_at(m, Scalar::zero(F));
    rg[i] = rank(m.map_entries(RingMorphism::fraction_embed(c.ring)));
  }
  auto get = [](const std::map<int, size_t>& r, int i) -> size_t {
    auto it = r.find(i);
    return it == r.end() ? 0 : it->second;
  };
  for (int i : degrees_of(c)) {
    out.special[i] = c.rank(i) - get(r0, i) - get(r0, i - 1);
    out.generic[i] = c.rank(i) - get(rg, i) - get(rg, i - 1);
  }
  return out;
}

FreenessReport freeness_test(const PolyComplex& c) {
  FreenessReport r;
  r.dims = fibre_dims(c);
  r.cohomology = poly_cohomology(c);
  for (const auto& [i, d] : r.dims.special)
    if (d != r.dims.generic[i]) {
      r.free = false;
      r.jumps.push_back(i);
    }
  return r;
}

}  // namespace ainf
