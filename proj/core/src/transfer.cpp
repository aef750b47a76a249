#include "ainf/transfer.hpp"

#include <algorithm>
#include <random>

namespace ainf {

namespace {

Matrix sub_block(const Matrix& m, const std::vector<size_t>& rows, const std::vector<size_t>& cols) {
  Matrix b(rows.size(), cols.size(), m.ring());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) b.at(i, j) = m.at(rows[i], cols[j]);
  return b;
}

std::vector<Scalar> column_of(const Matrix& m, size_t j) {
  std::vector<Scalar> c(m.rows());
  for (size_t i = 0; i < m.rows(); ++i) c[i] = m.at(i, j);
  return c;
}

bool is_unit_vector(const std::vector<Scalar>& v, size_t& where) {
  int count = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    if (!v[i].is_one()) return false;
    where = i;
    ++count;
  }
  return count == 1;
}

Contraction canonical_contraction(const SpacePtr& V, const GradedMap& d) {
  const Ring* R = V->ring();
  if (!R->is_field()) throw RingMismatch("contraction needs a field; base change to the fraction field first");
  if (d.degree() != 1) throw ShapeMismatch("differential must have degree 1");
  if (!complex_is_valid(d)) throw InputError("differential does not square to zero");
  std::vector<int> degs = V->degrees();

  struct Piece {
    std::vector<size_t> idx;                       // global indices of degree i
    std::vector<size_t> pivots;                    // local pivot columns of d_i
    std::vector<std::vector<Scalar>> h_reps;       // local coordinates
    Matrix tinv;                                   // inverse of [H | B | C]
    size_t nb = 0;
  };
  std::map<int, Piece> pieces;
  for (int i : degs) {
    Piece p;
    p.idx = V->indices_in(i);
    auto next = V->indices_in(i + 1);
    Matrix di = sub_block(d.matrix(), next, p.idx);
    if (!next.empty()) p.pivots = row_reduce(di).pivots;
    pieces[i] = std::move(p);
  }
  // homology representatives and change of basis per degree
  std::vector<GradedSpace::Component> small_comps;
  std::map<int, std::vector<std::vector<Scalar>>> bvecs;
  for (int i : degs) {
    Piece& p = pieces[i];
    size_t n = p.idx.size();
    std::vector<std::vector<Scalar>> B;
    auto prev = pieces.find(i - 1);
    if (prev != pieces.end()) {
      Matrix dprev = sub_block(d.matrix(), p.idx, prev->second.idx);
      for (size_t j : prev->second.pivots) B.push_back(column_of(dprev, j));
    }
    bvecs[i] = B;
    auto next = V->indices_in(i + 1);
    Matrix di = next.empty() ? Matrix(0, n, R) : sub_block(d.matrix(), next, p.idx);
    Matrix K = kernel_basis(di);
    Echelon span(R);
    int tag = 0;
    for (const auto& b : B) {
      SparseVec sv;
      for (size_t r = 0; r < n; ++r)
        if (!b[r].is_zero()) sv[static_cast<int>(r)] = b[r];
      span.insert(sv, tag++);
    }
    for (size_t c = 0; c < K.cols(); ++c) {
      SparseVec sv;
      std::vector<Scalar> col = column_of(K, c);
      for (size_t r = 0; r < n; ++r)
        if (!col[r].is_zero()) sv[static_cast<int>(r)] = col[r];
      if (span.insert(sv, tag++)) p.h_reps.push_back(col);
    }
    p.nb = B.size();
    Matrix T(n, n, R);
    size_t c = 0;
    auto put = [&](const std::vector<Scalar>& v) {
      for (size_t r = 0; r < n; ++r) T.at(r, c) = v[r];
      ++c;
    };
    for (const auto& v : p.h_reps) put(v);
    for (const auto& v : B) put(v);
    for (size_t j : p.pivots) {
      std::vector<Scalar> e(n, Scalar::zero(R));
      e[j] = Scalar::one(R);
      put(e);
    }
    if (c != n) throw Error("contraction: decomposition has wrong size");
    p.tinv = inverse(T);
    if (!p.h_reps.empty()) {
      std::vector<std::string> labels;
      for (size_t k = 0; k < p.h_reps.size(); ++k) {
        size_t where;
        if (is_unit_vector(p.h_reps[k], where)) labels.push_back("[" + V->label(p.idx[where]) + "]");
        else labels.push_back("H" + std::to_string(i) + "_" + std::to_string(k));
      }
      small_comps.push_back({i, labels});
    }
  }
  SpacePtr S = GradedSpace::make(R, small_comps);
  Contraction c{V, S, d, GradedMap(S, V, 0), GradedMap(V, S, 0), GradedMap(V, V, -1)};
  for (int i : degs) {
    Piece& p = pieces[i];
    auto sidx = S->indices_in(i);
    for (size_t k = 0; k < p.h_reps.size(); ++k) {
      for (size_t r = 0; r < p.idx.size(); ++r) {
        c.incl.set(p.idx[r], sidx[k], p.h_reps[k][r]);
        c.proj.set(sidx[k], p.idx[r], p.tinv.at(k, r));
      }
    }
    auto prev = pieces.find(i - 1);
    if (prev == pieces.end()) continue;
    size_t nh = p.h_reps.size();
    for (size_t t = 0; t < p.nb; ++t) {
      size_t target = prev->second.idx[prev->second.pivots[t]];
      for (size_t r = 0; r < p.idx.size(); ++r) {
        const Scalar& x = p.tinv.at(nh + t, r);
        if (!x.is_zero()) c.htpy.set(target, p.idx[r], -x);
      }
    }
  }
  return c;
}

GradedMap random_basis_change(const SpacePtr& V, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-2, 2);
  const Ring* R = V->ring();
  GradedMap L(V, V, 0), U(V, V, 0);
  for (int deg : V->degrees()) {
    auto idx = V->indices_in(deg);
    for (size_t a = 0; a < idx.size(); ++a)
      for (size_t b = 0; b < idx.size(); ++b) {
        if (a == b) {
          L.set(idx[a], idx[b], Scalar::one(R));
          U.set(idx[a], idx[b], Scalar::one(R));
        } else if (a > b) {
          L.set(idx[a], idx[b], Scalar::from_int(R, dist(rng)));
        } else {
          U.set(idx[a], idx[b], Scalar::from_int(R, dist(rng)));
        }
      }
  }
  return compose_graded(L, U);
}

}  // namespace

Contraction contraction_from_complex(const SpacePtr& V, const GradedMap& d, const ContractionOptions& opt) {
  if (!opt.seed) return canonical_contraction(V, d);
  GradedMap P = random_basis_change(V, *opt.seed);
  GradedMap Pinv(V, V, 0, inverse(P.matrix()));
  GradedMap dc = compose_graded(Pinv, compose_graded(d, P));
  Contraction c = canonical_contraction(V, dc);
  Contraction out{V, c.small, d, compose_graded(P, c.incl), compose_graded(c.proj, Pinv), compose_graded(P, compose_graded(c.htpy, Pinv))};
  return out;
}

Contraction normalize_contraction(const Contraction& raw) {
  // work with H = -htpy, so that id - incl proj = dH + Hd
  const SpacePtr& V = raw.big;
  GradedMap H(V, V, -1);
  for (size_t i = 0; i < V->dim(); ++i)
    for (size_t j = 0; j < V->dim(); ++j) H.set(i, j, -raw.htpy.get(i, j));
  GradedMap D = compose_graded(raw.d, H) + compose_graded(H, raw.d);
  GradedMap H1 = compose_graded(D, compose_graded(H, D));
  GradedMap H2 = compose_graded(H1, compose_graded(raw.d, H1));
  Contraction c = raw;
  c.htpy = GradedMap(V, V, -1);
  for (size_t i = 0; i < V->dim(); ++i)
    for (size_t j = 0; j < V->dim(); ++j) c.htpy.set(i, j, -H2.get(i, j));
  return c;
}

bool verify_contraction(const Contraction& c, std::string* why, bool side) {
  auto fail = [&](const char* m) {
    if (why) *why = m;
    return false;
  };
  if (!complex_is_valid(c.d)) return fail("d^2 != 0");
  if (!(compose_graded(c.proj, c.incl) == GradedMap::identity(c.small))) return fail("proj incl != id");
  GradedMap lhs = compose_graded(c.incl, c.proj) - GradedMap::identity(c.big);
  GradedMap rhs = compose_graded(c.d, c.htpy) + compose_graded(c.htpy, c.d);
  if (!(lhs == rhs)) return fail("incl proj - id != d h + h d");
  if (!compose_graded(c.d, c.incl).is_zero()) return fail("incl is not a chain map");
  if (!compose_graded(c.proj, c.d).is_zero()) return fail("proj is not a chain map");
  if (side) {
    if (!compose_graded(c.htpy, c.incl).is_zero()) return fail("h incl != 0");
    if (!compose_graded(c.proj, c.htpy).is_zero()) return fail("proj h != 0");
    if (!compose_graded(c.htpy, c.htpy).is_zero()) return fail("h h != 0");
  }
  return true;
}

std::map<int, size_t> homology_dims(const GradedMap& d) {
  std::map<int, size_t> out;
  const SpacePtr& V = d.source();
  for (int i : V->degrees()) {
    auto idx = V->indices_in(i);
    auto next = V->indices_in(i + 1);
    auto prev = V->indices_in(i - 1);
    size_t ri = next.empty() ? 0 : rank(sub_block(d.matrix(), next, idx));
    size_t rp = prev.empty() ? 0 : rank(sub_block(d.matrix(), idx, prev));
    size_t h = idx.size() - ri - rp;
    if (h) out[i] = h;
  }
  return out;
}

CohomologyResult cohomology(const AInfAlgebra& a, const ContractionOptions& opt) {
  GradedMap d = differential(a);
  if (!complex_is_valid(d)) throw InputError("m1 m1 != 0, cohomology undefined");
  Contraction c = contraction_from_complex(a.space, d, opt);
  auto H = std::make_shared<AInfAlgebra>(c.small);
  if (a.has_op(2)) {
    MultiOp i = MultiOp::from_map(c.incl);
    MultiOp m2 = post_compose(c.proj, compose_tensor(a.ops.at(2), {&i, &i}));
    H->set_op(2, m2);
  }
  return {c, H};
}

namespace {

Scalar sgn(long e) { return Scalar(e % 2 == 0 ? 1 : -1); }

}  // namespace

AlgebraTransfer transfer_algebra(const AlgebraPtr& A, const Contraction& c, const TransferOptions& opt) {
  if (!A->saturated()) throw InputError("transfer needs a saturated algebra");
  require_same_space(c.big, A->space, "contraction over the algebra");
  if (!(c.d == differential(*A))) throw InputError("contraction differential is not m1");
  std::string why;
  if (!verify_contraction(c, &why)) throw InputError("bad contraction: " + why);
  CheckResult rel = check_alg_relations(*A);
  if (!rel.pass) throw InputError("transfer input fails relations: " + describe(rel));

  std::map<int, MultiOp> f;
  std::map<int, MultiOp> mh;
  f.emplace(1, MultiOp::from_map(c.incl));
  int TA = std::max(1, A->top_arity());
  int last = 1;
  bool saturated = false;
  int m = 2;
  for (;; ++m) {
    if (m > std::max(TA * last, 2 * last - 1)) {
      saturated = true;
      break;
    }
    if (m > opt.cap) break;
    MultiOp lam = MultiOp::algebra(c.small, m, 2 - m, A->space);
    // sum_{r>=2} (-1)^s m_r(f..f)
    std::map<int, MultiOp> higher;
    for (const auto& [k, op] : A->ops)
      if (k >= 2) higher.emplace(k, op);
    lam.add(morphism_tree_sum(higher, f, m, lam.zero_like()));
    for (const auto& [k, mk] : mh) {
      if (k >= m) break;
      for (int j = 0; j + k <= m; ++j) {
        int l = m - j - k;
        auto fo = f.find(j + 1 + l);
        if (fo == f.end()) continue;
        lam.add(partial(fo->second, j, mk), sgn(SignConvention::stasheff(j, k, l) + 1));
      }
    }
    MultiOp mm = post_compose(c.proj, lam);
    MultiOp fm = post_compose(c.htpy, lam);
    mm.set_shape(Shape::Algebra);
    fm.set_shape(Shape::Algebra);
    if (!mm.is_zero()) {
      mh.emplace(m, mm);
      last = m;
    }
    if (!fm.is_zero()) {
      f.emplace(m, fm);
      last = m;
    }
  }
  std::optional<int> trunc;
  if (!saturated) trunc = m - 1;
  auto H = std::make_shared<AInfAlgebra>(c.small, trunc);
  for (auto& [k, op] : mh) H->set_op(k, op);
  AlgMorphism F(H, A, trunc);
  for (auto& [k, op] : f) F.set_comp(k, op);
  return {H, F, saturated};
}

PairTransfer transfer_pair(const AlgebraPtr& A, const ModulePtr& M, const Contraction& ca, const Contraction& cm,
                           const TransferOptions& opt) {
  if (M->algebra != A && !same_space(M->algebra->space, A->space)) throw ShapeMismatch("module is not over the given algebra");
  if (!M->saturated()) throw InputError("transfer needs a saturated module");
  require_same_space(cm.big, M->space, "contraction over the module");
  if (!(cm.d == differential(*M))) throw InputError("module contraction differential is not m1");
  std::string why;
  if (!verify_contraction(cm, &why)) throw InputError("bad module contraction: " + why);
  CheckResult rel = check_mod_relations(*M);
  if (!rel.pass) throw InputError("transfer input module fails relations: " + describe(rel));

  AlgebraTransfer at = transfer_algebra(A, ca, opt);
  AInfModule R = restrict_along(at.f, *M);
  const AlgebraPtr& HA = at.minimal;

  std::map<int, MultiOp> g, mu;
  g.emplace(1, MultiOp::from_map(cm.incl, Shape::Module));
  int TR = std::max(1, R.top_arity());
  int THA = std::max(1, HA->top_arity());
  int last = 1;
  bool saturated = false;
  int m = 2;
  for (;; ++m) {
    if (at.saturated && R.saturated() && m > std::max({TR + last - 1, 2 * last - 1, last - 1 + THA})) {
      saturated = true;
      break;
    }
    if (m > opt.cap || (HA->truncation && m > *HA->truncation)) break;
    MultiOp lam = MultiOp::module(HA->space, cm.small, m, 2 - m, M->space);
    for (const auto& [r, gr] : g) {
      int s = m - r;
      if (s < 1) break;
      auto n = R.ops.find(s + 1);
      if (n == R.ops.end()) continue;
      lam.add(partial(n->second, 0, gr));
    }
    for (int k = 2; k <= m; ++k) {
      for (int j = 0; j + k <= m; ++j) {
        int l = m - j - k;
        if (j == 0 && k == m) continue;
        auto go = g.find(j + 1 + l);
        if (go == g.end()) continue;
        const std::map<int, MultiOp>& src = j == 0 ? mu : HA->ops;
        auto inner = src.find(k);
        if (inner == src.end()) continue;
        lam.add(partial(go->second, j, inner->second), sgn(SignConvention::stasheff(j, k, l) + 1));
      }
    }
    MultiOp mm = post_compose(cm.proj, lam);
    MultiOp gm = post_compose(cm.htpy, lam);
    mm.set_shape(Shape::Module);
    gm.set_shape(Shape::Module);
    if (!mm.is_zero()) {
      mu.emplace(m, mm);
      last = m;
    }
    if (!gm.is_zero()) {
      g.emplace(m, gm);
      last = m;
    }
  }
  std::optional<int> trunc;
  if (!saturated) trunc = m - 1;
  auto HM = std::make_shared<AInfModule>(HA, cm.small, trunc);
  for (auto& [k, op] : mu) HM->set_op(k, op);
  auto Rp = std::make_shared<AInfModule>(R);
  ModMorphism G(HM, Rp, trunc);
  for (auto& [k, op] : g) G.set_comp(k, op);
  PairTransfer out{at, HM, PairMorphism{at.f, G, M}, saturated};
  return out;
}

AlgebraTransfer minimal_model(const AlgebraPtr& a, const TransferOptions& opt) {
  return transfer_algebra(a, contraction_from_complex(a->space, differential(*a)), opt);
}

PairTransfer minimal_model(const AlgebraPtr& a, const ModulePtr& m, const TransferOptions& opt) {
  return transfer_pair(a, m, contraction_from_complex(a->space, differential(*a)),
                       contraction_from_complex(m->space, differential(*m)), opt);
}

}  // namespace ainf
