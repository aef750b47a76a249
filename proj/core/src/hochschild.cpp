#include "ainf/hochschild.hpp"

#include <algorithm>

namespace ainf {

namespace {

MultiOp m2_of(const std::map<int, MultiOp>& ops, const MultiOp& zero) {
  auto it = ops.find(2);
  return it == ops.end() ? zero : it->second;
}

}  // namespace

HochschildSetting HochschildSetting::of(const AInfAlgebra& a, const AInfModule& m, const AInfModule& n) {
  require_same_space(m.algebra->space, a.space, "hochschild: M over A");
  require_same_space(n.algebra->space, a.space, "hochschild: N over A");
  HochschildSetting s;
  s.A = a.space;
  s.M = m.space;
  s.N = n.space;
  s.mA = m2_of(a.ops, MultiOp::algebra(a.space, 2, 0));
  s.mM = m2_of(m.ops, MultiOp::module(a.space, m.space, 2, 0));
  s.mN = m2_of(n.ops, MultiOp::module(a.space, n.space, 2, 0));
  s.mM.set_shape(Shape::Module);
  s.mN.set_shape(Shape::Module);
  return s;
}

HochschildSetting HochschildSetting::of(const AInfAlgebra& a) {
  HochschildSetting s;
  s.A = s.M = s.N = a.space;
  s.mA = m2_of(a.ops, MultiOp::algebra(a.space, 2, 0));
  s.mM = s.mA;
  s.mM.set_shape(Shape::Module);
  s.mN = s.mM;
  return s;
}

HochschildSetting HochschildSetting::base_change(const RingMorphism& phi) const {
  HochschildSetting s;
  s.A = A->with_ring(phi.target);
  s.M = same_space(M, A) ? s.A : M->with_ring(phi.target);
  s.N = same_space(N, M) ? s.M : (same_space(N, A) ? s.A : N->with_ring(phi.target));
  s.mA = base_change_op(mA, {s.A, s.A}, s.A, phi);
  s.mM = base_change_op(mM, {s.M, s.A}, s.M, phi);
  s.mN = base_change_op(mN, {s.N, s.A}, s.N, phi);
  return s;
}

// ---------------------------------------------------------------- cochains

CochainSpace::CochainSpace(const HochschildSetting& s, int p, int q) : p_(p), q_(q) {
  if (p < 0) throw InputError("Hochschild degree p must be >= 0");
  std::vector<SpacePtr> slots(p + 1, s.A);
  slots[0] = s.M;
  slots_ = slots;
  target_ = s.N;
  for_each_tuple(slots, [&](const Key& k) {
    int d = 0;
    for (size_t i = 0; i < k.size(); ++i) d += slots[i]->degree(k[i]);
    for (size_t o : s.N->indices_in(d + q)) {
      index_[{k, static_cast<int>(o)}] = basis_.size();
      basis_.push_back({k, static_cast<int>(o)});
    }
  });
}

std::optional<size_t> CochainSpace::find(const Key& k, int out) const {
  auto it = index_.find({k, out});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SparseVec CochainSpace::coords(const MultiOp& c) const {
  if (c.arity() != p_ + 1 || c.degree() != q_) throw ShapeMismatch("cochain does not live in C^{" + std::to_string(p_) + "," + std::to_string(q_) + "}");
  SparseVec v;
  for (const auto& [k, vec] : c.table())
    for (const auto& [o, x] : vec) {
      auto i = find(k, o);
      if (!i) throw ShapeMismatch("cochain entry outside the cochain basis");
      v[static_cast<int>(*i)] = x;
    }
  return v;
}

MultiOp CochainSpace::zero() const { return MultiOp(Shape::Module, slots_, target_, q_); }

MultiOp CochainSpace::cochain(const SparseVec& v) const {
  MultiOp c = zero();
  for (const auto& [i, x] : v) c.add(basis_[i].first, basis_[i].second, x);
  return c;
}

MultiOp hochschild_d(const HochschildSetting& s, const MultiOp& f) {
  int p = f.arity() - 1;
  std::vector<SpacePtr> slots(p + 2, s.A);
  slots[0] = s.M;
  MultiOp res(Shape::Module, slots, s.N, f.degree());
  if (f.is_zero()) return res;
  for (int j = 0; j <= p; ++j) {
    int l = p - j;
    const MultiOp& mu = j == 0 ? s.mM : s.mA;
    res.add(partial(f, j, mu), Scalar(l % 2 == 0 ? 1 : -1));
  }
  res.add(partial(s.mN, 0, f), Scalar(-1));
  return res;
}

HochschildCochain hochschild_d(const HochschildSetting& s, const HochschildCochain& c) {
  return {c.p + 1, c.q, hochschild_d(s, c.body)};
}

ColumnSystem hochschild_matrix(const HochschildSetting& s, int p, int q) {
  CochainSpace src(s, p, q), dst(s, p + 1, q);
  ColumnSystem cs{s.ring(), dst.dim(), {}};
  cs.columns.reserve(src.dim());
  for (size_t i = 0; i < src.dim(); ++i) {
    MultiOp e = src.zero();
    e.add(src.at(i).first, src.at(i).second, Scalar::one(s.ring()));
    cs.columns.push_back(dst.coords(hochschild_d(s, e)));
  }
  return cs;
}

Matrix hochschild_dense(const HochschildSetting& s, int p, int q) {
  ColumnSystem cs = hochschild_matrix(s, p, q);
  Matrix m(cs.rows, cs.columns.size(), s.ring());
  for (size_t j = 0; j < cs.columns.size(); ++j)
    for (const auto& [i, x] : cs.columns[j]) m.at(i, j) = x;
  return m;
}

HHGroup hh_group(const HochschildSetting& s, int p, int q) {
  if (!s.ring()->is_field()) throw RingMismatch("hh_group needs field coefficients; use the hbar engine over poly rings");
  HHGroup g{p, q, 0, {}};
  CochainSpace cp(s, p, q);
  ColumnSystem dp = hochschild_matrix(s, p, q);
  Echelon span(s.ring());
  int tag = 0;
  if (p >= 1) {
    ColumnSystem dprev = hochschild_matrix(s, p - 1, q);
    for (const auto& c : dprev.columns) span.insert(c, tag++);
  }
  for (const auto& z : dp.kernel())
    if (span.insert(z, tag++)) g.basis.push_back(cp.cochain(z));
  g.dim = g.basis.size();
  return g;
}

bool is_closed(const HochschildSetting& s, const MultiOp& c) { return hochschild_d(s, c).is_zero(); }

std::optional<MultiOp> coboundary_primitive(const HochschildSetting& s, const MultiOp& c) {
  int p = c.arity() - 1;
  int q = c.degree();
  if (!is_closed(s, c)) throw InputError("cochain is not closed");
  CochainSpace cp(s, p, q);
  if (p == 0) {
    if (c.is_zero()) return CochainSpace(s, 0, q).zero();
    return std::nullopt;
  }
  CochainSpace prev(s, p - 1, q);
  ColumnSystem d = hochschild_matrix(s, p - 1, q);
  auto x = d.solve(cp.coords(c));
  if (!x) return std::nullopt;
  return prev.cochain(*x);
}

std::optional<SparseVec> separating_functional(const HochschildSetting& s, const MultiOp& c) {
  int p = c.arity() - 1;
  int q = c.degree();
  CochainSpace cp(s, p, q);
  Echelon img(s.ring());
  if (p >= 1) {
    ColumnSystem d = hochschild_matrix(s, p - 1, q);
    for (size_t j = 0; j < d.columns.size(); ++j) img.insert(d.columns[j], static_cast<int>(j));
  }
  SparseVec r = img.reduce(cp.coords(c));
  if (r.empty()) return std::nullopt;
  int i0 = r.begin()->first;
  SparseVec phi;
  for (size_t j = 0; j < cp.dim(); ++j) {
    SparseVec rj = img.reduce(SparseVec{{static_cast<int>(j), Scalar::one(s.ring())}});
    auto it = rj.find(i0);
    if (it != rj.end()) phi[static_cast<int>(j)] = it->second;
  }
  return phi;
}

bool check_separating_functional(const HochschildSetting& s, const MultiOp& c, const SparseVec& phi) {
  int p = c.arity() - 1;
  int q = c.degree();
  CochainSpace cp(s, p, q);
  auto pair = [&](const SparseVec& v) {
    Scalar acc = Scalar::zero(s.ring());
    for (const auto& [i, x] : v) {
      auto it = phi.find(i);
      if (it != phi.end()) acc += x * it->second;
    }
    return acc;
  };
  if (!is_closed(s, c)) return false;
  if (pair(cp.coords(c)).is_zero()) return false;
  if (p >= 1) {
    ColumnSystem d = hochschild_matrix(s, p - 1, q);
    for (const auto& col : d.columns)
      if (!pair(col).is_zero()) return false;
  }
  return true;
}

// ---------------------------------------------------------------- base change

AInfAlgebra base_change(const AInfAlgebra& a, const RingMorphism& phi) {
  SpacePtr s = a.space->with_ring(phi.target);
  AInfAlgebra r(s, a.truncation);
  r.unit = a.unit;
  for (const auto& [k, op] : a.ops) r.set_op(k, base_change_op(op, std::vector<SpacePtr>(k, s), s, phi));
  return r;
}

AInfModule base_change(const AInfModule& m, const AlgebraPtr& ac, const RingMorphism& phi) {
  SpacePtr s = same_space(m.space, m.algebra->space) ? ac->space : m.space->with_ring(phi.target);
  AInfModule r(ac, s, m.truncation);
  for (const auto& [k, op] : m.ops) {
    std::vector<SpacePtr> slots(k, ac->space);
    slots[0] = s;
    r.set_op(k, base_change_op(op, slots, s, phi));
  }
  return r;
}

AInfAlgebra fibre(const AInfAlgebra& a, const Scalar& at) { return base_change(a, RingMorphism::eval_at(a.ring(), at)); }

AInfModule fibre(const AInfModule& m, const AlgebraPtr& af, const Scalar& at) {
  return base_change(m, af, RingMorphism::eval_at(m.ring(), at));
}

// ---------------------------------------------------------------- Rees

namespace {

struct Adapted {
  Matrix P;  // columns: adapted basis in original coordinates
  std::vector<int> weight;
  SpacePtr space;  // same degrees, labels b<i>
};

Adapted adapted_basis(const SpacePtr& V, const Filtration& f) {
  const Ring* R = V->ring();
  size_t n = V->dim();
  int N = static_cast<int>(f.levels.size());
  if (N == 0) throw InputError("empty filtration");
  Adapted ad{Matrix(n, n, R), std::vector<int>(n, 0), nullptr};
  std::vector<GradedSpace::Component> comps;
  size_t col = 0;
  for (int deg : V->degrees()) {
    auto idx = V->indices_in(deg);
    Echelon span(R);
    std::vector<std::pair<SparseVec, int>> chosen;
    int tag = 0;
    for (int lvl = N - 1; lvl >= 0; --lvl) {
      for (const auto& v : f.levels[lvl]) {
        SparseVec part;
        for (const auto& [i, x] : v) {
          if (static_cast<size_t>(i) >= n) throw InputError("filtration vector out of range");
          if (V->degree(i) == deg) part[i] = x;  // split by degree
        }
        if (!part.empty() && span.insert(part, tag++)) chosen.push_back({part, lvl});
      }
    }
    // level 0 must be everything
    for (size_t i : idx) {
      SparseVec e{{static_cast<int>(i), Scalar::one(R)}};
      if (span.insert(e, tag++)) chosen.push_back({e, 0});
    }
    std::vector<std::string> labels;
    std::reverse(chosen.begin(), chosen.end());
    for (auto& [v, w] : chosen) {
      for (const auto& [i, x] : v) ad.P.at(i, col) = x;
      ad.weight[col] = w;
      labels.push_back("b" + std::to_string(col));
      ++col;
    }
    comps.push_back({deg, labels});
  }
  ad.space = GradedSpace::make(R, comps);
  // check levels are nested: every vector of level i lies in level i-1
  for (int lvl = 1; lvl < N; ++lvl) {
    Echelon up(R);
    int t = 0;
    for (const auto& v : f.levels[lvl - 1]) up.insert(v, t++);
    if (lvl - 1 == 0 && f.levels[0].empty()) continue;
    for (const auto& v : f.levels[lvl])
      if (!up.contains(v)) throw InputError("filtration is not decreasing at level " + std::to_string(lvl));
  }
  return ad;
}

Scalar h_power(const Ring* poly_ring, const Scalar& c, int e) {
  Coeffs co(e + 1, mpq_class(0));
  co[e] = c.value();
  return Scalar::from_poly(poly_ring, co);
}

// op in adapted coordinates, weighted into poly(h)
MultiOp weighted(const MultiOp& op, const std::vector<const Adapted*>& in, const Adapted& out, const Matrix& out_inv,
                 const std::vector<SpacePtr>& slots, const SpacePtr& target, const Ring* PR, const std::string& what) {
  std::vector<GradedMap> maps;
  for (size_t i = 0; i < in.size(); ++i) maps.emplace_back(in[i]->space->with_ring(op.ring()), op.slot(i), 0, in[i]->P);
  // rebuild P maps on the original slot spaces with adapted spaces as sources
  std::vector<MultiOp> pre;
  for (auto& g : maps) pre.push_back(MultiOp::from_map(g));
  std::vector<const MultiOp*> ptr;
  for (auto& x : pre) ptr.push_back(&x);
  MultiOp c = compose_tensor(op, ptr);
  GradedMap back(op.target(), out.space, 0, out_inv);
  MultiOp adapted = post_compose(back, c);
  MultiOp r(op.shape(), slots, target, op.degree());
  for (const auto& [k, v] : adapted.table()) {
    int win = 0;
    for (size_t i = 0; i < k.size(); ++i) win += in[i]->weight[k[i]];
    for (const auto& [o, x] : v) {
      int e = out.weight[o] - win;
      if (e < 0) throw InputError(what + ": filtration is not multiplicative");
      r.add(k, o, h_power(PR, x, e));
    }
  }
  return r;
}

}  // namespace

ReesResult rees_deformation(const AInfAlgebra& a, const Filtration& f, const std::string& var) {
  if (!a.ring()->is_base_field()) throw RingMismatch("Rees construction needs a ground field");
  Adapted ad = adapted_basis(a.space, f);
  const Ring* PR = Ring::poly(a.ring(), var);
  SpacePtr S = ad.space->with_ring(PR);
  Matrix Pinv = inverse(ad.P);
  auto R = std::make_shared<AInfAlgebra>(S, a.truncation);
  for (const auto& [k, op] : a.ops) {
    std::vector<const Adapted*> in(k, &ad);
    R->set_op(k, weighted(op, in, ad, Pinv, std::vector<SpacePtr>(k, S), S, PR, "algebra"));
  }
  return {R, GradedMap(ad.space, a.space, 0, ad.P), ad.weight};
}

ReesModuleResult rees_deformation(const ReesResult& ra, const AInfModule& m, const Filtration& f) {
  // recover the algebra's adapted data
  Adapted aa{ra.adapted.matrix(), ra.weights, ra.adapted.source()};
  Adapted am = adapted_basis(m.space, f);
  const Ring* PR = ra.algebra->ring();
  SpacePtr S = am.space->with_ring(PR);
  Matrix Pinv = inverse(am.P);
  auto R = std::make_shared<AInfModule>(ra.algebra, S, m.truncation);
  for (const auto& [k, op] : m.ops) {
    std::vector<const Adapted*> in(k, &aa);
    in[0] = &am;
    std::vector<SpacePtr> slots(k, ra.algebra->space);
    slots[0] = S;
    R->set_op(k, weighted(op, in, am, Pinv, slots, S, PR, "module"));
  }
  return {R, GradedMap(am.space, m.space, 0, am.P), am.weight};
}

// ---------------------------------------------------------------- algebra m3 class

AlgebraM3Class algebra_m3_class(const AInfAlgebra& a) {
  if (a.has_op(1)) throw InputError("algebra must be minimal");
  if (!a.ring()->is_base_field()) throw RingMismatch("algebra class needs a ground field");
  SpacePtr A = a.space;
  auto low = std::make_shared<AInfAlgebra>(A);
  low->set_op(2, a.op(2));
  auto with3 = std::make_shared<AInfAlgebra>(A);
  with3->set_op(2, a.op(2));
  with3->set_op(3, a.op(3));
  AlgebraM3Class r;
  r.closed = stasheff_residual(*with3, 4).is_zero();

  std::vector<Key> keys3 = tensor_basis({A, A, A});
  std::map<Key, int> pos;
  for (size_t i = 0; i < keys3.size(); ++i) pos[keys3[i]] = static_cast<int>(i);
  int n = static_cast<int>(A->dim());
  auto flat = [&](const MultiOp& op) {
    SparseVec v;
    for (const auto& [k, out] : op.table())
      for (const auto& [o, c] : out) v[pos.at(k) * n + o] = c;
    return v;
  };
  MultiOp m3 = a.op(3);
  MultiOp id = MultiOp::from_map(GradedMap::identity(A));
  // the arity-3 morphism residual is affine in f2; subtract the f2 = 0 part
  auto residual = [&](const MultiOp& g) {
    AlgMorphism f(with3, low, 3);
    f.set_comp(1, id);
    if (!g.is_zero()) f.set_comp(2, g);
    return morphism_residual(f, 3);
  };
  SparseVec base = flat(residual(MultiOp::algebra(A, 2, -1)));
  Echelon span(a.ring());
  std::vector<MultiOp> gens;
  for (const Key& k : tensor_basis({A, A}))
    for (size_t o = 0; o < A->dim(); ++o) {
      if (A->degree(o) != A->degree(k[0]) + A->degree(k[1]) - 1) continue;
      MultiOp g = MultiOp::algebra(A, 2, -1);
      g.add(k, static_cast<int>(o), Scalar::one(a.ring()));
      SparseVec v = flat(residual(g));
      axpy(v, Scalar::from_int(a.ring(), -1), base);
      span.insert(v, static_cast<int>(gens.size()));
      gens.push_back(g);
    }
  SparseVec combo;
  SparseVec target = scaled(base, Scalar::from_int(a.ring(), -1));
  if (!span.reduce(target, &combo).empty()) return r;
  MultiOp g = MultiOp::algebra(A, 2, -1);
  for (const auto& [t, c] : combo) g.add(gens[t], c);
  AlgMorphism f(with3, low, 3);
  f.set_comp(1, id);
  if (!g.is_zero()) f.set_comp(2, g);
  if (!check_alg_morphism(f, 3).pass) throw Error("gauge for m3 failed its morphism check");
  r.exact = true;
  r.gauge = g;
  return r;
}

}  // namespace ainf
