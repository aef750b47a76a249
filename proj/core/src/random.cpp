#include "ainf/random.hpp"

namespace ainf {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

namespace {

bool coin(Rng& rng, double p) { return std::uniform_real_distribution<double>(0, 1)(rng) < p; }

int nonzero(Rng& rng, int range) {
  int c = 0;
  while (c == 0) c = uniform(rng, -range, range);
  return c;
}

SpacePtr random_space(Rng& rng, const Ring* R, int max_total) {
  for (;;) {
    std::vector<GradedSpace::Component> comps;
    int total = 0;
    for (int d = 0; d <= 4; ++d) {
      int n = uniform(rng, 0, 3);
      if (coin(rng, 0.4)) n = 0;
      n = std::min(n, max_total - total);
      std::vector<std::string> labels;
      for (int i = 0; i < n; ++i) labels.push_back("v" + std::to_string(d) + "_" + std::to_string(i));
      total += n;
      if (n) comps.push_back({d, labels});
    }
    if (total >= 2) return GradedSpace::make(R, comps);
  }
}

GradedMap identity_like(const SpacePtr& s) { return GradedMap::identity(s); }

}  // namespace

MultiOp random_op(Rng& rng, Shape shape, const std::vector<SpacePtr>& slots, const SpacePtr& target, int degree,
                  double density, int range) {
  MultiOp op(shape, slots, target, degree);
  for (const Key& k : tensor_basis(slots)) {
    int d = op.input_degree(k) + degree;
    for (size_t o : target->indices_in(d))
      if (coin(rng, density)) op.add(k, static_cast<int>(o), Scalar::from_int(target->ring(), nonzero(rng, range)));
  }
  return op;
}

GradedMap random_automorphism(Rng& rng, const SpacePtr& v) {
  const Ring* R = v->ring();
  GradedMap g(v, v, 0);
  for (int d : v->degrees()) {
    auto idx = v->indices_in(d);
    size_t n = idx.size();
    Matrix L = Matrix::identity(n, R), U = Matrix::identity(n, R), D = Matrix::identity(n, R);
    for (size_t i = 0; i < n; ++i) {
      static const int diag[] = {1, -1, 2};
      D.at(i, i) = Scalar::from_int(R, diag[uniform(rng, 0, 2)]);
      for (size_t j = 0; j < i; ++j) {
        L.at(i, j) = Scalar::from_int(R, uniform(rng, -1, 1));
        U.at(j, i) = Scalar::from_int(R, uniform(rng, -1, 1));
      }
    }
    Matrix B = L * D * U;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        if (!B.at(i, j).is_zero()) g.set(idx[i], idx[j], B.at(i, j));
  }
  return g;
}

AlgebraPtr random_exterior_dga(Rng& rng, const Ring* R, int n) {
  for (int attempt = 0; attempt < 50; ++attempt) {
    GeneratorDifferential d;
    for (int i = 3; i <= n; ++i)
      for (int j = 0; j < i - 1; ++j)
        for (int k = j + 1; k < i - 1; ++k)
          if (coin(rng, 0.6)) d[i][(1u << j) | (1u << k)] = nonzero(rng, 1);
    AlgebraPtr a = exterior_algebra(R, n, d);
    if (check_alg_relations(*a)) return a;
  }
  return exterior_algebra(R, n);
}

AlgebraPtr random_endomorphism_dga(Rng& rng, const Ring* R) {
  int n0 = uniform(rng, 1, 2), n1 = uniform(rng, 1, 2);
  std::vector<int> deg;
  for (int i = 0; i < n0; ++i) deg.push_back(0);
  for (int i = 0; i < n1; ++i) deg.push_back(1);
  size_t n = deg.size();
  // d_V : V_0 -> V_1, entries c[a][b] for E_ab with deg a = 1, deg b = 0
  std::vector<std::vector<long>> c(n, std::vector<long>(n, 0));
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b)
      if (deg[a] == 1 && deg[b] == 0 && coin(rng, 0.6)) c[a][b] = nonzero(rng, 2);
  std::map<int, std::vector<std::string>> by_deg;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) by_deg[deg[i] - deg[j]].push_back("E" + std::to_string(i) + std::to_string(j));
  std::vector<GradedSpace::Component> comps;
  for (auto& [d, l] : by_deg) comps.push_back({d, l});
  SpacePtr V = GradedSpace::make(R, comps);
  auto E = [&](size_t i, size_t j) { return static_cast<int>(V->index("E" + std::to_string(i) + std::to_string(j))); };
  auto a = std::make_shared<AInfAlgebra>(V);
  MultiOp m2 = MultiOp::algebra(V, 2, 0);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t l = 0; l < n; ++l) m2.add({E(i, j), E(j, l)}, E(i, l), Scalar::one(R));
  a->set_op(2, m2);
  MultiOp m1 = MultiOp::algebra(V, 1, 1);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      int f = deg[i] - deg[j];
      for (size_t x = 0; x < n; ++x) {
        if (c[x][i]) m1.add({E(i, j)}, E(x, j), Scalar::from_int(R, c[x][i]));
        if (c[j][x]) m1.add({E(i, j)}, E(i, x), Scalar::from_int(R, (f % 2 ? 1 : -1) * c[j][x]));
      }
    }
  a->set_op(1, m1);
  return a;
}

AlgebraPtr random_dga(Rng& rng, const Ring* R) {
  if (coin(rng, 0.5)) return random_endomorphism_dga(rng, R);
  return random_exterior_dga(rng, R, uniform(rng, 2, 4));
}

AInfAlgebra strict_transport(const AInfAlgebra& a, const GradedMap& g) {
  GradedMap ginv(g.target(), g.source(), 0, inverse(g.matrix()));
  AInfAlgebra r(a.space, a.truncation);
  for (const auto& [k, op] : a.ops) {
    std::vector<const GradedMap*> maps(k, &g);
    r.set_op(k, post_compose(ginv, pre_compose(op, maps)));
  }
  return r;
}

AInfModule strict_transport(const AInfModule& m, const GradedMap& g) {
  GradedMap ginv(g.target(), g.source(), 0, inverse(g.matrix()));
  GradedMap ida = identity_like(m.algebra->space);
  AInfModule r(m.algebra, m.space, m.truncation);
  for (const auto& [k, op] : m.ops) {
    std::vector<const GradedMap*> maps(k, &ida);
    maps[0] = &g;
    MultiOp t = post_compose(ginv, pre_compose(op, maps));
    t.set_shape(Shape::Module);
    r.set_op(k, t);
  }
  return r;
}

AlgebraPtr random_valid_algebra(Rng& rng, const Ring* R) {
  AlgebraPtr a = random_exterior_dga(rng, R, uniform(rng, 2, 3));
  int kind = uniform(rng, 0, 3);
  if (kind >= 1) {
    ContractionOptions co;
    if (kind >= 2) co.seed = rng();
    AlgebraTransfer t = transfer_algebra(a, contraction_from_complex(a->space, differential(*a), co));
    if (t.saturated) a = t.minimal;
  }
  if (coin(rng, 0.5)) a = std::make_shared<AInfAlgebra>(strict_transport(*a, random_automorphism(rng, a->space)));
  return a;
}

ModulePtr random_valid_module(Rng& rng, const Ring* R) {
  int kind = uniform(rng, 0, 3);
  ModulePtr m;
  if (kind == 0) {
    m = std::make_shared<AInfModule>(regular_module(random_exterior_dga(rng, R, uniform(rng, 2, 3))));
  } else if (kind == 1) {
    m = heisenberg_dg_module(R).module;
  } else if (kind == 2) {
    m = heisenberg_module(R).module;
  } else {
    AlgebraPtr a = random_valid_algebra(rng, R);
    m = std::make_shared<AInfModule>(regular_module(a));
  }
  if (coin(rng, 0.5)) m = std::make_shared<AInfModule>(strict_transport(*m, random_automorphism(rng, m->space)));
  return m;
}

AInfAlgebra random_algebra_ops(Rng& rng, const Ring* R) {
  SpacePtr V = random_space(rng, R, 5);
  AInfAlgebra a(V);
  for (int k = 1; k <= 3; ++k)
    if (coin(rng, 0.7)) a.set_op(k, random_op(rng, Shape::Algebra, std::vector<SpacePtr>(k, V), V, 2 - k, k == 3 ? 0.15 : 0.3));
  return a;
}

AInfModule random_module_ops(Rng& rng, const AlgebraPtr& a) {
  SpacePtr V = random_space(rng, a->ring(), 5);
  AInfModule m(a, V);
  for (int k = 1; k <= 3; ++k)
    if (coin(rng, 0.7)) {
      std::vector<SpacePtr> slots(k, a->space);
      slots[0] = V;
      m.set_op(k, random_op(rng, Shape::Module, slots, V, 2 - k, k == 3 ? 0.15 : 0.3));
    }
  return m;
}

namespace {

// add +-1 at a random admissible entry of a random op
bool bump(Rng& rng, MultiOp& op) {
  std::vector<std::pair<Key, int>> cands;
  for (const Key& k : tensor_basis(op.slots()))
    for (size_t o : op.target()->indices_in(op.input_degree(k) + op.degree())) cands.push_back({k, static_cast<int>(o)});
  if (cands.empty()) return false;
  auto& [k, o] = cands[uniform(rng, 0, static_cast<int>(cands.size()) - 1)];
  op.add(k, o, Scalar::from_int(op.ring(), coin(rng, 0.5) ? 1 : -1));
  return true;
}

}  // namespace

AInfAlgebra perturb(Rng& rng, const AInfAlgebra& a) {
  AInfAlgebra r = a;
  for (int attempt = 0; attempt < 20; ++attempt) {
    int k = uniform(rng, 1, std::max(3, a.top_arity()));
    MultiOp op = r.has_op(k) ? r.op(k) : MultiOp::algebra(a.space, k, 2 - k);
    if (bump(rng, op)) {
      r.set_op(k, op);
      return r;
    }
  }
  return r;
}

AInfModule perturb(Rng& rng, const AInfModule& m) {
  AInfModule r = m;
  for (int attempt = 0; attempt < 20; ++attempt) {
    int k = uniform(rng, 1, std::max(3, m.top_arity()));
    MultiOp op = r.has_op(k) ? r.op(k) : m.zero_op(k, 2 - k);
    if (bump(rng, op)) {
      op.set_shape(Shape::Module);
      r.set_op(k, op);
      return r;
    }
  }
  return r;
}

AssocTriple random_assoc_triple(Rng& rng, const Ring* R) {
  AlgebraPtr a;
  switch (uniform(rng, 0, 4)) {
    case 0: a = exterior_algebra(R, uniform(rng, 1, 2)); break;
    case 1: a = truncated_polynomial(R, uniform(rng, 2, 3)); break;
    case 2: a = upper_triangular(R); break;
    case 3: a = split_pair(R); break;
    default: {
      AInfAlgebra e = *random_endomorphism_dga(rng, R);
      e.ops.erase(1);
      a = std::make_shared<AInfAlgebra>(e);
    }
  }
  auto pick = [&]() -> ModulePtr {
    switch (uniform(rng, 0, 2)) {
      case 0: return std::make_shared<AInfModule>(regular_module(a));
      case 1: return std::make_shared<AInfModule>(shifted_regular(a, uniform(rng, -1, 2)));
      default: return std::make_shared<AInfModule>(graded_free_module(a, {0, uniform(rng, 1, 2)}));
    }
  };
  ModulePtr m = pick();
  ModulePtr n = pick();
  return {a, m, n};
}

Scalar random_poly(Rng& rng, const Ring* R, int max_degree, int range) {
  int d = uniform(rng, 0, max_degree);
  Coeffs c(d + 1);
  for (int i = 0; i <= d; ++i) c[i] = uniform(rng, -range, range);
  return Scalar::from_poly(R, c);
}

Matrix random_poly_matrix(Rng& rng, const Ring* R, size_t rows, size_t cols, int max_degree, double density) {
  Matrix m(rows, cols, R);
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) m.at(i, j) = coin(rng, density) ? random_poly(rng, R, max_degree) : Scalar::zero(R);
  return m;
}

PolyComplex random_poly_complex(Rng& rng, const Ring* R) {
  Scalar h = Scalar::variable(R);
  // pieces: free summand at degree i, or [R -> R] from degree i to i+1
  struct Piece {
    int deg;
    std::optional<Scalar> map;
  };
  std::vector<Piece> pieces;
  int count = uniform(rng, 1, 5);
  for (int p = 0; p < count; ++p) {
    int i = uniform(rng, 0, 2);
    if (coin(rng, 0.35)) {
      pieces.push_back({i, std::nullopt});
      continue;
    }
    Scalar f;
    switch (uniform(rng, 0, 3)) {
      case 0: f = pow(h, static_cast<unsigned>(uniform(rng, 1, 3))); break;
      case 1: f = pow(h, static_cast<unsigned>(uniform(rng, 0, 2))) * (h + Scalar::from_int(R, nonzero(rng, 3))); break;
      case 2: f = Scalar::from_int(R, nonzero(rng, 3)); break;
      default: f = Scalar::from_int(R, nonzero(rng, 3)) * pow(h, static_cast<unsigned>(uniform(rng, 1, 2))); break;
    }
    pieces.push_back({i, f});
  }
  PolyComplex c;
  c.ring = R;
  std::map<int, size_t> fill;
  auto take = [&](int d) { return fill[d]++; };
  std::vector<std::pair<size_t, size_t>> pos(pieces.size());
  for (size_t p = 0; p < pieces.size(); ++p) {
    pos[p].first = take(pieces[p].deg);
    if (pieces[p].map) pos[p].second = take(pieces[p].deg + 1);
  }
  for (auto& [d, n] : fill) c.ranks[d] = n;
  for (auto& [d, n] : fill)
    if (c.ranks.count(d + 1)) c.d[d] = Matrix(c.ranks[d + 1], n, R);
  for (size_t p = 0; p < pieces.size(); ++p)
    if (pieces[p].map) c.d.at(pieces[p].deg).at(pos[p].second, pos[p].first) = *pieces[p].map;
  // conjugate each term by a unimodular change of basis
  std::map<int, Matrix> B, Binv;
  for (auto& [d, n] : c.ranks) {
    Matrix b = Matrix::identity(n, R), bi = Matrix::identity(n, R);
    if (n > 1)
      for (int t = 0; t < 3; ++t) {
        size_t i = uniform(rng, 0, static_cast<int>(n) - 1), j = uniform(rng, 0, static_cast<int>(n) - 1);
        if (i == j) continue;
        Scalar s = random_poly(rng, R, 1, 2);
        Matrix e = Matrix::identity(n, R), ei = Matrix::identity(n, R);
        e.at(i, j) = s;
        ei.at(i, j) = -s;
        b = e * b;
        bi = bi * ei;
      }
    B.emplace(d, b);
    Binv.emplace(d, bi);
  }
  for (auto& [d, m] : c.d) m = B.at(d + 1) * m * Binv.at(d);
  return c;
}

GaugeDeformation random_gauge_deformation(Rng& rng, const AlgebraPtr& a0, int order) {
  const Ring* T = Ring::truncated(a0->ring(), order);
  SpacePtr V = a0->space->with_ring(T);
  Scalar h = Scalar::variable(T);
  GradedMap phi = GradedMap::identity(V);
  for (int r = 1; r < order; ++r) {
    Scalar hr = pow(h, static_cast<unsigned>(r));
    for (int d : V->degrees())
      for (size_t i : V->indices_in(d))
        for (size_t j : V->indices_in(d))
          if (coin(rng, 0.4)) phi.set(i, j, phi.get(i, j) + hr * Scalar::from_int(T, uniform(rng, -2, 2)));
  }
  MultiOp m0 = base_change_op(a0->op(2), {V, V}, V, RingMorphism::constant(a0->ring(), T));
  return {phi, gauge_transform(m0, phi)};
}

}  // namespace ainf
