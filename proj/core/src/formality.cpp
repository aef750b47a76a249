#include "ainf/formality.hpp"

#include <random>

#include "ainf/hbar.hpp"

namespace ainf {

namespace {

Scalar sgn(long e) { return Scalar(e % 2 == 0 ? 1 : -1); }

std::vector<SpacePtr> cochain_slots(const HochschildSetting& s, int arity) {
  std::vector<SpacePtr> slots(arity, s.A);
  slots[0] = s.M;
  return slots;
}

MultiOp module_identity(const SpacePtr& m) { return MultiOp::from_map(GradedMap::identity(m), Shape::Module); }

// arity past which module ops of this shape are forced to vanish, if any
std::optional<int> module_op_bound(const AInfModule& m, int offset) {
  return saturation_bound(*m.algebra->space, m.space.get(), *m.space, offset);
}

MultiOp random_cocycle(const HochschildSetting& s, int p, int q, std::mt19937_64& rng) {
  CochainSpace cs(s, p, q);
  ColumnSystem d = hochschild_matrix(s, p, q);
  auto ker = d.kernel();
  SparseVec v;
  std::uniform_int_distribution<int> coef(-2, 2);
  for (const auto& z : ker) axpy(v, Scalar::from_int(s.ring(), coef(rng)), z);
  return cs.cochain(v);
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Formal: return "formal";
    case Verdict::NotFormal: return "not_formal";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

ObstructionReport solve_primitive(const HochschildSetting& s, const MultiOp& c) {
  ObstructionReport rep;
  rep.stage = c.arity() - 1;
  rep.cocycle = c;
  rep.closed = is_closed(s, c);
  if (!rep.closed) {
    rep.note = "cochain is not closed";
    return rep;
  }
  int p = c.arity() - 1;
  int q = c.degree();
  if (c.is_zero()) {
    rep.vanished = true;
    rep.primitive = CochainSpace(s, std::max(0, p - 1), q).zero();
    return rep;
  }
  if (p == 0) return rep;
  MultiOp neg = c.scaled(Scalar(-1));
  const Ring* R = s.ring();
  if (R->is_field()) {
    auto x = coboundary_primitive(s, neg);
    if (x) {
      rep.vanished = true;
      rep.primitive = *x;
    } else {
      rep.functional = separating_functional(s, c);
    }
    return rep;
  }
  if (R->kind() != RingKind::Poly) throw RingMismatch("obstruction classes need a field or k[h], got " + to_string(R));
  RingMorphism phi = RingMorphism::fraction_embed(R);
  HochschildSetting sf = s.base_change(phi);
  MultiOp cf = base_change_op(c, cochain_slots(sf, p + 1), sf.N, phi);
  if (coboundary_primitive(sf, cf.scaled(Scalar(-1))) == std::nullopt) {
    rep.functional = separating_functional(sf, cf);
    rep.note = "class is nonzero over the fraction field";
    return rep;
  }
  CochainSpace prev(s, p - 1, q), cur(s, p, q);
  ColumnSystem D = hochschild_matrix(s, p - 1, q);
  Matrix dense(D.rows, D.columns.size(), R);
  for (size_t j = 0; j < D.columns.size(); ++j)
    for (const auto& [i, x] : D.columns[j]) dense.at(i, j) = x;
  bool torsion_free = rank_at(dense, Scalar(0)) == generic_rank(dense);
  auto x = pid_solve(D, cur.coords(neg));
  if (x) {
    rep.vanished = true;
    rep.primitive = prev.cochain(*x);
    rep.note = torsion_free ? "torsion-free" : "primitive found despite h-torsion in the group";
  } else {
    rep.note = "h-torsion class: zero over the fraction field only";
  }
  return rep;
}

ObstructionReport obstruction_module_extension(const AInfAlgebra& a, const AInfModule& m, int n) {
  AInfModule low(m.algebra, m.space);
  for (const auto& [k, op] : m.ops)
    if (k <= n) low.set_op(k, op);
  MultiOp c = module_relation_residual(low, n + 2);
  AInfModule m2 = truncate_to_M2(m);
  ObstructionReport r = solve_primitive(HochschildSetting::of(a, m2), c);
  r.stage = n;
  return r;
}

ObstructionReport obstruction_morphism_extension(const AInfAlgebra& a, const AInfModule& m, const AInfModule& n,
                                                 const std::map<int, MultiOp>& comps, int stage) {
  auto ms = std::make_shared<AInfModule>(m);
  auto ns = std::make_shared<AInfModule>(n);
  ModMorphism f(ms, ns);
  for (const auto& [k, fk] : comps)
    if (k < stage) f.set_comp(k, fk);
  MultiOp c = mod_morphism_residual(f, stage + 1);
  ObstructionReport r = solve_primitive(HochschildSetting::of(a, truncate_to_M2(m), truncate_to_M2(n)), c);
  r.stage = stage;
  return r;
}

GaugeStep push_forward(const ModulePtr& mp, const MultiOp& fs, int cap) {
  const AInfModule& M = *mp;
  const AInfAlgebra& A = *M.algebra;
  int s = fs.arity();
  if (s < 2) throw InputError("push_forward needs a component of arity >= 2");
  auto res = std::make_shared<AInfModule>(M.algebra, M.space);
  std::optional<int> top;
  if (M.truncation) top = *M.truncation;
  else if (auto b = module_op_bound(M, 2)) top = std::max(*b, M.top_arity());
  int T = M.top_arity();
  int limit = top ? *top : std::max(cap, T + s - 1);
  bool saturated = M.saturated();
  int m = 1;
  for (; m <= limit; ++m) {
    MultiOp nu = M.op(m);
    int k = m - s + 1;
    if (k >= 1) {
      for (int j = 0; j < s; ++j) {
        int l = s - 1 - j;
        const auto& src = j == 0 ? M.ops : A.ops;
        auto mu = src.find(k);
        if (mu != src.end()) nu.add(partial(fs, j, mu->second), sgn(SignConvention::stasheff(j, k, l)));
      }
      auto prev = res->ops.find(k);
      if (prev != res->ops.end()) nu.add(partial(prev->second, 0, fs), Scalar(-1));
    }
    res->set_op(m, nu);
    if (!top && m >= T + s - 1) {
      bool window = true;
      for (int i = m - s + 2; i <= m; ++i)
        if (res->has_op(i)) window = false;
      if (window) break;
    }
  }
  if (!top && m > limit) saturated = false;
  if (!saturated) res->truncation = M.truncation ? *M.truncation : limit;
  ModMorphism g(mp, res, res->truncation);
  g.set_comp(1, module_identity(M.space));
  g.set_comp(s, fs);
  return {res, g, saturated};
}

GaugeStep pull_back(const ModulePtr& np, const std::map<int, MultiOp>& comps, int cap) {
  const AInfModule& N = *np;
  const AInfAlgebra& A = *N.algebra;
  auto res = std::make_shared<AInfModule>(N.algebra, N.space);
  std::optional<int> top;
  if (N.truncation) top = *N.truncation;
  else if (auto b = module_op_bound(N, 2)) top = std::max(*b, N.top_arity());
  int limit = top ? *top : cap;
  ModMorphism f(res, np);
  f.set_comp(1, module_identity(N.space));
  for (const auto& [k, fk] : comps)
    if (k >= 2) f.set_comp(k, fk);
  for (int m = 1; m <= limit; ++m) {
    MultiOp mu = MultiOp::module(A.space, N.space, m, 2 - m);
    for (const auto& [r, fr] : f.comps) {
      int t = m - r;
      if (t < 0) break;
      auto n = N.ops.find(t + 1);
      if (n != N.ops.end()) mu.add(partial(n->second, 0, fr));
    }
    for (int k = 1; k < m; ++k)
      for (int j = 0; j + k <= m; ++j) {
        int l = m - j - k;
        auto fo = f.comps.find(j + 1 + l);
        if (fo == f.comps.end() || j + 1 + l < 2) continue;
        const auto& src = j == 0 ? res->ops : A.ops;
        auto in = src.find(k);
        if (in == src.end()) continue;
        mu.add(partial(fo->second, j, in->second), -sgn(SignConvention::stasheff(j, k, l)));
      }
    res->set_op(m, mu);
  }
  bool saturated = top.has_value() && N.saturated();
  if (!saturated) res->truncation = limit;
  f.truncation = res->truncation;
  return {res, f, saturated};
}

FormalityCertificate prove_module_formality(const AlgebraPtr& a, const ModulePtr& m, const FormalityOptions& opt) {
  if (!a->graded_associative()) throw InputError("formality needs a graded associative algebra");
  if (!m->is_minimal()) throw InputError("formality needs a minimal module");
  require_same_space(m->algebra->space, a->space, "module over the algebra");
  const Ring* R = m->ring();
  if (R->kind() == RingKind::Truncated) throw RingMismatch("formality over a truncated ring is not supported");
  FormalityCertificate cert;
  cert.algebra = a;
  cert.module = m;
  cert.m2 = std::make_shared<AInfModule>(truncate_to_M2(*m));
  int cap = std::max(3, opt.cap);
  std::uint64_t p = R->characteristic();
  if (p != 0 && p <= static_cast<std::uint64_t>(cap)) {
    cert.reason = "characteristic " + std::to_string(p) + " does not exceed the arity cap " + std::to_string(cap);
    return cert;
  }
  HochschildSetting S = HochschildSetting::of(*a, *cert.m2);
  std::optional<std::mt19937_64> rng;
  if (opt.perturb_seed) rng.emplace(*opt.perturb_seed);
  ModulePtr cur = m;
  ModMorphism W = ModMorphism::identity(m);
  for (int s = 2;; ++s) {
    cert.stage = s - 1;
    bool higher = false;
    for (const auto& [k, op] : cur->ops)
      if (k >= 3) higher = true;
    if (!higher && cur->saturated()) {
      cert.verdict = Verdict::Formal;
      break;
    }
    if (opt.max_stage && s > *opt.max_stage) {
      cert.verdict = Verdict::Formal;
      cert.reason = "formal through stage " + std::to_string(*opt.max_stage);
      break;
    }
    if (cur->truncation && s + 1 > *cur->truncation) {
      cert.reason = "structure known only up to arity " + std::to_string(*cur->truncation);
      break;
    }
    if (s + 1 > cap) {
      cert.reason = "arity cap " + std::to_string(cap) + " reached";
      break;
    }
    StageRecord rec{s, solve_primitive(S, cur->op(s + 1)), cur};
    rec.report.stage = s;
    if (!rec.report.closed) throw Error("obstruction cocycle at stage " + std::to_string(s) + " is not closed");
    bool vanished = rec.report.vanished;
    std::optional<MultiOp> prim = rec.report.primitive;
    cert.stages.push_back(rec);
    if (!vanished) {
      cert.verdict = Verdict::NotFormal;
      cert.stage = s;
      cert.reason = "nonzero obstruction class at stage " + std::to_string(s);
      cert.witness = W;
      cert.exact = !W.truncation;
      return cert;
    }
    MultiOp fs = *prim;
    if (rng && R->is_field()) fs.add(random_cocycle(S, s - 1, 1 - s, *rng));
    if (fs.is_zero()) continue;
    GaugeStep step = push_forward(cur, fs, cap);
    CheckResult ok = check_mod_relations(*step.result);
    if (!ok) throw Error("stage " + std::to_string(s) + " produced an invalid module: " + describe(ok));
    if (step.result->has_op(s + 1)) throw Error("stage " + std::to_string(s) + " did not kill the obstruction");
    W = compose_mod_morphisms(step.morphism, W);
    cur = step.result;
  }
  if (cert.verdict == Verdict::Formal) {
    // cur carries only m2 (up to the stages run); retarget to M(2)
    ModMorphism w(m, cert.m2, W.truncation);
    w.comps = W.comps;
    if (opt.max_stage) {
      // An-formality: only components below the stage bound are meaningful
      std::map<int, MultiOp> kept;
      for (const auto& [k, fk] : w.comps)
        if (k <= *opt.max_stage) kept.emplace(k, fk);
      w.comps = kept;
      w.truncation = *opt.max_stage + 1;
    }
    cert.witness = w;
    cert.exact = !w.truncation;
  }
  return cert;
}

AnCheck an_formality_check(const AlgebraPtr& a, const ModulePtr& m, int n) {
  FormalityOptions opt;
  opt.max_stage = n - 1;
  opt.cap = std::max(8, n + 1);
  FormalityCertificate c = prove_module_formality(a, m, opt);
  if (c.verdict == Verdict::NotFormal) return {false, c.stage};
  if (c.verdict == Verdict::Inconclusive) throw Error("An-formality check inconclusive: " + c.reason);
  return {true, 0};
}

bool verify_certificate(const FormalityCertificate& c, std::string* why) {
  auto fail = [&](const std::string& w) {
    if (why) *why = w;
    return false;
  };
  if (!c.algebra || !c.module) return fail("certificate lacks its structures");
  if (!c.algebra->graded_associative()) return fail("algebra is not graded associative");
  CheckResult mr = check_mod_relations(*c.module);
  if (!mr) return fail("module relations fail: " + describe(mr));
  AInfModule m2 = truncate_to_M2(*c.module);
  if (c.verdict == Verdict::Inconclusive) {
    if (c.reason.empty()) return fail("inconclusive certificate without a reason");
    return true;
  }
  if (!c.witness) return fail("missing witness");
  const ModMorphism& W = *c.witness;
  if (W.comp(1) != module_identity(c.module->space)) return fail("witness does not start with the identity");
  if (!same_space(W.source->space, c.module->space)) return fail("witness source differs from the module");
  if (c.verdict == Verdict::Formal) {
    if (!c.m2 || c.m2->ops != m2.ops) return fail("witness target is not M(2)");
    ModMorphism w(c.module, c.m2, W.truncation);
    w.comps = W.comps;
    CheckResult r = check_mod_morphism(w);
    if (!r) return fail("witness is not a morphism: " + describe(r));
    return true;
  }
  if (c.stages.empty()) return fail("not-formal certificate without stages");
  const StageRecord& last = c.stages.back();
  int s = last.stage;
  if (!last.before) return fail("missing intermediate module");
  const AInfModule& B = *last.before;
  CheckResult br = check_mod_relations(B);
  if (!br) return fail("intermediate module fails its relations: " + describe(br));
  for (int j = 3; j <= s; ++j)
    if (B.has_op(j)) return fail("intermediate module has a nonzero m" + std::to_string(j));
  if (B.op(s + 1) != last.report.cocycle) return fail("cocycle differs from the intermediate m" + std::to_string(s + 1));
  ModMorphism w(c.module, last.before, W.truncation);
  w.comps = W.comps;
  CheckResult r = check_mod_morphism(w);
  if (!r) return fail("witness to the intermediate module is not a morphism: " + describe(r));
  HochschildSetting S = HochschildSetting::of(*c.algebra, m2);
  const Ring* R = c.module->ring();
  if (!last.report.functional) {
    if (R->kind() != RingKind::Poly) return fail("missing separating functional");
    ObstructionReport again = solve_primitive(S, last.report.cocycle);
    if (again.vanished) return fail("cocycle is a coboundary");
    return true;
  }
  if (R->is_field()) {
    if (!check_separating_functional(S, last.report.cocycle, *last.report.functional))
      return fail("functional does not separate the class from coboundaries");
    return true;
  }
  RingMorphism phi = RingMorphism::fraction_embed(R);
  HochschildSetting sf = S.base_change(phi);
  MultiOp cf = base_change_op(last.report.cocycle, cochain_slots(sf, s + 1), sf.N, phi);
  if (!check_separating_functional(sf, cf, *last.report.functional))
    return fail("functional does not separate the class from coboundaries");
  return true;
}

// ---------------------------------------------------------------- normal cone

NormalCone normal_cone_deform(const AlgebraPtr& a, const ModulePtr& m, const std::string& var) {
  if (!a->ring()->is_base_field()) throw RingMismatch("normal cone needs a ground field");
  const Ring* PR = Ring::poly(a->ring(), var);
  RingMorphism phi = RingMorphism::constant(a->ring(), PR);
  auto ah = std::make_shared<AInfAlgebra>(base_change(*a, phi));
  AInfModule mh = base_change(*m, ah, phi);
  Scalar h = Scalar::variable(PR);
  for (auto& [k, op] : mh.ops)
    if (k > 2) op = op.scaled(pow(h, static_cast<unsigned>(k - 2)));
  return {ah, std::make_shared<AInfModule>(mh)};
}

AInfModule normal_cone_fibre(const NormalCone& nc, const Scalar& at) {
  auto af = std::make_shared<AInfAlgebra>(fibre(*nc.algebra, at));
  return fibre(*nc.module, af, at);
}

ModMorphism base_change(const ModMorphism& f, const ModulePtr& s, const ModulePtr& t, const RingMorphism& phi) {
  ModMorphism r(s, t, f.truncation);
  for (const auto& [k, fk] : f.comps) {
    std::vector<SpacePtr> slots(k, s->algebra->space);
    slots[0] = s->space;
    r.set_comp(k, base_change_op(fk, slots, t->space, phi));
  }
  return r;
}

ModMorphism scale_witness(const ModMorphism& w, const NormalCone& nc, const ModulePtr& m2h) {
  const Ring* PR = nc.module->ring();
  RingMorphism phi = RingMorphism::constant(w.source->ring(), PR);
  ModMorphism r = base_change(w, nc.module, m2h, phi);
  Scalar h = Scalar::variable(PR);
  for (auto& [k, fk] : r.comps)
    if (k > 1) fk = fk.scaled(pow(h, static_cast<unsigned>(k - 1)));
  return r;
}

// ---------------------------------------------------------------- algebra gauge

MultiOp algebra_hochschild_d(const MultiOp& m0, const MultiOp& f) {
  if (f.degree() != 0) throw InputError("algebra Hochschild differential is implemented for degree-0 cochains");
  int n = f.arity();
  SpacePtr A = m0.target();
  MultiOp res(Shape::Module, std::vector<SpacePtr>(n + 1, A), A, 0);
  auto add = [&](MultiOp t, long e) {
    t.set_shape(Shape::Module);
    res.add(t, sgn(e));
  };
  add(partial(m0, 1, f), 0);
  for (int i = 1; i <= n; ++i) add(partial(f, i - 1, m0), i);
  add(partial(m0, 0, f), n + 1);
  return res;
}

namespace {

// (id - X)^{-1} = sum X^i for X nilpotent mod h^N
GradedMap unipotent_inverse(const GradedMap& g) {
  const Ring* R = g.source()->ring();
  GradedMap id = GradedMap::identity(g.source());
  GradedMap X = id - g;
  GradedMap acc = id, term = id;
  int order = R->kind() == RingKind::Truncated ? R->order() : 0;
  for (int i = 1; i < order; ++i) {
    term = compose_graded(term, X);
    if (term.is_zero()) break;
    acc = acc + term;
  }
  return acc;
}

Scalar coefficient(const Scalar& x, int e) {
  const Coeffs& c = x.num();
  if (e < static_cast<int>(c.size())) return Scalar(c[e]);
  return Scalar(0);
}

}  // namespace

MultiOp gauge_transform(const MultiOp& m, const GradedMap& g) {
  GradedMap ginv = unipotent_inverse(g);
  if (!(compose_graded(g, ginv) == GradedMap::identity(g.source())))
    throw InputError("gauge is not unipotent modulo h");
  std::vector<const GradedMap*> maps(m.arity(), &g);
  return post_compose(ginv, pre_compose(m, maps));
}

Trivialization trivialize_truncated_deformation(const AInfAlgebra& a0, const MultiOp& m_h) {
  const Ring* T = m_h.ring();
  if (T->kind() != RingKind::Truncated) throw RingMismatch("deformation must live over a truncated ring");
  const Ring* F = a0.ring();
  if (T->field() != F) throw RingMismatch("deformation and algebra have different ground fields");
  if (!a0.graded_associative()) throw InputError("special fibre must be graded associative");
  int N = T->order();
  SpacePtr V = a0.space->with_ring(T);
  RingMorphism up = RingMorphism::constant(F, T);
  MultiOp m0 = a0.op(2);
  MultiOp m0T = base_change_op(m0, {V, V}, V, up);
  HochschildSetting S = HochschildSetting::of(a0);
  CochainSpace c1(S, 0, 0), c2(S, 1, 0);
  ColumnSystem delta{F, c2.dim(), {}};
  for (size_t i = 0; i < c1.dim(); ++i) {
    MultiOp e = c1.zero();
    e.add(c1.at(i).first, c1.at(i).second, Scalar::one(F));
    delta.columns.push_back(c2.coords(algebra_hochschild_d(m0, e)));
  }
  Trivialization out;
  GradedMap G = GradedMap::identity(V);
  MultiOp cur = m_h;
  Scalar h = Scalar::variable(T);
  for (int r = 1; r < N; ++r) {
    // cur = m0 mod h^r; extract the h^r coefficient
    MultiOp mr(Shape::Module, {a0.space, a0.space}, a0.space, 0);
    MultiOp diff = cur;
    diff.add(m0T, Scalar(-1));
    for (const auto& [k, v] : diff.table())
      for (const auto& [o, x] : v) {
        int val = x.valuation();
        if (val >= 0 && val < r) throw InputError("deformation does not reduce to the given product");
        mr.add(k, o, coefficient(x, r));
      }
    if (mr.is_zero()) continue;
    auto psi = delta.solve(c2.coords(mr));
    if (!psi) {
      out.failing_order = r;
      out.class_rep = mr;
      return out;
    }
    GradedMap P = c1.cochain(*psi).to_map();
    GradedMap g(V, V, 0);
    for (size_t i = 0; i < V->dim(); ++i)
      for (size_t j = 0; j < V->dim(); ++j) {
        Scalar e = (i == j ? Scalar::one(T) : Scalar::zero(T)) - pow(h, static_cast<unsigned>(r)) * up(P.get(i, j).coerce(F));
        if (!e.is_zero()) g.set(i, j, e);
      }
    cur = gauge_transform(cur, g);
    G = compose_graded(G, g);
  }
  if (gauge_transform(m_h, G) != m0T) throw Error("gauge did not trivialize the deformation");
  out.trivial = true;
  out.gauge = G;
  return out;
}

std::string to_string(EquivVerdict v) {
  switch (v) {
    case EquivVerdict::EquivalentWitnessed: return "equivalent-witnessed";
    case EquivVerdict::NotEquivalentByInvariants: return "not-equivalent-by-invariants";
    case EquivVerdict::Unknown: return "unknown";
  }
  return "?";
}

EquivProbe minimal_pair_equiv_probe(const AlgebraPtr& a1, const ModulePtr& m1, const AlgebraPtr& a2, const ModulePtr& m2) {
  EquivProbe out;
  bool same_alg = same_space(a1->space, a2->space) && a1->ops == a2->ops;
  if (!same_alg) {
    out.reason = "different algebras; no search attempted";
    return out;
  }
  if (same_space(m1->space, m2->space) && m1->ops == m2->ops) {
    ModMorphism id = ModMorphism::identity(m1);
    ModMorphism w(m1, m2);
    w.set_comp(1, id.comp(1));
    if (check_mod_morphism(w).pass && is_quasi_iso(w)) {
      out.verdict = EquivVerdict::EquivalentWitnessed;
      out.reason = "identical structures";
      out.witness = w;
      return out;
    }
  }
  if (!same_space(m1->space, m2->space) || truncate_to_M2(*m1).ops != truncate_to_M2(*m2).ops) {
    out.reason = "different underlying M(2); no search attempted";
    return out;
  }
  FormalityCertificate c1 = prove_module_formality(a1, m1), c2 = prove_module_formality(a2, m2);
  bool f1 = c1.verdict == Verdict::Formal, f2 = c2.verdict == Verdict::Formal;
  bool n1 = c1.verdict == Verdict::NotFormal, n2 = c2.verdict == Verdict::NotFormal;
  if ((f1 && n2) || (n1 && f2)) {
    out.verdict = EquivVerdict::NotEquivalentByInvariants;
    out.reason = "one is formal, the other has a nonzero obstruction class at stage " + std::to_string(f1 ? c2.stage : c1.stage);
    return out;
  }
  if (f1 && f2) {
    // zigzag through the common M(2); the stored witness is its first leg
    out.reason = "both formal over the same M(2)";
    out.verdict = EquivVerdict::EquivalentWitnessed;
    out.witness = *c1.witness;
    return out;
  }
  out.reason = "invariants agree; bounded search not attempted";
  return out;
}

}  // namespace ainf
