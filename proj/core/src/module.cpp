#include "ainf/module.hpp"

#include <algorithm>

namespace ainf {

namespace {

Scalar sgn(long e) { return Scalar(e % 2 == 0 ? 1 : -1); }

int big(std::optional<int> t) { return t.value_or(1 << 20); }

}  // namespace

// ---------------------------------------------------------------- AInfModule

MultiOp AInfModule::op(int k) const {
  if (truncation && k > *truncation) throw InputError("module op m_" + std::to_string(k) + " missing");
  auto it = ops.find(k);
  if (it != ops.end()) return it->second;
  return zero_op(k, 2 - k);
}

void AInfModule::set_op(int k, MultiOp m) {
  if (m.arity() != k) throw ShapeMismatch("module op m_" + std::to_string(k) + " has arity " + std::to_string(m.arity()));
  if (m.degree() != 2 - k) throw DegreeViolation("module op m_" + std::to_string(k) + " must have degree " + std::to_string(2 - k));
  require_same_space(m.slot(0), space, "module op first slot");
  for (int i = 1; i < k; ++i) require_same_space(m.slot(i), algebra->space, "module op algebra slot");
  require_same_space(m.target(), space, "module op target");
  m.set_shape(Shape::Module);
  if (m.is_zero()) ops.erase(k);
  else ops.insert_or_assign(k, std::move(m));
}

int AInfModule::relation_bound() const {
  if (truncation || algebra->truncation) return std::min(big(truncation), big(algebra->truncation));
  int tm = std::max(1, top_arity());
  return std::max({1, tm + algebra->top_arity() - 1, 2 * tm - 1});
}

// ---------------------------------------------------------------- ModMorphism

ModMorphism ModMorphism::identity(ModulePtr m) {
  ModMorphism f(m, m);
  f.set_comp(1, MultiOp::from_map(GradedMap::identity(m->space), Shape::Module));
  return f;
}

ModMorphism ModMorphism::strict(ModulePtr s, ModulePtr t, const GradedMap& f1) {
  ModMorphism f(s, t);
  f.set_comp(1, MultiOp::from_map(f1, Shape::Module));
  return f;
}

MultiOp ModMorphism::comp(int k) const {
  if (truncation && k > *truncation) throw InputError("component f_" + std::to_string(k) + " missing");
  auto it = comps.find(k);
  if (it != comps.end()) return it->second;
  return MultiOp::module(source->algebra->space, source->space, k, 1 - k, target->space);
}

void ModMorphism::set_comp(int k, MultiOp f) {
  if (f.arity() != k) throw ShapeMismatch("f_" + std::to_string(k) + " has arity " + std::to_string(f.arity()));
  if (f.degree() != 1 - k) throw DegreeViolation("f_" + std::to_string(k) + " must have degree " + std::to_string(1 - k));
  require_same_space(f.slot(0), source->space, "module morphism first slot");
  for (int i = 1; i < k; ++i) require_same_space(f.slot(i), source->algebra->space, "module morphism algebra slot");
  require_same_space(f.target(), target->space, "module morphism target");
  f.set_shape(Shape::Module);
  if (f.is_zero()) comps.erase(k);
  else comps.insert_or_assign(k, std::move(f));
}

int ModMorphism::relation_bound() const {
  if (truncation || source->truncation || target->truncation || source->algebra->truncation)
    return std::min({big(truncation), big(source->truncation), big(target->truncation), big(source->algebra->truncation)});
  int rf = std::max(1, top_arity());
  int ts = std::max({1, source->top_arity(), source->algebra->top_arity()});
  return std::max({1, rf + ts - 1, target->top_arity() - 1 + rf});
}

// ---------------------------------------------------------------- relations

MultiOp module_relation_residual(const AInfModule& M, int m) {
  const AInfAlgebra& A = *M.algebra;
  MultiOp res = M.zero_op(m, 3 - m);
  for (int k = 1; k <= m; ++k) {
    for (int j = 0; j + k <= m; ++j) {
      int l = m - j - k;
      auto outer = M.ops.find(j + 1 + l);
      if (outer == M.ops.end()) continue;
      const std::map<int, MultiOp>& src = j == 0 ? M.ops : A.ops;
      auto inner = src.find(k);
      if (inner == src.end()) continue;
      res.add(partial(outer->second, j, inner->second), sgn(SignConvention::stasheff(j, k, l)));
    }
  }
  return res;
}

namespace {

CheckResult run_checks(int bound, const std::function<MultiOp(int)>& residual, const std::string& what) {
  CheckResult r;
  for (int m = 1; m <= bound; ++m) {
    MultiOp res = residual(m);
    r.checked_up_to = m;
    if (!res.is_zero()) {
      r.pass = false;
      const auto& [k, v] = *res.table().begin();
      r.failure = RelationFailure{m, k, v, what + " fails at m=" + std::to_string(m) + " on " + res.key_string(k) + ": " + to_string(v)};
      return r;
    }
  }
  return r;
}

}  // namespace

CheckResult check_mod_relations(const AInfModule& M, std::optional<int> up_to) {
  int bound = up_to.value_or(M.relation_bound());
  if ((M.truncation && bound > *M.truncation) || (M.algebra->truncation && bound > *M.algebra->truncation))
    throw InputError("module relations up to " + std::to_string(bound) + " need ops beyond the truncation");
  return run_checks(bound, [&](int m) { return module_relation_residual(M, m); }, "module relation");
}

MultiOp mod_morphism_residual(const ModMorphism& f, int m) {
  const AInfModule& M = *f.source;
  const AInfModule& N = *f.target;
  const AInfAlgebra& A = *M.algebra;
  MultiOp res = MultiOp::module(A.space, M.space, m, 2 - m, N.space);
  for (int k = 1; k <= m; ++k) {
    for (int j = 0; j + k <= m; ++j) {
      int l = m - j - k;
      auto outer = f.comps.find(j + 1 + l);
      if (outer == f.comps.end()) continue;
      const std::map<int, MultiOp>& src = j == 0 ? M.ops : A.ops;
      auto inner = src.find(k);
      if (inner == src.end()) continue;
      res.add(partial(outer->second, j, inner->second), sgn(SignConvention::stasheff(j, k, l)));
    }
  }
  for (const auto& [r, fr] : f.comps) {
    int s = m - r;
    if (s < 0) break;
    auto n = N.ops.find(s + 1);
    if (n == N.ops.end()) continue;
    res.add(partial(n->second, 0, fr), Scalar(-1));
  }
  return res;
}

CheckResult check_mod_morphism(const ModMorphism& f, std::optional<int> up_to) {
  int bound = up_to.value_or(f.relation_bound());
  return run_checks(bound, [&](int m) { return mod_morphism_residual(f, m); }, "module morphism relation");
}

namespace {

ModMorphism compose_impl(const ModMorphism& g, const ModMorphism& f, bool extra_sign) {
  require_same_space(f.target->space, g.source->space, "compose_mod_morphisms");
  std::optional<int> trunc;
  if (f.truncation || g.truncation) trunc = std::min(big(f.truncation), big(g.truncation));
  ModMorphism h(f.source, g.target, trunc);
  int top = trunc ? *trunc : std::max(1, g.top_arity()) + std::max(1, f.top_arity()) - 1;
  for (int n = 1; n <= top; ++n) {
    MultiOp acc = MultiOp::module(f.source->algebra->space, f.source->space, n, 1 - n, g.target->space);
    for (const auto& [k, fk] : f.comps) {
      int l = n - k;
      if (l < 0) break;
      auto gl = g.comps.find(l + 1);
      if (gl == g.comps.end()) continue;
      long e = extra_sign ? static_cast<long>(1 - k) * l : 0;
      acc.add(partial(gl->second, 0, fk), sgn(e));
    }
    h.set_comp(n, acc);
  }
  return h;
}

}  // namespace

ModMorphism compose_mod_morphisms(const ModMorphism& g, const ModMorphism& f) { return compose_impl(g, f, false); }
ModMorphism compose_mod_morphisms_signed(const ModMorphism& g, const ModMorphism& f) { return compose_impl(g, f, true); }

AInfModule restrict_along(const AlgMorphism& f, const AInfModule& N) {
  require_same_space(f.target->space, N.algebra->space, "restrict_along");
  std::optional<int> trunc;
  if (f.truncation || N.truncation) trunc = std::min(big(f.truncation), big(N.truncation));
  AInfModule R(f.source, N.space, trunc);
  int top = trunc ? *trunc : 1 + std::max(0, N.top_arity() - 1) * std::max(1, f.top_arity());
  MultiOp id = MultiOp::from_map(GradedMap::identity(N.space), Shape::Module);
  for (int m = 1; m <= top; ++m) {
    MultiOp acc = MultiOp::module(f.source->space, N.space, m, 2 - m);
    if (m == 1) {
      if (N.has_op(1)) acc.add(N.ops.at(1));
    } else {
      acc.add(morphism_tree_sum(N.ops, f.comps, m - 1, acc.zero_like(), &id));
    }
    R.set_op(m, acc);
  }
  return R;
}

AInfModule truncate_to_M2(const AInfModule& M) {
  if (!M.is_minimal()) throw InputError("truncate_to_M2 needs a minimal module");
  if (!M.algebra->graded_associative()) throw InputError("truncate_to_M2 needs a graded associative algebra");
  AInfModule r(M.algebra, M.space);
  if (M.has_op(2)) r.set_op(2, M.ops.at(2));
  return r;
}

GradedMap differential(const AInfModule& m) { return m.op(1).to_map(); }

bool is_quasi_iso(const ModMorphism& f) {
  return induces_iso(f.comp(1).to_map(), differential(*f.source), differential(*f.target));
}

PairCheck check_pair(const PairMorphism& p, bool require_quasi_iso) {
  PairCheck out;
  out.algebra_side = check_alg_morphism(p.f);
  if (!out.algebra_side.pass) {
    out.pass = false;
    out.message = "algebra side: " + describe(out.algebra_side);
    return out;
  }
  AInfModule pulled = restrict_along(p.f, *p.target_module);
  if (!same_space(p.g.target->space, pulled.space)) {
    out.pass = false;
    out.message = "module morphism target does not match f*N";
    return out;
  }
  ModMorphism g(p.g.source, std::make_shared<AInfModule>(pulled), p.g.truncation);
  for (const auto& [k, c] : p.g.comps) g.set_comp(k, c);
  out.module_side = check_mod_morphism(g);
  if (!out.module_side.pass) {
    out.pass = false;
    out.message = "module side: " + describe(out.module_side);
    return out;
  }
  if (require_quasi_iso) {
    if (!is_quasi_iso(p.f)) {
      out.pass = false;
      out.message = "algebra morphism is not a quasi-isomorphism";
      return out;
    }
    if (!is_quasi_iso(g)) {
      out.pass = false;
      out.message = "module morphism is not a quasi-isomorphism";
      return out;
    }
  }
  out.message = "pass";
  return out;
}

AInfModule regular_module(AlgebraPtr a) {
  AInfModule m(a, a->space, a->truncation);
  for (const auto& [k, op] : a->ops) {
    MultiOp c = op;
    c.set_shape(Shape::Module);
    m.set_op(k, c);
  }
  return m;
}

AInfModule direct_sum(const AInfModule& a, const AInfModule& b) {
  if (a.algebra != b.algebra && !same_space(a.algebra->space, b.algebra->space)) throw ShapeMismatch("direct_sum over different algebras");
  std::map<int, std::vector<std::string>> by_deg;
  for (size_t i = 0; i < a.space->dim(); ++i) by_deg[a.space->degree(i)].push_back(a.space->label(i) + "@1");
  for (size_t i = 0; i < b.space->dim(); ++i) by_deg[b.space->degree(i)].push_back(b.space->label(i) + "@2");
  std::vector<GradedSpace::Component> comps;
  for (auto& [d, l] : by_deg) comps.push_back({d, l});
  SpacePtr s = GradedSpace::make(a.ring(), comps);
  std::optional<int> trunc;
  if (a.truncation || b.truncation) trunc = std::min(big(a.truncation), big(b.truncation));
  AInfModule r(a.algebra, s, trunc);
  std::map<int, MultiOp> ops;
  auto inject = [&](const AInfModule& src, const std::string& tag) {
    auto idx = [&](int i) { return static_cast<int>(s->index(src.space->label(i) + tag)); };
    for (const auto& [k, op] : src.ops) {
      auto it = ops.find(k);
      if (it == ops.end()) it = ops.emplace(k, r.zero_op(k, 2 - k)).first;
      for (const auto& [key, v] : op.table()) {
        Key nk = key;
        nk[0] = idx(key[0]);
        for (const auto& [o, c] : v) it->second.add(nk, idx(o), c);
      }
    }
  };
  inject(a, "@1");
  inject(b, "@2");
  for (auto& [k, op] : ops) r.set_op(k, op);
  return r;
}

}  // namespace ainf
