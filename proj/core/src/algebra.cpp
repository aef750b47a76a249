#include "ainf/algebra.hpp"

#include <algorithm>
#include <functional>

namespace ainf {

// ---------------------------------------------------------------- AInfAlgebra

MultiOp AInfAlgebra::op(int k) const {
  if (truncation && k > *truncation) throw InputError("op m_" + std::to_string(k) + " missing (truncated at " + std::to_string(*truncation) + ")");
  auto it = ops.find(k);
  if (it != ops.end()) return it->second;
  return MultiOp::algebra(space, k, 2 - k);
}

void AInfAlgebra::set_op(int k, MultiOp m) {
  if (m.arity() != k) throw ShapeMismatch("m_" + std::to_string(k) + " has arity " + std::to_string(m.arity()));
  if (m.degree() != 2 - k) throw DegreeViolation("m_" + std::to_string(k) + " must have degree " + std::to_string(2 - k));
  for (const auto& s : m.slots()) require_same_space(s, space, "algebra op slot");
  require_same_space(m.target(), space, "algebra op target");
  m.set_shape(Shape::Algebra);
  if (m.is_zero()) ops.erase(k);
  else ops.insert_or_assign(k, std::move(m));
}

bool AInfAlgebra::has_op(int k) const { return ops.count(k) > 0; }

bool AInfAlgebra::graded_associative() const {
  for (const auto& [k, m] : ops)
    if (k != 2) return false;
  return true;
}

int AInfAlgebra::top_arity() const { return ops.empty() ? 0 : ops.rbegin()->first; }

int AInfAlgebra::relation_bound() const {
  if (truncation) return *truncation;
  return std::max(1, 2 * top_arity() - 1);
}

// ---------------------------------------------------------------- AlgMorphism

AlgMorphism AlgMorphism::identity(AlgebraPtr a) {
  AlgMorphism f(a, a);
  f.set_comp(1, MultiOp::from_map(GradedMap::identity(a->space)));
  return f;
}

AlgMorphism AlgMorphism::strict(AlgebraPtr s, AlgebraPtr t, const GradedMap& f1) {
  AlgMorphism f(s, t);
  f.set_comp(1, MultiOp::from_map(f1));
  return f;
}

MultiOp AlgMorphism::comp(int k) const {
  if (truncation && k > *truncation) throw InputError("component f_" + std::to_string(k) + " missing");
  auto it = comps.find(k);
  if (it != comps.end()) return it->second;
  return MultiOp::algebra(source->space, k, 1 - k, target->space);
}

void AlgMorphism::set_comp(int k, MultiOp f) {
  if (f.arity() != k) throw ShapeMismatch("f_" + std::to_string(k) + " has arity " + std::to_string(f.arity()));
  if (f.degree() != 1 - k) throw DegreeViolation("f_" + std::to_string(k) + " must have degree " + std::to_string(1 - k));
  for (const auto& s : f.slots()) require_same_space(s, source->space, "morphism slot");
  require_same_space(f.target(), target->space, "morphism target");
  f.set_shape(Shape::Algebra);
  if (f.is_zero()) comps.erase(k);
  else comps.insert_or_assign(k, std::move(f));
}

bool AlgMorphism::has_comp(int k) const { return comps.count(k) > 0; }
int AlgMorphism::top_arity() const { return comps.empty() ? 0 : comps.rbegin()->first; }

int AlgMorphism::relation_bound() const {
  if (truncation) {
    int t = *truncation;
    if (source->truncation) t = std::min(t, *source->truncation);
    if (target->truncation) t = std::min(t, *target->truncation);
    return t;
  }
  if (source->truncation || target->truncation)
    return std::min(source->truncation.value_or(1 << 20), target->truncation.value_or(1 << 20));
  int rf = std::max(1, top_arity());
  return std::max({1, rf + source->top_arity() - 1, target->top_arity() * rf});
}

// ---------------------------------------------------------------- relations

MultiOp stasheff_residual(const AInfAlgebra& a, int m) {
  MultiOp res = MultiOp::algebra(a.space, m, 3 - m);
  for (int k = 1; k <= m; ++k) {
    auto inner = a.ops.find(k);
    if (inner == a.ops.end()) continue;
    for (int j = 0; j + k <= m; ++j) {
      int l = m - j - k;
      auto outer = a.ops.find(j + 1 + l);
      if (outer == a.ops.end()) continue;
      long e = SignConvention::stasheff(j, k, l);
      res.add(partial(outer->second, j, inner->second), Scalar(e % 2 == 0 ? 1 : -1));
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

CheckResult check_alg_relations(const AInfAlgebra& a, std::optional<int> up_to) {
  int bound = up_to.value_or(a.relation_bound());
  if (a.truncation && bound > *a.truncation)
    throw InputError("relations up to " + std::to_string(bound) + " need op m_" + std::to_string(*a.truncation + 1));
  return run_checks(bound, [&](int m) { return stasheff_residual(a, m); }, "algebra relation");
}

MultiOp morphism_tree_sum(const std::map<int, MultiOp>& outer, const std::map<int, MultiOp>& f, int m, const MultiOp& zero,
                          const MultiOp* first, bool use_sign) {
  MultiOp res = zero;
  std::vector<int> parts;
  std::vector<const MultiOp*> inners;
  std::function<void(int)> rec = [&](int left) {
    if (left == 0) {
      int r = static_cast<int>(parts.size()) + (first ? 1 : 0);
      if (r == 0) return;
      auto o = outer.find(r);
      if (o == outer.end()) return;
      std::vector<int> seq;
      std::vector<const MultiOp*> in;
      if (first) {
        seq.push_back(1);
        in.push_back(first);
      }
      seq.insert(seq.end(), parts.begin(), parts.end());
      in.insert(in.end(), inners.begin(), inners.end());
      long e = use_sign ? SignConvention::morphism(seq) : 0;
      MultiOp t = compose_tensor(o->second, in);
      res.add(t, Scalar(e % 2 == 0 ? 1 : -1));
      return;
    }
    for (const auto& [i, fi] : f) {
      if (i > left) break;
      parts.push_back(i);
      inners.push_back(&fi);
      rec(left - i);
      parts.pop_back();
      inners.pop_back();
    }
  };
  rec(m);
  return res;
}

MultiOp morphism_residual(const AlgMorphism& f, int m) {
  const AInfAlgebra& A = *f.source;
  const AInfAlgebra& B = *f.target;
  MultiOp res = MultiOp::algebra(A.space, m, 2 - m, B.space);
  for (int k = 1; k <= m; ++k) {
    auto inner = A.ops.find(k);
    if (inner == A.ops.end()) continue;
    for (int j = 0; j + k <= m; ++j) {
      int l = m - j - k;
      auto outer = f.comps.find(j + 1 + l);
      if (outer == f.comps.end()) continue;
      long e = SignConvention::stasheff(j, k, l);
      res.add(partial(outer->second, j, inner->second), Scalar(e % 2 == 0 ? 1 : -1));
    }
  }
  res.add(morphism_tree_sum(B.ops, f.comps, m, res.zero_like()), Scalar(-1));
  return res;
}

CheckResult check_alg_morphism(const AlgMorphism& f, std::optional<int> up_to) {
  int bound = up_to.value_or(f.relation_bound());
  return run_checks(bound, [&](int m) { return morphism_residual(f, m); }, "morphism relation");
}

AlgMorphism compose_alg_morphisms(const AlgMorphism& g, const AlgMorphism& f) {
  if (f.target != g.source && !same_space(f.target->space, g.source->space))
    throw ShapeMismatch("compose_alg_morphisms: f.target != g.source");
  std::optional<int> trunc;
  if (f.truncation || g.truncation) trunc = std::min(f.truncation.value_or(1 << 20), g.truncation.value_or(1 << 20));
  AlgMorphism h(f.source, g.target, trunc);
  int top = trunc ? *trunc : std::max(1, g.top_arity()) * std::max(1, f.top_arity());
  for (int n = 1; n <= top; ++n) {
    MultiOp z = MultiOp::algebra(f.source->space, n, 1 - n, g.target->space);
    h.set_comp(n, morphism_tree_sum(g.comps, f.comps, n, z));
  }
  return h;
}

// ---------------------------------------------------------------- homology

GradedMap differential(const AInfAlgebra& a) { return a.op(1).to_map(); }

bool complex_is_valid(const GradedMap& d) { return compose_graded(d, d).is_zero(); }

namespace {

struct Homology {
  std::vector<SparseVec> reps;  // cycle representatives of a basis of H
  Echelon boundaries;
};

Homology homology_of(const GradedMap& d) {
  const Ring* r = d.source()->ring();
  Homology h{{}, Echelon(r)};
  size_t n = d.source()->dim();
  for (size_t j = 0; j < n; ++j) h.boundaries.insert(d.column(j), static_cast<int>(j));
  ColumnSystem cs{r, n, {}};
  for (size_t j = 0; j < n; ++j) cs.columns.push_back(d.column(j));
  Echelon span = h.boundaries;
  int tag = static_cast<int>(n);
  for (auto& z : cs.kernel())
    if (span.insert(z, tag++)) h.reps.push_back(z);
  return h;
}

}  // namespace

bool induces_iso(const GradedMap& f1, const GradedMap& ds, const GradedMap& dt) {
  if (f1.degree() != 0) return false;
  Homology hs = homology_of(ds);
  Homology ht = homology_of(dt);
  // per-degree dimension match
  std::map<int, int> dims;
  for (const auto& z : hs.reps) dims[ds.source()->degree(z.begin()->first)]++;
  for (const auto& z : ht.reps) dims[dt.source()->degree(z.begin()->first)]--;
  for (const auto& [deg, c] : dims)
    if (c != 0) return false;
  Echelon e = ht.boundaries;
  int tag = 1 << 28;
  for (const auto& z : hs.reps)
    if (!e.insert(f1.apply(z), tag++)) return false;
  return true;
}

bool is_quasi_iso(const AlgMorphism& f) {
  return induces_iso(f.comp(1).to_map(), differential(*f.source), differential(*f.target));
}

std::string describe(const CheckResult& r) {
  if (r.pass) return "pass (checked up to " + std::to_string(r.checked_up_to) + ")";
  return r.failure ? r.failure->message : "fail";
}

}  // namespace ainf
