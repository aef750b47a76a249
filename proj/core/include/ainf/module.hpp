#pragma once

#include "ainf/algebra.hpp"

namespace ainf {

struct AInfModule {
  AlgebraPtr algebra;
  SpacePtr space;
  std::map<int, MultiOp> ops;
  std::optional<int> truncation;

  AInfModule(AlgebraPtr a, SpacePtr s, std::optional<int> trunc = std::nullopt)
      : algebra(std::move(a)), space(std::move(s)), truncation(trunc) {}
  const Ring* ring() const { return space->ring(); }
  MultiOp op(int k) const;
  void set_op(int k, MultiOp m);
  bool has_op(int k) const { return ops.count(k) > 0; }
  bool is_minimal() const { return !has_op(1); }
  int top_arity() const { return ops.empty() ? 0 : ops.rbegin()->first; }
  bool saturated() const { return !truncation.has_value(); }
  int relation_bound() const;
  // ops as seen by a relation: the module ops, with algebra ops for the other slots
  MultiOp zero_op(int k, int degree) const { return MultiOp::module(algebra->space, space, k, degree); }
};
using ModulePtr = std::shared_ptr<const AInfModule>;

struct ModMorphism {
  ModulePtr source, target;
  std::map<int, MultiOp> comps;
  std::optional<int> truncation;

  ModMorphism(ModulePtr s, ModulePtr t, std::optional<int> trunc = std::nullopt)
      : source(std::move(s)), target(std::move(t)), truncation(trunc) {}
  static ModMorphism identity(ModulePtr m);
  static ModMorphism strict(ModulePtr s, ModulePtr t, const GradedMap& f1);
  MultiOp comp(int k) const;
  void set_comp(int k, MultiOp f);
  bool has_comp(int k) const { return comps.count(k) > 0; }
  int top_arity() const { return comps.empty() ? 0 : comps.rbegin()->first; }
  int relation_bound() const;
};

// (f, g) with g : M' -> f*N
struct PairMorphism {
  AlgMorphism f;
  ModMorphism g;
  ModulePtr target_module;  // N over f.target
};

MultiOp module_relation_residual(const AInfModule& m, int k);
CheckResult check_mod_relations(const AInfModule& m, std::optional<int> up_to = std::nullopt);
MultiOp mod_morphism_residual(const ModMorphism& f, int m);
CheckResult check_mod_morphism(const ModMorphism& f, std::optional<int> up_to = std::nullopt);
ModMorphism compose_mod_morphisms(const ModMorphism& g, const ModMorphism& f);
// (g o f)_n = sum g_{l+1}(f_k (x) 1^l), optionally with an extra (-1)^{|f_k| l}
ModMorphism compose_mod_morphisms_signed(const ModMorphism& g, const ModMorphism& f);
AInfModule restrict_along(const AlgMorphism& f, const AInfModule& n);
AInfModule truncate_to_M2(const AInfModule& m);
GradedMap differential(const AInfModule& m);
bool is_quasi_iso(const ModMorphism& f);

struct PairCheck {
  bool pass = true;
  std::string message;
  CheckResult algebra_side, module_side;
};
PairCheck check_pair(const PairMorphism& p, bool require_quasi_iso = true);

// module over itself
AInfModule regular_module(AlgebraPtr a);
// direct sum of two modules over the same algebra
AInfModule direct_sum(const AInfModule& a, const AInfModule& b);

}  // namespace ainf
