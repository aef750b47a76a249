#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>

#include "ainf/graded.hpp"

namespace ainf {

struct RelationFailure {
  int m = 0;
  Key key;
  SparseVec residual;
  std::string message;
};

struct CheckResult {
  bool pass = true;
  int checked_up_to = 0;
  std::optional<RelationFailure> failure;
  explicit operator bool() const { return pass; }
};

// ops absent from the map are zero; truncation == nullopt means every op past
// the listed ones is exactly zero (saturated)
struct AInfAlgebra {
  SpacePtr space;
  std::map<int, MultiOp> ops;
  std::optional<int> truncation;
  std::optional<std::string> unit;

  explicit AInfAlgebra(SpacePtr s, std::optional<int> trunc = std::nullopt) : space(std::move(s)), truncation(trunc) {}
  const Ring* ring() const { return space->ring(); }
  MultiOp op(int k) const;
  void set_op(int k, MultiOp m);
  bool has_op(int k) const;
  bool is_minimal() const { return !has_op(1); }
  bool graded_associative() const;
  int top_arity() const;
  bool saturated() const { return !truncation.has_value(); }
  // largest m for which the arity-m relation carries information
  int relation_bound() const;
};
using AlgebraPtr = std::shared_ptr<const AInfAlgebra>;

struct AlgMorphism {
  AlgebraPtr source, target;
  std::map<int, MultiOp> comps;
  std::optional<int> truncation;

  AlgMorphism(AlgebraPtr s, AlgebraPtr t, std::optional<int> trunc = std::nullopt)
      : source(std::move(s)), target(std::move(t)), truncation(trunc) {}
  static AlgMorphism identity(AlgebraPtr a);
  static AlgMorphism strict(AlgebraPtr s, AlgebraPtr t, const GradedMap& f1);
  MultiOp comp(int k) const;
  void set_comp(int k, MultiOp f);
  bool has_comp(int k) const;
  int top_arity() const;
  int relation_bound() const;
};

// residual of the arity-m Stasheff relation
MultiOp stasheff_residual(const AInfAlgebra& a, int m);
CheckResult check_alg_relations(const AInfAlgebra& a, std::optional<int> up_to = std::nullopt);

// sum over compositions i_1+..+i_r = m of (-1)^s outer_r(f_{i_1} (x) ... (x) f_{i_r}),
// with optional leading fixed slot (first) for module shapes
MultiOp morphism_tree_sum(const std::map<int, MultiOp>& outer, const std::map<int, MultiOp>& f, int m,
                          const MultiOp& zero, const MultiOp* first = nullptr, bool use_sign = true);

MultiOp morphism_residual(const AlgMorphism& f, int m);
CheckResult check_alg_morphism(const AlgMorphism& f, std::optional<int> up_to = std::nullopt);
AlgMorphism compose_alg_morphisms(const AlgMorphism& g, const AlgMorphism& f);

bool complex_is_valid(const GradedMap& d);
// H(f) invertible in every degree, given differentials on both sides
bool induces_iso(const GradedMap& f1, const GradedMap& d_source, const GradedMap& d_target);
GradedMap differential(const AInfAlgebra& a);
bool is_quasi_iso(const AlgMorphism& f);

std::string describe(const CheckResult& r);

}  // namespace ainf
