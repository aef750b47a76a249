#pragma once

#include "ainf/module.hpp"

namespace ainf {

// The m2's entering the Hochschild differential of C^{p,q}(A, M, N) = Hom^q(M (x) A^p, N).
struct HochschildSetting {
  SpacePtr A, M, N;
  MultiOp mA, mM, mN;

  static HochschildSetting of(const AInfAlgebra& a, const AInfModule& m, const AInfModule& n);
  static HochschildSetting of(const AInfAlgebra& a, const AInfModule& m) { return of(a, m, m); }
  // the algebra as a module over itself
  static HochschildSetting of(const AInfAlgebra& a);
  const Ring* ring() const { return N->ring(); }
  HochschildSetting base_change(const RingMorphism& phi) const;
};

struct HochschildCochain {
  int p = 0, q = 0;
  MultiOp body;
};

// basis of C^{p,q}: (key, out) pairs, lex ordered
class CochainSpace {
 public:
  CochainSpace(const HochschildSetting& s, int p, int q);
  size_t dim() const { return basis_.size(); }
  const std::pair<Key, int>& at(size_t i) const { return basis_[i]; }
  std::optional<size_t> find(const Key& k, int out) const;
  SparseVec coords(const MultiOp& c) const;
  MultiOp cochain(const SparseVec& v) const;
  MultiOp zero() const;
  int p() const { return p_; }
  int q() const { return q_; }

 private:
  std::vector<SpacePtr> slots_;
  SpacePtr target_;
  int p_, q_;
  std::vector<std::pair<Key, int>> basis_;
  std::map<std::pair<Key, int>, size_t> index_;
};

// sum_{j+l=p} (-1)^l f(1^j (x) m2 (x) 1^l) - m2^N(f (x) 1), with m2^M in the j = 0 slot
MultiOp hochschild_d(const HochschildSetting& s, const MultiOp& f);
HochschildCochain hochschild_d(const HochschildSetting& s, const HochschildCochain& c);

// matrix of d : C^{p,q} -> C^{p+1,q} in the CochainSpace bases (column per source basis element)
ColumnSystem hochschild_matrix(const HochschildSetting& s, int p, int q);
Matrix hochschild_dense(const HochschildSetting& s, int p, int q);

struct HHGroup {
  int p = 0, q = 0;
  size_t dim = 0;
  std::vector<MultiOp> basis;  // cocycle representatives
};
HHGroup hh_group(const HochschildSetting& s, int p, int q);

// x with d(x) = c, or nullopt when c is not a coboundary (c must be closed)
std::optional<MultiOp> coboundary_primitive(const HochschildSetting& s, const MultiOp& c);
bool is_closed(const HochschildSetting& s, const MultiOp& c);
// functional on C^{p,q} killing all coboundaries and nonzero on c (c not exact)
std::optional<SparseVec> separating_functional(const HochschildSetting& s, const MultiOp& c);
bool check_separating_functional(const HochschildSetting& s, const MultiOp& c, const SparseVec& phi);

// m3 of a minimal algebra modulo the gauge f2 of degree -1 (the algebra-level class)
struct AlgebraM3Class {
  bool closed = false;
  bool exact = false;
  std::optional<MultiOp> gauge;  // f2 with (id, f2) : (m2, m3) -> (m2, 0), when exact
};
AlgebraM3Class algebra_m3_class(const AInfAlgebra& a);

// ---------------------------------------------------------------- base change

AInfAlgebra base_change(const AInfAlgebra& a, const RingMorphism& phi);
AInfModule base_change(const AInfModule& m, const AlgebraPtr& a_changed, const RingMorphism& phi);

// ---------------------------------------------------------------- Rees

// decreasing chain F^0 = whole >= F^1 >= ... >= F^N = 0, each level spanned by vectors
struct Filtration {
  std::vector<std::vector<SparseVec>> levels;
};

struct ReesResult {
  AlgebraPtr algebra;   // over poly(h)
  GradedMap adapted;    // adapted basis (columns) -> original basis, over the ground field
  std::vector<int> weights;
};
struct ReesModuleResult {
  ModulePtr module;
  GradedMap adapted;
  std::vector<int> weights;
};

ReesResult rees_deformation(const AInfAlgebra& a, const Filtration& f, const std::string& var = "h");
ReesModuleResult rees_deformation(const ReesResult& ra, const AInfModule& m, const Filtration& f);
// fibre of a structure over poly(h) at a point
AInfAlgebra fibre(const AInfAlgebra& a, const Scalar& at);
AInfModule fibre(const AInfModule& m, const AlgebraPtr& a_fibre, const Scalar& at);

}  // namespace ainf
