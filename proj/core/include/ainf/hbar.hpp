#pragma once

#include "ainf/linalg.hpp"

namespace ainf {

// Smith form over k[h]: P A Q = D, U = P^{-1}, V = Q^{-1}, so U D V = A.
// Diagonal entries are monic and each divides the next.
struct SmithForm {
  Matrix U, D, V;
  Matrix P, Q;
  size_t rank = 0;
  std::vector<Scalar> invariants() const;
};
SmithForm smith_normal_form(const Matrix& a);
bool is_valid_smith(const Matrix& a, const SmithForm& s, std::string* why = nullptr);

// A x = b over k[h]
std::optional<std::vector<Scalar>> pid_solve(const Matrix& a, const std::vector<Scalar>& b);
std::optional<SparseVec> pid_solve(const ColumnSystem& a, const SparseVec& b);

// free cochain complex over k[h]: d.at(i) : R^{rank(i)} -> R^{rank(i+1)}
struct PolyComplex {
  const Ring* ring = nullptr;
  std::map<int, size_t> ranks;
  std::map<int, Matrix> d;
  size_t rank(int i) const;
  Matrix diff(int i) const;  // zero matrix when absent
  void validate() const;     // shapes and d^2 = 0
};

struct PolyCohomology {
  std::map<int, size_t> free_rank;
  // h-adic torsion summands of H^i: exponents e >= 1 of k[[h]]/h^e
  std::map<int, std::vector<int>> torsion;
};
PolyCohomology poly_cohomology(const PolyComplex& c);

struct FibreDims {
  std::map<int, size_t> generic;  // over the fraction field
  std::map<int, size_t> special;  // at h = 0
};
FibreDims fibre_dims(const PolyComplex& c);

struct FreenessReport {
  bool free = true;
  FibreDims dims;
  PolyCohomology cohomology;
  std::vector<int> jumps;  // degrees where the special fibre is larger
};
FreenessReport freeness_test(const PolyComplex& c);

// rank of a matrix over k[h] evaluated at h = a, and over the fraction field
size_t rank_at(const Matrix& a, const Scalar& at);
size_t generic_rank(const Matrix& a);

}  // namespace ainf
