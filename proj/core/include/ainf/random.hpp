#pragma once

#include <random>

#include "ainf/fixtures.hpp"
#include "ainf/hbar.hpp"

namespace ainf {

using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi);

MultiOp random_op(Rng& rng, Shape shape, const std::vector<SpacePtr>& slots, const SpacePtr& target, int degree,
                  double density = 0.3, int range = 2);
// invertible degree-0 map, block triangular inside each degree
GradedMap random_automorphism(Rng& rng, const SpacePtr& v);

// exterior algebra on n generators with a random quadratic differential (d^2 = 0)
AlgebraPtr random_exterior_dga(Rng& rng, const Ring* R, int n);
// End(V) for a random complex V, product = composition
AlgebraPtr random_endomorphism_dga(Rng& rng, const Ring* R);
AlgebraPtr random_dga(Rng& rng, const Ring* R);

// m'_k = g^{-1} m_k(g, .., g)
AInfAlgebra strict_transport(const AInfAlgebra& a, const GradedMap& g);
AInfModule strict_transport(const AInfModule& m, const GradedMap& g);

// valid structures with dims <= 3 per degree in degrees [0,4]
AlgebraPtr random_valid_algebra(Rng& rng, const Ring* R);
ModulePtr random_valid_module(Rng& rng, const Ring* R);
// arbitrary ops, usually violating the relations
AInfAlgebra random_algebra_ops(Rng& rng, const Ring* R);
AInfModule random_module_ops(Rng& rng, const AlgebraPtr& a);
// one entry changed
AInfAlgebra perturb(Rng& rng, const AInfAlgebra& a);
AInfModule perturb(Rng& rng, const AInfModule& m);

// graded associative algebras with modules, for Hochschild tests
struct AssocTriple {
  AlgebraPtr algebra;
  ModulePtr m, n;
};
AssocTriple random_assoc_triple(Rng& rng, const Ring* R);

Scalar random_poly(Rng& rng, const Ring* R, int max_degree, int range = 3);
Matrix random_poly_matrix(Rng& rng, const Ring* R, size_t rows, size_t cols, int max_degree, double density = 0.6);
PolyComplex random_poly_complex(Rng& rng, const Ring* R);

// psi = id + sum_{r>=1} h^r X_r over k[h]/h^N, and m_h = psi^{-1} m0(psi, psi)
struct GaugeDeformation {
  GradedMap psi;
  MultiOp m_h;
};
GaugeDeformation random_gauge_deformation(Rng& rng, const AlgebraPtr& a0, int order);

}  // namespace ainf
