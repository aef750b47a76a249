#pragma once

#include <cstdint>
#include <random>

#include "ainf/formality.hpp"
#include "ainf/transfer.hpp"

namespace ainf {

// generator index (1-based) -> d(generator) as {monomial bitmask -> coefficient}
using GeneratorDifferential = std::map<int, std::map<unsigned, long>>;

// exterior algebra on n degree-1 generators e1..en; basis labels "1", "e1", "e1e2", ...
AlgebraPtr exterior_algebra(const Ring* R, int n, const GeneratorDifferential& d = {});
// Λ(e1,e2), d = 0
AlgebraPtr fix_t2(const Ring* R);
// Λ(e1,e2,e3), d e3 = e1e2
AlgebraPtr fix_d(const Ring* R);

struct PairFixture {
  std::string name;
  AlgebraPtr algebra;
  ModulePtr module;
};

// FIX-D as a dg module over FIX-T2 through the inclusion
PairFixture heisenberg_dg_module(const Ring* R);
// its minimal model: a minimal module over FIX-T2 with a nonzero m3
PairFixture heisenberg_module(const Ring* R);

// ungraded algebras placed in degree 0
AlgebraPtr truncated_polynomial(const Ring* R, int n);  // k[x]/x^n, basis 1, x, .., x^{n-1}
AlgebraPtr upper_triangular(const Ring* R);             // 2x2 upper triangular matrices
AlgebraPtr split_pair(const Ring* R);                   // k x k
// the algebra as a module over itself with degrees shifted up by `shift`, labels suffixed "@shift"
AInfModule shifted_regular(const AlgebraPtr& a, int shift);
// direct sum of shifted regular modules
AInfModule graded_free_module(const AlgebraPtr& a, const std::vector<int>& shifts);

MultiOp random_module_op(std::mt19937_64& rng, const AInfModule& m, int arity, int degree, double density = 0.35,
                         int range = 2);
// formal minimal modules with nonzero higher ops: M(2) pulled back along (id, g2, g3, ..)
std::vector<PairFixture> formal_fixtures(const Ring* R, int count, std::uint64_t seed);

// k[x]/x^3 with F^1 = span(x, x^2), F^2 = span(x^2)
struct FilteredFixture {
  AlgebraPtr algebra;
  Filtration filtration;
};
FilteredFixture rees_example(const Ring* R);

// k[x]/x^2 acting on the ground field by zero, with the deformation x -> t
PairFixture dual_numbers_on_ground(const Ring* R);

// m_h on k[x]/x^2 over k[h]/h^N with x.x = h: a deformation with nonzero leading class
MultiOp nontrivial_dual_number_deformation(const AlgebraPtr& dual, int order);

}  // namespace ainf
