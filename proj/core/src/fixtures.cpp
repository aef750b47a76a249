#include "ainf/fixtures.hpp"

#include <algorithm>
#include <bit>

namespace ainf {

namespace {

std::string monomial_label(unsigned mask) {
  if (mask == 0) return "1";
  std::string s;
  for (int i = 0; i < 32; ++i)
    if (mask & (1u << i)) s += "e" + std::to_string(i + 1);
  return s;
}

// sign of e_A e_B -> e_{A|B} for odd generators
int wedge_sign(unsigned a, unsigned b) {
  int inv = 0;
  for (int i = 0; i < 32; ++i)
    if (a & (1u << i)) inv += std::popcount(b & ((1u << i) - 1));
  return inv % 2 ? -1 : 1;
}

using Poly = std::map<unsigned, long>;

Poly wedge(const Poly& x, const Poly& y) {
  Poly r;
  for (const auto& [a, ca] : x)
    for (const auto& [b, cb] : y) {
      if (a & b) continue;
      r[a | b] += wedge_sign(a, b) * ca * cb;
    }
  for (auto it = r.begin(); it != r.end();) it = it->second == 0 ? r.erase(it) : std::next(it);
  return r;
}

SpacePtr module_space(const AlgebraPtr& a, const std::vector<int>& shifts) {
  std::map<int, std::vector<std::string>> by_deg;
  for (int s : shifts)
    for (size_t i = 0; i < a->space->dim(); ++i)
      by_deg[a->space->degree(i) + s].push_back(a->space->label(i) + "@" + std::to_string(s));
  std::vector<GradedSpace::Component> comps;
  for (auto& [d, l] : by_deg) comps.push_back({d, l});
  return GradedSpace::make(a->ring(), comps);
}

AlgebraPtr structure_constants(const Ring* R, const std::vector<std::string>& labels,
                               const std::vector<std::tuple<int, int, int>>& products, const std::string& unit) {
  SpacePtr V = GradedSpace::make(R, {{0, labels}});
  auto a = std::make_shared<AInfAlgebra>(V);
  MultiOp m = MultiOp::algebra(V, 2, 0);
  for (auto [i, j, k] : products) m.add({i, j}, k, Scalar::one(R));
  a->set_op(2, m);
  if (!unit.empty()) a->unit = unit;
  return a;
}

}  // namespace

AlgebraPtr exterior_algebra(const Ring* R, int n, const GeneratorDifferential& d) {
  std::vector<std::vector<unsigned>> by_deg(n + 1);
  // lex order on generator lists inside each degree
  std::vector<std::pair<std::vector<int>, unsigned>> all;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> g;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) g.push_back(i);
    all.push_back({g, mask});
  }
  std::sort(all.begin(), all.end());
  std::vector<GradedSpace::Component> comps(n + 1);
  for (int k = 0; k <= n; ++k) comps[k].degree = k;
  for (const auto& [g, mask] : all) {
    by_deg[g.size()].push_back(mask);
    comps[g.size()].labels.push_back(monomial_label(mask));
  }
  SpacePtr V = GradedSpace::make(R, comps);
  auto idx = [&](unsigned mask) { return static_cast<int>(V->index(monomial_label(mask))); };
  auto a = std::make_shared<AInfAlgebra>(V);
  a->unit = "1";
  MultiOp m2 = MultiOp::algebra(V, 2, 0);
  for (unsigned x = 0; x < (1u << n); ++x)
    for (unsigned y = 0; y < (1u << n); ++y)
      if (!(x & y)) m2.add({idx(x), idx(y)}, idx(x | y), Scalar::from_int(R, wedge_sign(x, y)));
  a->set_op(2, m2);
  MultiOp m1 = MultiOp::algebra(V, 1, 1);
  for (const auto& [gen, dg] : d) {
    if (gen < 1 || gen > n) throw InputError("generator index out of range");
    for (const auto& term : dg)
      if (std::popcount(term.first) != 2 || term.first >= (1u << n))
        throw InputError("differential of a generator must be quadratic");
  }
  for (unsigned x = 1; x < (1u << n); ++x) {
    Poly acc;
    Poly prefix{{0u, 1}};
    for (int i = 0; i < n; ++i) {
      if (!(x & (1u << i))) continue;
      unsigned suffix = x & ~((1u << (i + 1)) - 1);
      auto it = d.find(i + 1);
      if (it != d.end()) {
        Poly dg(it->second.begin(), it->second.end());
        int sgn = std::popcount(x & ((1u << i) - 1)) % 2 ? -1 : 1;
        Poly t = wedge(wedge(prefix, dg), Poly{{suffix, 1}});
        for (const auto& [mk, c] : t) acc[mk] += sgn * c;
      }
      prefix = wedge(prefix, Poly{{1u << i, 1}});
    }
    for (const auto& [mk, c] : acc)
      if (c != 0) m1.add({idx(x)}, idx(mk), Scalar::from_int(R, c));
  }
  a->set_op(1, m1);
  return a;
}

AlgebraPtr fix_t2(const Ring* R) { return exterior_algebra(R, 2); }

AlgebraPtr fix_d(const Ring* R) { return exterior_algebra(R, 3, {{3, {{0b011u, 1}}}}); }

PairFixture heisenberg_dg_module(const Ring* R) {
  AlgebraPtr t2 = fix_t2(R);
  AlgebraPtr d = fix_d(R);
  SpacePtr M = d->space;
  auto mod = std::make_shared<AInfModule>(t2, M);
  MultiOp m1(Shape::Module, {M}, M, 1);
  m1.add(d->op(1));
  mod->set_op(1, m1);
  MultiOp m2 = MultiOp::module(t2->space, M, 2, 0);
  MultiOp dm2 = d->op(2);
  for (const auto& [k, v] : dm2.table()) {
    auto j = t2->space->find(M->label(k[1]));
    if (!j) continue;
    m2.add({k[0], static_cast<int>(*j)}, v);
  }
  mod->set_op(2, m2);
  return {"heisenberg-dg-module", t2, mod};
}

PairFixture heisenberg_module(const Ring* R) {
  PairFixture dg = heisenberg_dg_module(R);
  Contraction ca = contraction_from_complex(dg.algebra->space, differential(*dg.algebra));
  Contraction cm = contraction_from_complex(dg.module->space, differential(*dg.module));
  PairTransfer pt = transfer_pair(dg.algebra, dg.module, ca, cm);
  return {"heisenberg-module", pt.alg.minimal, pt.minimal_module};
}

AlgebraPtr truncated_polynomial(const Ring* R, int n) {
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(i == 0 ? "1" : (i == 1 ? "x" : "x" + std::to_string(i)));
  std::vector<std::tuple<int, int, int>> prod;
  for (int i = 0; i < n; ++i)
    for (int j = 0; i + j < n; ++j) prod.push_back({i, j, i + j});
  return structure_constants(R, labels, prod, "1");
}

AlgebraPtr upper_triangular(const Ring* R) {
  // e11, e12, e22
  return structure_constants(R, {"e11", "e12", "e22"}, {{0, 0, 0}, {0, 1, 1}, {1, 2, 1}, {2, 2, 2}}, "");
}

AlgebraPtr split_pair(const Ring* R) { return structure_constants(R, {"f1", "f2"}, {{0, 0, 0}, {1, 1, 1}}, ""); }

AInfModule shifted_regular(const AlgebraPtr& a, int shift) { return graded_free_module(a, {shift}); }

AInfModule graded_free_module(const AlgebraPtr& a, const std::vector<int>& shifts) {
  SpacePtr M = module_space(a, shifts);
  AInfModule m(a, M);
  MultiOp m2 = MultiOp::module(a->space, M, 2, 0);
  for (int s : shifts) {
    std::string suf = "@" + std::to_string(s);
    MultiOp am2 = a->op(2);
    for (const auto& [k, v] : am2.table()) {
      SparseVec out;
      for (const auto& [o, c] : v) out[static_cast<int>(M->index(a->space->label(o) + suf))] = c;
      m2.add({static_cast<int>(M->index(a->space->label(k[0]) + suf)), k[1]}, out);
    }
  }
  m.set_op(2, m2);
  return m;
}

MultiOp random_module_op(std::mt19937_64& rng, const AInfModule& m, int arity, int degree, double density, int range) {
  MultiOp op = MultiOp::module(m.algebra->space, m.space, arity, degree);
  std::vector<SpacePtr> slots(arity, m.algebra->space);
  slots[0] = m.space;
  std::uniform_real_distribution<double> coin(0, 1);
  std::uniform_int_distribution<int> val(-range, range);
  for (const Key& k : tensor_basis(slots)) {
    int d = op.input_degree(k) + degree;
    for (size_t o : m.space->indices_in(d)) {
      if (coin(rng) >= density) continue;
      int c = val(rng);
      if (c != 0) op.add(k, static_cast<int>(o), Scalar::from_int(m.ring(), c));
    }
  }
  return op;
}

std::vector<PairFixture> formal_fixtures(const Ring* R, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<AlgebraPtr> bases{truncated_polynomial(R, 2), truncated_polynomial(R, 3), upper_triangular(R),
                                split_pair(R)};
  std::vector<std::string> names{"dual", "cubic", "triangular", "split"};
  std::vector<std::vector<int>> shifts{{0, 1, 2}, {0, 1, 2, 3}, {0, 2, 3}};
  std::vector<PairFixture> out;
  for (int i = 0; i < count; ++i) {
    size_t b = i % bases.size();
    const auto& sh = shifts[(i / bases.size()) % shifts.size()];
    auto m2 = std::make_shared<AInfModule>(graded_free_module(bases[b], sh));
    std::map<int, MultiOp> g;
    for (int k = 2; k <= 4; ++k) g.emplace(k, random_module_op(rng, *m2, k, 1 - k, 0.3));
    GaugeStep pb = pull_back(m2, g);
    out.push_back({"formal-" + names[b] + "-" + std::to_string(i), bases[b], pb.result});
  }
  return out;
}

FilteredFixture rees_example(const Ring* R) {
  AlgebraPtr a = truncated_polynomial(R, 3);
  Scalar one = Scalar::one(R);
  Filtration f;
  f.levels = {{{{0, one}}, {{1, one}}, {{2, one}}}, {{{1, one}}, {{2, one}}}, {{{2, one}}}};
  return {a, f};
}

PairFixture dual_numbers_on_ground(const Ring* R) {
  AlgebraPtr a = truncated_polynomial(R, 2);
  SpacePtr M = GradedSpace::make(R, {{0, {"v"}}});
  auto m = std::make_shared<AInfModule>(a, M);
  MultiOp m2 = MultiOp::module(a->space, M, 2, 0);
  m2.add({0, 0}, 0, Scalar::one(R));
  m->set_op(2, m2);
  return {"dual-numbers-on-ground", a, m};
}

MultiOp nontrivial_dual_number_deformation(const AlgebraPtr& dual, int order) {
  const Ring* T = Ring::truncated(dual->ring(), order);
  SpacePtr V = dual->space->with_ring(T);
  MultiOp m = base_change_op(dual->op(2), {V, V}, V, RingMorphism::constant(dual->ring(), T));
  m.add({1, 1}, 0, Scalar::variable(T));
  return m;
}

}  // namespace ainf
