#pragma once

#include <cstdint>

#include "ainf/hochschild.hpp"

namespace ainf {

struct ObstructionReport {
  int stage = 0;
  MultiOp cocycle;
  bool closed = false;
  bool vanished = false;
  std::optional<MultiOp> primitive;   // d(primitive) = -cocycle
  std::optional<SparseVec> functional;  // separating functional when the class is nonzero (field case)
  std::string note;
};

// terms of the arity-(n+2) module relation not involving m_{n+1}; lives in C^{n+1, 1-n}(A, M(2))
ObstructionReport obstruction_module_extension(const AInfAlgebra& a, const AInfModule& m, int n);
// terms of the arity-(n+1) morphism relation not involving f_n; lives in C^{n, 1-n}(A, M, N); comps f_1..f_{n-1}
ObstructionReport obstruction_morphism_extension(const AInfAlgebra& a, const AInfModule& m, const AInfModule& n,
                                                 const std::map<int, MultiOp>& comps, int stage);
ObstructionReport solve_primitive(const HochschildSetting& s, const MultiOp& c);

enum class Verdict { Formal, NotFormal, Inconclusive };
std::string to_string(Verdict v);

struct StageRecord {
  int stage = 0;
  ObstructionReport report;
  ModulePtr before;  // M^{(stage-1)}
};

struct FormalityOptions {
  int cap = 8;
  std::optional<int> max_stage;               // An-formality: stop after this stage
  std::optional<std::uint64_t> perturb_seed;  // add random cocycles to the primitives
};

struct FormalityCertificate {
  Verdict verdict = Verdict::Inconclusive;
  int stage = 0;  // failing stage for NotFormal, last stage run otherwise
  std::string reason;
  AlgebraPtr algebra;
  ModulePtr module;
  ModulePtr m2;
  std::vector<StageRecord> stages;
  std::optional<ModMorphism> witness;  // module -> m2 (Formal) or module -> stages.back().before (NotFormal)
  bool exact = false;                  // witness verified through saturation
};

FormalityCertificate prove_module_formality(const AlgebraPtr& a, const ModulePtr& m, const FormalityOptions& opt = {});
// pass iff stages 2..n all vanish
struct AnCheck {
  bool pass = true;
  int failing_stage = 0;
};
AnCheck an_formality_check(const AlgebraPtr& a, const ModulePtr& m, int n);
// re-check a certificate without re-running the prover
bool verify_certificate(const FormalityCertificate& c, std::string* why = nullptr);

// the module M^{(s)} determined by M and (id, 0, .., f_s, 0, ..)
struct GaugeStep {
  ModulePtr result;
  ModMorphism morphism;  // source -> result
  bool saturated = false;
};
GaugeStep push_forward(const ModulePtr& m, const MultiOp& fs, int cap = 8);
// the module M' with a morphism (id, f_2, f_3, ..) : M' -> N, solving for the source ops
GaugeStep pull_back(const ModulePtr& n, const std::map<int, MultiOp>& comps, int cap = 8);

// bounded equivalence probe for minimal pairs (A, M): no search, invariants only
enum class EquivVerdict { EquivalentWitnessed, NotEquivalentByInvariants, Unknown };
std::string to_string(EquivVerdict v);
struct EquivProbe {
  EquivVerdict verdict = EquivVerdict::Unknown;
  std::string reason;
  std::optional<ModMorphism> witness;
};
EquivProbe minimal_pair_equiv_probe(const AlgebraPtr& a1, const ModulePtr& m1, const AlgebraPtr& a2, const ModulePtr& m2);

// ---------------------------------------------------------------- normal cone

struct NormalCone {
  AlgebraPtr algebra;  // A[h]
  ModulePtr module;    // ops m_k h^{k-2}
};
NormalCone normal_cone_deform(const AlgebraPtr& a, const ModulePtr& m, const std::string& var = "h");
AInfModule normal_cone_fibre(const NormalCone& nc, const Scalar& at);
// f_k -> f_k h^{k-1}: a witness M -> M(2) becomes one M~ -> M(2)[h]
ModMorphism base_change(const ModMorphism& f, const ModulePtr& s, const ModulePtr& t, const RingMorphism& phi);
ModMorphism scale_witness(const ModMorphism& w, const NormalCone& nc, const ModulePtr& m2h);

// ---------------------------------------------------------------- algebra gauge

// Hochschild differential of the algebra on degree-0 cochains Hom(A^n, A)
MultiOp algebra_hochschild_d(const MultiOp& m0, const MultiOp& f);

struct Trivialization {
  bool trivial = false;
  std::optional<GradedMap> gauge;  // over the truncated ring; gauge^{-1} m_h(gauge, gauge) = m0
  int failing_order = 0;
  std::optional<MultiOp> class_rep;
};
Trivialization trivialize_truncated_deformation(const AInfAlgebra& a0, const MultiOp& m_h);
// gauge^{-1} m(gauge x, gauge y)
MultiOp gauge_transform(const MultiOp& m, const GradedMap& gauge);

}  // namespace ainf
