#pragma once

#include <cstdint>

#include "ainf/module.hpp"

namespace ainf {

// proj incl = id, incl proj - id = d htpy + htpy d, htpy incl = 0, proj htpy = 0, htpy htpy = 0
struct Contraction {
  SpacePtr big, small;
  GradedMap d, incl, proj, htpy;
};

struct ContractionOptions {
  // conjugate by a seeded random change of basis before choosing pivots
  std::optional<std::uint64_t> seed;
};

Contraction contraction_from_complex(const SpacePtr& space, const GradedMap& d, const ContractionOptions& opt = {});
// enforce the side conditions on a raw contraction
Contraction normalize_contraction(const Contraction& raw);
bool verify_contraction(const Contraction& c, std::string* why = nullptr, bool side_conditions = true);
std::map<int, size_t> homology_dims(const GradedMap& d);

struct TransferOptions {
  int cap = 8;  // arity cap when the result does not saturate
};

struct AlgebraTransfer {
  AlgebraPtr minimal;
  AlgMorphism f;
  bool saturated = false;
};

struct PairTransfer {
  AlgebraTransfer alg;
  ModulePtr minimal_module;
  PairMorphism pair;
  bool saturated = false;
};

struct CohomologyResult {
  Contraction contraction;
  AlgebraPtr algebra;  // H with the induced product
};

CohomologyResult cohomology(const AInfAlgebra& a, const ContractionOptions& opt = {});
AlgebraTransfer transfer_algebra(const AlgebraPtr& a, const Contraction& c, const TransferOptions& opt = {});
PairTransfer transfer_pair(const AlgebraPtr& a, const ModulePtr& m, const Contraction& ca, const Contraction& cm,
                           const TransferOptions& opt = {});
// convenience: canonical contractions
AlgebraTransfer minimal_model(const AlgebraPtr& a, const TransferOptions& opt = {});
PairTransfer minimal_model(const AlgebraPtr& a, const ModulePtr& m, const TransferOptions& opt = {});

}  // namespace ainf
