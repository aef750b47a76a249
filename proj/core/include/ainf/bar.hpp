#pragma once

#include "ainf/module.hpp"

namespace ainf {

// Coderivation on the words of length <= max_len of the reduced tensor
// coalgebra on A[1] (module case: M[1] (x) B(A)+, word[0] is the module letter).
struct BarComplex {
  SpacePtr letters;         // suspended algebra
  SpacePtr module_letters;  // suspended module, or null
  int max_len = 0;
  std::vector<Key> words;
  std::map<Key, int> index;
  std::vector<SparseVec> d;  // column per word

  SparseVec apply(const SparseVec& v) const;
};

struct BarCheck {
  bool pass = true;
  std::optional<Key> failing_word;
  std::string message;
  explicit operator bool() const { return pass; }
};

BarComplex bar_differential(const AInfAlgebra& a, std::optional<int> max_len = std::nullopt);
BarCheck bar_check(const AInfAlgebra& a);
BarComplex module_bar_differential(const AInfModule& m, std::optional<int> max_len = std::nullopt);
BarCheck module_bar_check(const AInfModule& m);

}  // namespace ainf
