#include "ainf/bar.hpp"

#include <functional>

namespace ainf {

SparseVec BarComplex::apply(const SparseVec& v) const {
  SparseVec out;
  for (const auto& [i, c] : v) axpy(out, c, d[i]);
  return out;
}

namespace {

void enumerate_words(BarComplex& b, size_t first_dim, size_t dim, int max_len, bool module) {
  Key w;
  std::function<void(int)> rec = [&](int len) {
    if (static_cast<int>(w.size()) == len) {
      b.index[w] = static_cast<int>(b.words.size());
      b.words.push_back(w);
      return;
    }
    size_t n = (module && w.empty()) ? first_dim : dim;
    for (size_t i = 0; i < n; ++i) {
      w.push_back(static_cast<int>(i));
      rec(len);
      w.pop_back();
    }
  };
  for (int len = 1; len <= max_len; ++len) rec(len);
}

std::map<int, MultiOp> suspended(const std::map<int, MultiOp>& ops, const SpacePtr& first, const SpacePtr& rest, const SpacePtr& target) {
  std::map<int, MultiOp> out;
  for (const auto& [k, m] : ops) {
    std::vector<SpacePtr> slots(k, rest);
    slots[0] = first;
    out.emplace(k, suspend_op(m, slots, target));
  }
  return out;
}

// apply d_k at position j of word w, accumulating into col
void apply_piece(const BarComplex& b, const Key& w, size_t j, int k, const MultiOp& dk, const Scalar& c, SparseVec& col) {
  Key in(w.begin() + j, w.begin() + j + k);
  const SparseVec* v = dk.get(in);
  if (!v) return;
  Key out(w.begin(), w.begin() + j);
  out.push_back(0);
  out.insert(out.end(), w.begin() + j + k, w.end());
  for (const auto& [o, x] : *v) {
    out[j] = o;
    auto it = b.index.find(out);
    if (it == b.index.end()) throw Error("bar word outside truncation");
    axpy(col, c, SparseVec{{it->second, x}});
  }
}

BarCheck square_check(const BarComplex& b) {
  BarCheck r;
  for (size_t i = 0; i < b.words.size(); ++i) {
    SparseVec dd = b.apply(b.d[i]);
    if (!dd.empty()) {
      r.pass = false;
      r.failing_word = b.words[i];
      r.message = "d^2 != 0 on a word of length " + std::to_string(b.words[i].size());
      return r;
    }
  }
  r.message = "d^2 = 0 on words of length <= " + std::to_string(b.max_len);
  return r;
}

}  // namespace

BarComplex bar_differential(const AInfAlgebra& a, std::optional<int> max_len) {
  if (!a.saturated()) throw InputError("bar construction needs a saturated algebra");
  BarComplex b;
  b.letters = a.space->shifted(-1);
  b.max_len = max_len.value_or(std::max(1, 2 * a.top_arity() - 1));
  enumerate_words(b, 0, a.space->dim(), b.max_len, false);
  auto d = suspended(a.ops, b.letters, b.letters, b.letters);
  b.d.resize(b.words.size());
  for (size_t wi = 0; wi < b.words.size(); ++wi) {
    const Key& w = b.words[wi];
    long prefix = 0;
    for (size_t j = 0; j < w.size(); ++j) {
      Scalar c(prefix % 2 == 0 ? 1 : -1);
      for (const auto& [k, dk] : d) {
        if (j + k > w.size()) break;
        apply_piece(b, w, j, k, dk, c, b.d[wi]);
      }
      prefix += b.letters->degree(w[j]);
    }
  }
  return b;
}

BarCheck bar_check(const AInfAlgebra& a) { return square_check(bar_differential(a)); }

BarComplex module_bar_differential(const AInfModule& m, std::optional<int> max_len) {
  const AInfAlgebra& a = *m.algebra;
  if (!a.saturated() || !m.saturated()) throw InputError("module bar construction needs saturated structures");
  BarComplex b;
  b.letters = a.space->shifted(-1);
  b.module_letters = m.space->shifted(-1);
  int t = std::max({1, m.top_arity(), a.top_arity()});
  b.max_len = max_len.value_or(2 * t - 1);
  enumerate_words(b, m.space->dim(), a.space->dim(), b.max_len, true);
  auto da = suspended(a.ops, b.letters, b.letters, b.letters);
  auto dm = suspended(m.ops, b.module_letters, b.letters, b.module_letters);
  b.d.resize(b.words.size());
  for (size_t wi = 0; wi < b.words.size(); ++wi) {
    const Key& w = b.words[wi];
    for (const auto& [k, dk] : dm) {
      if (static_cast<size_t>(k) > w.size()) break;
      apply_piece(b, w, 0, k, dk, Scalar(1), b.d[wi]);
    }
    long prefix = b.module_letters->degree(w[0]);
    for (size_t j = 1; j < w.size(); ++j) {
      Scalar c(prefix % 2 == 0 ? 1 : -1);
      for (const auto& [k, dk] : da) {
        if (j + k > w.size()) break;
        apply_piece(b, w, j, k, dk, c, b.d[wi]);
      }
      prefix += b.letters->degree(w[j]);
    }
  }
  return b;
}

BarCheck module_bar_check(const AInfModule& m) { return square_check(module_bar_differential(m)); }

}  // namespace ainf
