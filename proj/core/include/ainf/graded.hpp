#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ainf/coeff.hpp"
#include "ainf/linalg.hpp"

namespace ainf {

struct DegreeViolation : InputError {
  using InputError::InputError;
};
struct ShapeMismatch : InputError {
  using InputError::InputError;
};

class GradedSpace;
using SpacePtr = std::shared_ptr<const GradedSpace>;

// Basis is ordered by degree, then by listing order inside a degree.
class GradedSpace {
 public:
  struct Component {
    int degree;
    std::vector<std::string> labels;
  };

  static SpacePtr make(const Ring* ring, std::vector<Component> comps);
  static SpacePtr zero(const Ring* ring) { return make(ring, {}); }

  const Ring* ring() const { return ring_; }
  size_t dim() const { return degree_.size(); }
  int degree(size_t i) const { return degree_[i]; }
  const std::string& label(size_t i) const { return label_[i]; }
  std::optional<size_t> find(const std::string& label) const;
  size_t index(const std::string& label) const;
  const std::vector<Component>& components() const { return comps_; }
  std::vector<int> degrees() const;
  size_t dim_in(int d) const;
  std::vector<size_t> indices_in(int d) const;
  bool empty() const { return degree_.empty(); }
  int min_degree() const;
  int max_degree() const;

  SpacePtr with_ring(const Ring* r) const;
  // same labels, degrees shifted by s
  SpacePtr shifted(int s) const;

  bool operator==(const GradedSpace& o) const;

 private:
  const Ring* ring_ = nullptr;
  std::vector<Component> comps_;
  std::vector<int> degree_;
  std::vector<std::string> label_;
  std::map<std::string, size_t> index_;
};

bool same_space(const SpacePtr& a, const SpacePtr& b);
void require_same_space(const SpacePtr& a, const SpacePtr& b, const std::string& what);

// Linear map of fixed degree; matrix is target.dim x source.dim.
class GradedMap {
 public:
  GradedMap(SpacePtr source, SpacePtr target, int degree);
  GradedMap(SpacePtr source, SpacePtr target, int degree, Matrix m);
  static GradedMap identity(SpacePtr s);

  const SpacePtr& source() const { return source_; }
  const SpacePtr& target() const { return target_; }
  int degree() const { return degree_; }
  const Matrix& matrix() const { return mat_; }
  void set(size_t out, size_t in, const Scalar& c);
  const Scalar& get(size_t out, size_t in) const { return mat_.at(out, in); }
  SparseVec apply(const SparseVec& v) const;
  SparseVec column(size_t in) const;
  bool is_zero() const { return mat_.is_zero(); }
  bool operator==(const GradedMap& o) const;
  GradedMap operator+(const GradedMap& o) const;
  GradedMap operator-(const GradedMap& o) const;
  // block from degree d to degree d+degree
  Matrix block(int d) const;

 private:
  SpacePtr source_, target_;
  int degree_;
  Matrix mat_;
};

GradedMap compose_graded(const GradedMap& g, const GradedMap& f);

using Key = std::vector<int>;
using Table = std::map<Key, SparseVec>;

enum class Shape { Algebra, Module };

// Sparse multilinear map slot_0 x ... x slot_{k-1} -> target of fixed degree.
// Algebra shape: all slots on the same space; module shape: slot 0 distinguished.
class MultiOp {
 public:
  MultiOp() = default;
  MultiOp(Shape shape, std::vector<SpacePtr> slots, SpacePtr target, int degree);
  static MultiOp algebra(SpacePtr a, int arity, int degree, SpacePtr target = nullptr);
  static MultiOp module(SpacePtr a, SpacePtr m, int arity, int degree, SpacePtr target = nullptr);
  static MultiOp from_map(const GradedMap& g, Shape shape = Shape::Algebra);

  Shape shape() const { return shape_; }
  int arity() const { return static_cast<int>(slots_.size()); }
  int degree() const { return degree_; }
  const SpacePtr& slot(int i) const { return slots_[i]; }
  const std::vector<SpacePtr>& slots() const { return slots_; }
  const SpacePtr& target() const { return target_; }
  const Ring* ring() const { return target_->ring(); }
  const Table& table() const { return table_; }
  bool is_zero() const { return table_.empty(); }
  size_t size() const { return table_.size(); }

  // accumulate; zero results are dropped; degree-checked
  void add(const Key& k, int out, const Scalar& c);
  void add(const Key& k, const SparseVec& v, const Scalar& c = Scalar(1));
  void add(const MultiOp& o, const Scalar& c = Scalar(1));
  const SparseVec* get(const Key& k) const;
  SparseVec apply(const Key& k) const;
  // multilinear extension to vectors
  SparseVec apply_vectors(const std::vector<SparseVec>& args) const;
  MultiOp scaled(const Scalar& c) const;
  GradedMap to_map() const;
  bool operator==(const MultiOp& o) const;
  bool operator!=(const MultiOp& o) const { return !(*this == o); }
  int input_degree(const Key& k) const;
  std::string key_string(const Key& k) const;
  // shape-compatible zero
  MultiOp zero_like() const;
  void set_shape(Shape s) { shape_ = s; }

 private:
  Shape shape_ = Shape::Algebra;
  std::vector<SpacePtr> slots_;
  SpacePtr target_;
  int degree_ = 0;
  Table table_;
};

// outer with inner plugged into slot pos; inner is moved past the inputs
// before pos, giving the Koszul sign (-1)^{|inner| * sum of their degrees}
MultiOp partial(const MultiOp& outer, int pos, const MultiOp& inner);
// outer(inner_1 (x) ... (x) inner_r) with Koszul signs
MultiOp compose_tensor(const MultiOp& outer, const std::vector<const MultiOp*>& inners);
// g o op
MultiOp post_compose(const GradedMap& g, const MultiOp& op);
// op with every slot precomposed by the corresponding degree-0 map
MultiOp pre_compose(const MultiOp& op, const std::vector<const GradedMap*>& maps);
MultiOp base_change_op(const MultiOp& op, const std::vector<SpacePtr>& slots, const SpacePtr& target,
                       const RingMorphism& phi);

// Sign bookkeeping in one place.
struct SignConvention {
  // Stasheff: (-1)^{jk+l}
  static long stasheff(int j, int k, int l) { return static_cast<long>(j) * k + l; }
  // morphisms: s = sum_{2<=u<=r} (1-i_u) sum_{v<u} i_v
  static long morphism(const std::vector<int>& parts);
  // m_k -> d_k = (-1)^{k-1+deg m} s m (s^{-1})^{(x)k}; the Koszul part from
  // s^{-1} crossing suspended inputs of degrees |a_v|-1
  static long suspension(int arity, int op_degree, const std::vector<int>& input_degrees);
  static long koszul(long a, long b) { return a * b; }
};

// degree-shifted copy: d(sa_1..sa_k) = +- s m(a_1..a_k)
MultiOp suspend_op(const MultiOp& m, const std::vector<SpacePtr>& suspended_slots, const SpacePtr& suspended_target);
MultiOp desuspend_op(const MultiOp& d, const std::vector<SpacePtr>& slots, const SpacePtr& target);

// all basis tuples, lexicographic, optionally restricted to a total-degree window
std::vector<Key> tensor_basis(const std::vector<SpacePtr>& slots, std::optional<int> min_deg = std::nullopt,
                              std::optional<int> max_deg = std::nullopt);
// visit tuples with a given total degree
void for_each_tuple(const std::vector<SpacePtr>& slots, const std::function<void(const Key&)>& f);

// Largest arity for which a degree-forced nonzero op can exist, or nullopt when the
// supports admit nonzero ops of every arity. target_shift is the op degree offset:
// algebra ops (2-k), morphisms (1-k).
std::optional<int> saturation_bound(const GradedSpace& alg, const GradedSpace* first, const GradedSpace& target,
                                    int degree_offset, int limit = 64);

}  // namespace ainf
