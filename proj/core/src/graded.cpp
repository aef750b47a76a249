#include "ainf/graded.hpp"

#include <algorithm>
#include <set>

namespace ainf {

// ---------------------------------------------------------------- GradedSpace

SpacePtr GradedSpace::make(const Ring* ring, std::vector<Component> comps) {
  auto s = std::shared_ptr<GradedSpace>(new GradedSpace());
  s->ring_ = ring;
  std::stable_sort(comps.begin(), comps.end(), [](const Component& a, const Component& b) { return a.degree < b.degree; });
  for (size_t i = 0; i + 1 < comps.size(); ++i)
    if (comps[i].degree == comps[i + 1].degree) throw InputError("degree " + std::to_string(comps[i].degree) + " listed twice");
  for (const auto& c : comps) {
    if (c.labels.empty()) throw InputError("empty component in degree " + std::to_string(c.degree));
    for (const auto& l : c.labels) {
      if (s->index_.count(l)) throw InputError("duplicate basis label '" + l + "'");
      s->index_[l] = s->label_.size();
      s->label_.push_back(l);
      s->degree_.push_back(c.degree);
    }
  }
  s->comps_ = std::move(comps);
  return s;
}

std::optional<size_t> GradedSpace::find(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

size_t GradedSpace::index(const std::string& label) const {
  auto i = find(label);
  if (!i) throw InputError("unknown basis label '" + label + "'");
  return *i;
}

std::vector<int> GradedSpace::degrees() const {
  std::vector<int> d;
  for (const auto& c : comps_) d.push_back(c.degree);
  return d;
}

size_t GradedSpace::dim_in(int d) const {
  for (const auto& c : comps_)
    if (c.degree == d) return c.labels.size();
  return 0;
}

std::vector<size_t> GradedSpace::indices_in(int d) const {
  std::vector<size_t> out;
  for (size_t i = 0; i < dim(); ++i)
    if (degree_[i] == d) out.push_back(i);
  return out;
}

int GradedSpace::min_degree() const {
  if (comps_.empty()) throw InputError("zero space has no degrees");
  return comps_.front().degree;
}

int GradedSpace::max_degree() const {
  if (comps_.empty()) throw InputError("zero space has no degrees");
  return comps_.back().degree;
}

SpacePtr GradedSpace::with_ring(const Ring* r) const { return make(r, comps_); }

SpacePtr GradedSpace::shifted(int s) const {
  auto c = comps_;
  for (auto& x : c) x.degree += s;
  return make(ring_, c);
}

bool GradedSpace::operator==(const GradedSpace& o) const {
  return ring_ == o.ring_ && label_ == o.label_ && degree_ == o.degree_;
}

bool same_space(const SpacePtr& a, const SpacePtr& b) { return a == b || (a && b && *a == *b); }

void require_same_space(const SpacePtr& a, const SpacePtr& b, const std::string& what) {
  if (!same_space(a, b)) throw ShapeMismatch("space mismatch: " + what);
}

// ---------------------------------------------------------------- GradedMap

GradedMap::GradedMap(SpacePtr source, SpacePtr target, int degree)
    : source_(std::move(source)), target_(std::move(target)), degree_(degree),
      mat_(target_->dim(), source_->dim(), target_->ring()) {}

GradedMap::GradedMap(SpacePtr source, SpacePtr target, int degree, Matrix m)
    : source_(std::move(source)), target_(std::move(target)), degree_(degree), mat_(std::move(m)) {
  if (mat_.rows() != target_->dim() || mat_.cols() != source_->dim()) throw ShapeMismatch("matrix shape does not match spaces");
  for (size_t i = 0; i < mat_.rows(); ++i)
    for (size_t j = 0; j < mat_.cols(); ++j)
      if (!mat_.at(i, j).is_zero() && target_->degree(i) != source_->degree(j) + degree_)
        throw DegreeViolation("map entry (" + target_->label(i) + ", " + source_->label(j) + ") breaks degree " +
                              std::to_string(degree_));
}

GradedMap GradedMap::identity(SpacePtr s) {
  GradedMap g(s, s, 0);
  for (size_t i = 0; i < s->dim(); ++i) g.mat_.at(i, i) = Scalar::one(s->ring());
  return g;
}

void GradedMap::set(size_t out, size_t in, const Scalar& c) {
  if (!c.is_zero() && target_->degree(out) != source_->degree(in) + degree_)
    throw DegreeViolation("map entry (" + target_->label(out) + ", " + source_->label(in) + ") breaks degree " +
                          std::to_string(degree_));
  mat_.at(out, in) = c.coerce(target_->ring());
}

SparseVec GradedMap::apply(const SparseVec& v) const {
  SparseVec r;
  for (const auto& [j, c] : v)
    for (size_t i = 0; i < mat_.rows(); ++i)
      if (!mat_.at(i, j).is_zero()) {
        auto& slot = r[static_cast<int>(i)];
        slot += c * mat_.at(i, j);
      }
  for (auto it = r.begin(); it != r.end();) it = it->second.is_zero() ? r.erase(it) : std::next(it);
  return r;
}

SparseVec GradedMap::column(size_t in) const {
  SparseVec r;
  for (size_t i = 0; i < mat_.rows(); ++i)
    if (!mat_.at(i, in).is_zero()) r[static_cast<int>(i)] = mat_.at(i, in);
  return r;
}

bool GradedMap::operator==(const GradedMap& o) const {
  return same_space(source_, o.source_) && same_space(target_, o.target_) && degree_ == o.degree_ && mat_ == o.mat_;
}

GradedMap GradedMap::operator+(const GradedMap& o) const {
  if (degree_ != o.degree_) throw ShapeMismatch("degree mismatch in map sum");
  return GradedMap(source_, target_, degree_, mat_ + o.mat_);
}

GradedMap GradedMap::operator-(const GradedMap& o) const {
  if (degree_ != o.degree_) throw ShapeMismatch("degree mismatch in map difference");
  return GradedMap(source_, target_, degree_, mat_ - o.mat_);
}

Matrix GradedMap::block(int d) const {
  auto in = source_->indices_in(d);
  auto out = target_->indices_in(d + degree_);
  Matrix b(out.size(), in.size(), target_->ring());
  for (size_t i = 0; i < out.size(); ++i)
    for (size_t j = 0; j < in.size(); ++j) b.at(i, j) = mat_.at(out[i], in[j]);
  return b;
}

GradedMap compose_graded(const GradedMap& g, const GradedMap& f) {
  require_same_space(f.target(), g.source(), "compose_graded");
  return GradedMap(f.source(), g.target(), f.degree() + g.degree(), g.matrix() * f.matrix());
}

// ---------------------------------------------------------------- MultiOp

MultiOp::MultiOp(Shape shape, std::vector<SpacePtr> slots, SpacePtr target, int degree)
    : shape_(shape), slots_(std::move(slots)), target_(std::move(target)), degree_(degree) {
  if (slots_.empty()) throw ShapeMismatch("arity must be >= 1");
}

MultiOp MultiOp::algebra(SpacePtr a, int arity, int degree, SpacePtr target) {
  if (arity < 1) throw ShapeMismatch("arity must be >= 1");
  return MultiOp(Shape::Algebra, std::vector<SpacePtr>(arity, a), target ? target : a, degree);
}

MultiOp MultiOp::module(SpacePtr a, SpacePtr m, int arity, int degree, SpacePtr target) {
  if (arity < 1) throw ShapeMismatch("arity must be >= 1");
  std::vector<SpacePtr> s(arity, a);
  s[0] = m;
  return MultiOp(Shape::Module, s, target ? target : m, degree);
}

MultiOp MultiOp::from_map(const GradedMap& g, Shape shape) {
  MultiOp op(shape, {g.source()}, g.target(), g.degree());
  for (size_t j = 0; j < g.source()->dim(); ++j) {
    SparseVec c = g.column(j);
    if (!c.empty()) op.table_[{static_cast<int>(j)}] = std::move(c);
  }
  return op;
}

int MultiOp::input_degree(const Key& k) const {
  int d = 0;
  for (size_t i = 0; i < k.size(); ++i) d += slots_[i]->degree(k[i]);
  return d;
}

std::string MultiOp::key_string(const Key& k) const {
  std::string s = "(";
  for (size_t i = 0; i < k.size(); ++i) {
    if (i) s += ",";
    s += slots_[i]->label(k[i]);
  }
  return s + ")";
}

void MultiOp::add(const Key& k, int out, const Scalar& c) {
  if (c.is_zero()) return;
  if (static_cast<int>(k.size()) != arity()) throw ShapeMismatch("key length does not match arity");
  for (size_t i = 0; i < k.size(); ++i)
    if (k[i] < 0 || static_cast<size_t>(k[i]) >= slots_[i]->dim()) throw ShapeMismatch("basis index out of range");
  if (out < 0 || static_cast<size_t>(out) >= target_->dim()) throw ShapeMismatch("output index out of range");
  if (target_->degree(out) != input_degree(k) + degree_)
    throw DegreeViolation("entry " + key_string(k) + " -> " + target_->label(out) + " breaks degree " + std::to_string(degree_));
  auto& v = table_[k];
  auto it = v.find(out);
  if (it == v.end()) {
    v.emplace(out, c.coerce(ring()));
  } else {
    it->second += c;
    if (it->second.is_zero()) v.erase(it);
  }
  if (v.empty()) table_.erase(k);
}

void MultiOp::add(const Key& k, const SparseVec& v, const Scalar& c) {
  for (const auto& [i, x] : v) add(k, i, c * x);
}

void MultiOp::add(const MultiOp& o, const Scalar& c) {
  if (o.arity() != arity() || o.degree_ != degree_) throw ShapeMismatch("adding ops of different shape");
  for (size_t i = 0; i < slots_.size(); ++i) require_same_space(slots_[i], o.slots_[i], "op sum slot");
  require_same_space(target_, o.target_, "op sum target");
  for (const auto& [k, v] : o.table_) {
    auto& dst = table_[k];
    axpy(dst, c, v);
    if (dst.empty()) table_.erase(k);
  }
}

const SparseVec* MultiOp::get(const Key& k) const {
  auto it = table_.find(k);
  return it == table_.end() ? nullptr : &it->second;
}

SparseVec MultiOp::apply(const Key& k) const {
  const SparseVec* v = get(k);
  return v ? *v : SparseVec{};
}

SparseVec MultiOp::apply_vectors(const std::vector<SparseVec>& args) const {
  if (static_cast<int>(args.size()) != arity()) throw ShapeMismatch("argument count does not match arity");
  SparseVec out;
  Key k(args.size());
  std::function<void(size_t, Scalar)> rec = [&](size_t i, Scalar c) {
    if (i == args.size()) {
      if (const SparseVec* v = get(k)) axpy(out, c, *v);
      return;
    }
    for (const auto& [idx, x] : args[i]) {
      k[i] = idx;
      rec(i + 1, c * x);
    }
  };
  rec(0, Scalar::one(ring()));
  return out;
}

MultiOp MultiOp::scaled(const Scalar& c) const {
  MultiOp r = zero_like();
  r.add(*this, c);
  return r;
}

GradedMap MultiOp::to_map() const {
  if (arity() != 1) throw ShapeMismatch("to_map needs arity 1");
  GradedMap g(slots_[0], target_, degree_);
  for (const auto& [k, v] : table_)
    for (const auto& [i, c] : v) g.set(i, k[0], c);
  return g;
}

bool MultiOp::operator==(const MultiOp& o) const {
  if (arity() != o.arity() || degree_ != o.degree_ || !same_space(target_, o.target_)) return false;
  for (size_t i = 0; i < slots_.size(); ++i)
    if (!same_space(slots_[i], o.slots_[i])) return false;
  return table_ == o.table_;
}

MultiOp MultiOp::zero_like() const { return MultiOp(shape_, slots_, target_, degree_); }

// ---------------------------------------------------------------- composition

MultiOp partial(const MultiOp& outer, int pos, const MultiOp& inner) {
  if (pos < 0 || pos >= outer.arity()) throw ShapeMismatch("partial composition position out of range");
  require_same_space(inner.target(), outer.slot(pos), "partial composition");
  std::vector<SpacePtr> slots;
  for (int i = 0; i < pos; ++i) slots.push_back(outer.slot(i));
  for (int i = 0; i < inner.arity(); ++i) slots.push_back(inner.slot(i));
  for (int i = pos + 1; i < outer.arity(); ++i) slots.push_back(outer.slot(i));
  MultiOp res(outer.shape(), slots, outer.target(), outer.degree() + inner.degree());
  if (outer.is_zero() || inner.is_zero()) return res;
  // index outer entries by the value in slot pos
  std::map<int, std::vector<const Table::value_type*>> by_slot;
  for (const auto& e : outer.table()) by_slot[e.first[pos]].push_back(&e);
  const bool odd_inner = inner.degree() % 2 != 0;
  Key k;
  for (const auto& [ik, iv] : inner.table()) {
    for (const auto& [o, c] : iv) {
      auto it = by_slot.find(o);
      if (it == by_slot.end()) continue;
      for (const auto* e : it->second) {
        const Key& ok = e->first;
        long sgn = 0;
        if (odd_inner)
          for (int i = 0; i < pos; ++i) sgn += outer.slot(i)->degree(ok[i]);
        k.assign(ok.begin(), ok.begin() + pos);
        k.insert(k.end(), ik.begin(), ik.end());
        k.insert(k.end(), ok.begin() + pos + 1, ok.end());
        Scalar coef = (sgn % 2 == 0) ? c : -c;
        res.add(k, e->second, coef);
      }
    }
  }
  return res;
}

MultiOp compose_tensor(const MultiOp& outer, const std::vector<const MultiOp*>& inners) {
  if (static_cast<int>(inners.size()) != outer.arity()) throw ShapeMismatch("compose_tensor needs one inner per slot");
  MultiOp cur = outer;
  int pos = 0;
  for (const MultiOp* in : inners) {
    cur = partial(cur, pos, *in);
    pos += in->arity();
  }
  return cur;
}

MultiOp post_compose(const GradedMap& g, const MultiOp& op) { return partial(MultiOp::from_map(g, op.shape()), 0, op); }

MultiOp pre_compose(const MultiOp& op, const std::vector<const GradedMap*>& maps) {
  if (static_cast<int>(maps.size()) != op.arity()) throw ShapeMismatch("pre_compose needs one map per slot");
  std::vector<MultiOp> ops;
  ops.reserve(maps.size());
  for (const auto* m : maps) {
    if (m->degree() != 0) throw ShapeMismatch("pre_compose expects degree-0 maps");
    ops.push_back(MultiOp::from_map(*m));
  }
  std::vector<const MultiOp*> ptrs;
  for (const auto& o : ops) ptrs.push_back(&o);
  MultiOp r = compose_tensor(op, ptrs);
  r.set_shape(op.shape());
  return r;
}

MultiOp base_change_op(const MultiOp& op, const std::vector<SpacePtr>& slots, const SpacePtr& target, const RingMorphism& phi) {
  MultiOp r(op.shape(), slots, target, op.degree());
  for (const auto& [k, v] : op.table())
    for (const auto& [i, c] : v) r.add(k, i, phi(c));
  return r;
}

// ---------------------------------------------------------------- signs

long SignConvention::morphism(const std::vector<int>& parts) {
  long s = 0, prefix = parts.empty() ? 0 : parts[0];
  for (size_t u = 1; u < parts.size(); ++u) {
    s += static_cast<long>(1 - parts[u]) * prefix;
    prefix += parts[u];
  }
  return s;
}

long SignConvention::suspension(int arity, int op_degree, const std::vector<int>& input_degrees) {
  long e = arity - 1 + op_degree;
  for (int v = 0; v < arity; ++v) e += static_cast<long>(arity - 1 - v) * (input_degrees[v] - 1);
  return e;
}

namespace {

MultiOp reshift(const MultiOp& m, const std::vector<SpacePtr>& slots, const SpacePtr& target, int new_degree, bool from_unsuspended) {
  if (static_cast<int>(slots.size()) != m.arity()) throw ShapeMismatch("suspension slot count");
  for (int i = 0; i < m.arity(); ++i)
    if (slots[i]->dim() != m.slot(i)->dim()) throw ShapeMismatch("suspension slot dimension");
  if (target->dim() != m.target()->dim()) throw ShapeMismatch("suspension target dimension");
  MultiOp r(m.shape(), slots, target, new_degree);
  int k = m.arity();
  int mdeg = from_unsuspended ? m.degree() : new_degree;
  std::vector<int> degs(k);
  for (const auto& [key, v] : m.table()) {
    for (int i = 0; i < k; ++i) degs[i] = from_unsuspended ? m.slot(i)->degree(key[i]) : slots[i]->degree(key[i]);
    long e = SignConvention::suspension(k, mdeg, degs);
    r.add(key, v, Scalar(e % 2 == 0 ? 1 : -1));
  }
  return r;
}

}  // namespace

MultiOp suspend_op(const MultiOp& m, const std::vector<SpacePtr>& ss, const SpacePtr& st) {
  return reshift(m, ss, st, m.degree() + m.arity() - 1, true);
}

MultiOp desuspend_op(const MultiOp& d, const std::vector<SpacePtr>& slots, const SpacePtr& target) {
  return reshift(d, slots, target, d.degree() + 1 - d.arity(), false);
}

// ---------------------------------------------------------------- tuples

std::vector<Key> tensor_basis(const std::vector<SpacePtr>& slots, std::optional<int> min_deg, std::optional<int> max_deg) {
  std::vector<Key> out;
  Key k(slots.size(), 0);
  std::function<void(size_t, int)> rec = [&](size_t i, int deg) {
    if (i == slots.size()) {
      if ((!min_deg || deg >= *min_deg) && (!max_deg || deg <= *max_deg)) out.push_back(k);
      return;
    }
    for (size_t b = 0; b < slots[i]->dim(); ++b) {
      k[i] = static_cast<int>(b);
      rec(i + 1, deg + slots[i]->degree(b));
    }
  };
  rec(0, 0);
  return out;
}

void for_each_tuple(const std::vector<SpacePtr>& slots, const std::function<void(const Key&)>& f) {
  Key k(slots.size(), 0);
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == slots.size()) {
      f(k);
      return;
    }
    for (size_t b = 0; b < slots[i]->dim(); ++b) {
      k[i] = static_cast<int>(b);
      rec(i + 1);
    }
  };
  rec(0);
}

std::optional<int> saturation_bound(const GradedSpace& alg, const GradedSpace* first, const GradedSpace& target,
                                    int degree_offset, int limit) {
  if (target.empty()) return 0;
  std::set<int> tdeg;
  for (int d : target.degrees()) tdeg.insert(d);
  std::vector<int> adeg = alg.degrees();
  // sums[n] = achievable total input degrees for n algebra inputs
  std::set<int> sums;
  if (first) {
    if (first->empty()) return 0;
    for (int d : first->degrees()) sums.insert(d);
  } else {
    sums.insert(0);
  }
  int best = 0;
  int start = first ? 1 : 0;
  for (int k = start; k <= limit; ++k) {
    if (k > start || first) {
      // op of arity k (counting all slots) has degree degree_offset - k
      for (int s : sums)
        if (tdeg.count(s + degree_offset - k)) {
          best = k;
          break;
        }
    }
    if (adeg.empty()) break;
    std::set<int> next;
    for (int s : sums)
      for (int d : adeg) next.insert(s + d);
    sums.swap(next);
  }
  if (best >= limit - 2) return std::nullopt;
  return best;
}

}  // namespace ainf
