#include "ainf/linalg.hpp"

namespace ainf {

void axpy(SparseVec& y, const Scalar& a, const SparseVec& x) {
  if (a.is_zero()) return;
  for (const auto& [i, c] : x) {
    auto it = y.find(i);
    if (it == y.end()) {
      Scalar t = a * c;
      if (!t.is_zero()) y.emplace(i, std::move(t));
    } else {
      it->second += a * c;
      if (it->second.is_zero()) y.erase(it);
    }
  }
}

SparseVec scaled(const SparseVec& x, const Scalar& a) {
  SparseVec y;
  axpy(y, a, x);
  return y;
}

std::string to_string(const SparseVec& v) {
  std::string s = "{";
  bool first = true;
  for (const auto& [i, c] : v) {
    if (!first) s += ", ";
    first = false;
    s += std::to_string(i) + ": " + c.to_string();
  }
  return s + "}";
}

Matrix::Matrix(size_t rows, size_t cols, const Ring* ring)
    : rows_(rows), cols_(cols), ring_(ring), data_(rows * cols, Scalar::zero(ring)) {}

Matrix Matrix::identity(size_t n, const Ring* ring) {
  Matrix m(n, n, ring);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(ring);
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw InputError("matrix shape mismatch in product");
  Matrix r(rows_, o.cols_, ring_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t k = 0; k < cols_; ++k) {
      const Scalar& a = at(i, k);
      if (a.is_zero()) continue;
      for (size_t j = 0; j < o.cols_; ++j)
        if (!o.at(k, j).is_zero()) r.at(i, j) += a * o.at(k, j);
    }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("matrix shape mismatch in sum");
  Matrix r = *this;
  for (size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("matrix shape mismatch in difference");
  Matrix r = *this;
  for (size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
  return r;
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

bool Matrix::is_zero() const {
  for (const auto& s : data_)
    if (!s.is_zero()) return false;
  return true;
}

Matrix Matrix::transpose() const {
  Matrix r(cols_, rows_, ring_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

Matrix Matrix::map_entries(const RingMorphism& phi) const {
  Matrix r(rows_, cols_, phi.target);
  for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = phi(data_[i]);
  return r;
}

std::vector<Scalar> Matrix::apply(const std::vector<Scalar>& v) const {
  if (v.size() != cols_) throw InputError("vector length mismatch");
  std::vector<Scalar> r(rows_, Scalar::zero(ring_));
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j)
      if (!at(i, j).is_zero() && !v[j].is_zero()) r[i] += at(i, j) * v[j];
  return r;
}

RowReduction row_reduce(const Matrix& a) {
  if (a.ring() && !a.ring()->is_field()) throw RingMismatch("row reduction needs a field, got " + a.ring()->descriptor());
  RowReduction rr{a, Matrix::identity(a.rows(), a.ring()), {}};
  Matrix& m = rr.reduced;
  Matrix& t = rr.transform;
  size_t row = 0;
  for (size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    size_t piv = row;
    while (piv < m.rows() && m.at(piv, col).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row) {
      for (size_t j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(row, j));
      for (size_t j = 0; j < t.cols(); ++j) std::swap(t.at(piv, j), t.at(row, j));
    }
    Scalar inv = m.at(row, col).inverse();
    for (size_t j = 0; j < m.cols(); ++j) m.at(row, j) *= inv;
    for (size_t j = 0; j < t.cols(); ++j) t.at(row, j) *= inv;
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m.at(i, col).is_zero()) continue;
      Scalar f = m.at(i, col);
      for (size_t j = 0; j < m.cols(); ++j)
        if (!m.at(row, j).is_zero()) m.at(i, j) -= f * m.at(row, j);
      for (size_t j = 0; j < t.cols(); ++j)
        if (!t.at(row, j).is_zero()) t.at(i, j) -= f * t.at(row, j);
    }
    rr.pivots.push_back(col);
    ++row;
  }
  return rr;
}

size_t rank(const Matrix& a) { return row_reduce(a).pivots.size(); }

Matrix kernel_basis(const Matrix& a) {
  RowReduction rr = row_reduce(a);
  std::vector<bool> is_piv(a.cols(), false);
  for (size_t c : rr.pivots) is_piv[c] = true;
  std::vector<size_t> free;
  for (size_t c = 0; c < a.cols(); ++c)
    if (!is_piv[c]) free.push_back(c);
  Matrix k(a.cols(), free.size(), a.ring());
  for (size_t f = 0; f < free.size(); ++f) {
    k.at(free[f], f) = Scalar::one(a.ring());
    for (size_t r = 0; r < rr.pivots.size(); ++r) k.at(rr.pivots[r], f) = -rr.reduced.at(r, free[f]);
  }
  return k;
}

std::optional<std::vector<Scalar>> solve(const Matrix& a, const std::vector<Scalar>& b) {
  RowReduction rr = row_reduce(a);
  std::vector<Scalar> tb = rr.transform.apply(b);
  for (size_t r = rr.pivots.size(); r < tb.size(); ++r)
    if (!tb[r].is_zero()) return std::nullopt;
  std::vector<Scalar> x(a.cols(), Scalar::zero(a.ring()));
  for (size_t r = 0; r < rr.pivots.size(); ++r) x[rr.pivots[r]] = tb[r];
  return x;
}

Matrix inverse(const Matrix& a) {
  if (a.rows() != a.cols()) throw NotInvertible("non-square matrix");
  RowReduction rr = row_reduce(a);
  if (rr.pivots.size() != a.rows()) throw NotInvertible("singular matrix");
  return rr.transform;
}

// ---------------------------------------------------------------- Echelon

SparseVec Echelon::reduce(const SparseVec& v0, SparseVec* combo) const {
  SparseVec v = v0;
  if (combo) combo->clear();
  auto it = v.begin();
  while (it != v.end()) {
    auto row = rows_.find(it->first);
    if (row == rows_.end()) {
      ++it;
      continue;
    }
    int key = it->first;
    Scalar c = it->second;
    axpy(v, -c, row->second.v);
    if (combo) axpy(*combo, c, row->second.combo);
    it = v.upper_bound(key);
  }
  return v;
}

bool Echelon::insert(const SparseVec& v, int tag) {
  SparseVec combo;
  SparseVec r = reduce(v, &combo);
  if (r.empty()) return false;
  // r = v - sum combo gens
  SparseVec rc;
  rc.emplace(tag, Scalar::one(ring_));
  axpy(rc, Scalar::from_int(ring_, -1), combo);
  Scalar inv = r.begin()->second.inverse();
  int piv = r.begin()->first;
  Row row{scaled(r, inv), scaled(rc, inv)};
  // keep existing rows reduced against the new pivot
  for (auto& [p, other] : rows_) {
    auto f = other.v.find(piv);
    if (f == other.v.end()) continue;
    Scalar c = f->second;
    axpy(other.v, -c, row.v);
    axpy(other.combo, -c, row.combo);
  }
  rows_.emplace(piv, std::move(row));
  return true;
}

size_t ColumnSystem::rank() const { return image().rank(); }

Echelon ColumnSystem::image() const {
  Echelon e(ring);
  for (size_t j = 0; j < columns.size(); ++j) e.insert(columns[j], static_cast<int>(j));
  return e;
}

std::optional<SparseVec> ColumnSystem::solve(const SparseVec& b) const {
  Echelon e = image();
  SparseVec combo;
  if (!e.reduce(b, &combo).empty()) return std::nullopt;
  return combo;
}

std::vector<SparseVec> ColumnSystem::kernel() const {
  Echelon e(ring);
  std::vector<SparseVec> out;
  for (size_t j = 0; j < columns.size(); ++j) {
    SparseVec combo;
    if (e.reduce(columns[j], &combo).empty()) {
      SparseVec k = scaled(combo, Scalar::from_int(ring, -1));
      k[static_cast<int>(j)] = Scalar::one(ring);
      out.push_back(std::move(k));
    } else {
      e.insert(columns[j], static_cast<int>(j));
    }
  }
  return out;
}

}  // namespace ainf
