#pragma once

#include <map>
#include <optional>
#include <vector>

#include "ainf/coeff.hpp"

namespace ainf {

// index -> nonzero coefficient
using SparseVec = std::map<int, Scalar>;

void axpy(SparseVec& y, const Scalar& a, const SparseVec& x);  // y += a x
SparseVec scaled(const SparseVec& x, const Scalar& a);
std::string to_string(const SparseVec& v);

class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols, const Ring* ring);
  static Matrix identity(size_t n, const Ring* ring);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  const Ring* ring() const { return ring_; }
  Scalar& at(size_t i, size_t j) { return data_[i * cols_ + j]; }
  const Scalar& at(size_t i, size_t j) const { return data_[i * cols_ + j]; }

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  bool operator==(const Matrix& o) const;
  bool is_zero() const;
  Matrix transpose() const;
  Matrix map_entries(const RingMorphism& phi) const;
  std::vector<Scalar> apply(const std::vector<Scalar>& v) const;

 private:
  size_t rows_ = 0, cols_ = 0;
  const Ring* ring_ = nullptr;
  std::vector<Scalar> data_;
};

// reduced row echelon form over a field: T * A = R
struct RowReduction {
  Matrix reduced;
  Matrix transform;
  std::vector<size_t> pivots;  // pivot column of row i
};
RowReduction row_reduce(const Matrix& a);
size_t rank(const Matrix& a);
// columns form a basis of the kernel
Matrix kernel_basis(const Matrix& a);
std::optional<std::vector<Scalar>> solve(const Matrix& a, const std::vector<Scalar>& b);
Matrix inverse(const Matrix& a);

// Incremental echelon basis of a span over a field, tracking how each basis
// vector is built out of the inserted generators.
class Echelon {
 public:
  explicit Echelon(const Ring* ring) : ring_(ring) {}

  // returns true if v was independent of the current span
  bool insert(const SparseVec& v, int tag);
  // full reduction; combo receives coefficients on the inserted tags with v = residual + sum combo[t] * gen_t
  SparseVec reduce(const SparseVec& v, SparseVec* combo = nullptr) const;
  bool contains(const SparseVec& v) const { return reduce(v).empty(); }
  size_t rank() const { return rows_.size(); }
  const Ring* ring() const { return ring_; }

 private:
  struct Row {
    SparseVec v;      // leading coefficient 1
    SparseVec combo;  // v = sum combo[t] gen_t
  };
  const Ring* ring_;
  std::map<int, Row> rows_;  // by pivot
};

// Linear map given column by column (sparse), with derived data.
struct ColumnSystem {
  const Ring* ring = nullptr;
  size_t rows = 0;
  std::vector<SparseVec> columns;

  size_t rank() const;
  // x with sum x_j col_j = b, supported on greedily independent columns
  std::optional<SparseVec> solve(const SparseVec& b) const;
  std::vector<SparseVec> kernel() const;
  Echelon image() const;
};

}  // namespace ainf
