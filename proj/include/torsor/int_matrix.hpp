#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace torsor {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

struct SparseEntry {
  std::uint32_t index;
  Integer value;
};

/// Sorted by index, never stores zeros.
using SparseVector = std::vector<SparseEntry>;

namespace sparse {

SparseVector from_dense(const IntVector& v);
IntVector to_dense(const SparseVector& v, std::size_t size);
/// y + a * x
SparseVector axpy(const SparseVector& y, const Integer& a, const SparseVector& x);
Integer dot(const SparseVector& a, const IntVector& b);
Integer value_at(const SparseVector& v, std::uint32_t index);

}  // namespace sparse

/// Integer matrix with compressed sparse columns. Arbitrary precision
/// entries; dense views are produced on demand for small factorizations.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);
  static IntMatrix from_dense(const std::vector<IntVector>& rows, std::size_t cols);
  static IntMatrix from_columns(std::size_t rows, std::vector<SparseVector> columns);
  static IntMatrix from_column_vectors(std::size_t rows, const std::vector<IntVector>& columns);
  static IntMatrix diagonal(const IntVector& diag);
  static IntMatrix block_diagonal(const std::vector<IntMatrix>& blocks);
  static IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return columns_.size(); }
  std::size_t nnz() const noexcept;

  Integer at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const Integer& value);
  const SparseVector& column(std::size_t j) const { return columns_.at(j); }
  IntVector column_dense(std::size_t j) const;
  IntVector row_dense(std::size_t i) const;
  const std::vector<SparseVector>& columns() const noexcept { return columns_; }

  std::vector<IntVector> to_dense() const;
  IntMatrix transpose() const;
  bool is_zero() const noexcept;
  bool is_identity() const;

  IntMatrix hstack(const IntMatrix& other) const;
  IntMatrix vstack(const IntMatrix& other) const;
  IntMatrix select_columns(const std::vector<std::size_t>& cols) const;
  IntMatrix select_rows(const std::vector<std::size_t>& rows) const;
  IntMatrix negated() const;

  /// Bareiss fraction-free elimination; square matrices only.
  Integer determinant() const;

  IntVector operator*(const IntVector& v) const;
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const Integer& s, const IntMatrix& a);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::vector<SparseVector> columns_;
};

bool is_zero_vector(const IntVector& v);

}  // namespace torsor
