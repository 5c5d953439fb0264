#include "torsor/int_matrix.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "torsor/errors.hpp"

namespace torsor {

namespace sparse {

SparseVector from_dense(const IntVector& v) {
  SparseVector out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) out.push_back({static_cast<std::uint32_t>(i), v[i]});
  return out;
}

IntVector to_dense(const SparseVector& v, std::size_t size) {
  IntVector out(size);
  for (const auto& e : v) out[e.index] = e.value;
  return out;
}

SparseVector axpy(const SparseVector& y, const Integer& a, const SparseVector& x) {
  if (sgn(a) == 0 || x.empty()) return y;
  SparseVector out;
  out.reserve(y.size() + x.size());
  std::size_t i = 0, j = 0;
  Integer t;
  while (i < y.size() || j < x.size()) {
    if (j == x.size() || (i < y.size() && y[i].index < x[j].index)) {
      out.push_back(y[i++]);
    } else if (i == y.size() || x[j].index < y[i].index) {
      t = a * x[j].value;
      out.push_back({x[j].index, t});
      ++j;
    } else {
      t = y[i].value + a * x[j].value;
      if (sgn(t) != 0) out.push_back({y[i].index, t});
      ++i;
      ++j;
    }
  }
  return out;
}

Integer dot(const SparseVector& a, const IntVector& b) {
  Integer s = 0;
  for (const auto& e : a) s += e.value * b[e.index];
  return s;
}

Integer value_at(const SparseVector& v, std::uint32_t index) {
  auto it = std::lower_bound(v.begin(), v.end(), index,
                             [](const SparseEntry& e, std::uint32_t i) { return e.index < i; });
  if (it != v.end() && it->index == index) return it->value;
  return 0;
}

}  // namespace sparse

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.columns_[i].push_back({static_cast<std::uint32_t>(i), 1});
  return m;
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  std::size_t r = rows.size();
  std::size_t c = r == 0 ? 0 : rows.begin()->size();
  IntMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw std::invalid_argument("ragged matrix literal");
    std::size_t j = 0;
    for (long v : row) {
      if (v != 0) m.columns_[j].push_back({static_cast<std::uint32_t>(i), Integer(v)});
      ++j;
    }
    ++i;
  }
  return m;
}

IntMatrix IntMatrix::from_dense(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("ragged dense matrix");
    for (std::size_t j = 0; j < cols; ++j)
      if (sgn(rows[i][j]) != 0) m.columns_[j].push_back({static_cast<std::uint32_t>(i), rows[i][j]});
  }
  return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows, std::vector<SparseVector> columns) {
  IntMatrix m;
  m.rows_ = rows;
  for (const auto& c : columns)
    for (const auto& e : c)
      if (e.index >= rows) throw std::out_of_range("sparse column entry out of range");
  m.columns_ = std::move(columns);
  return m;
}

IntMatrix IntMatrix::from_column_vectors(std::size_t rows, const std::vector<IntVector>& columns) {
  IntMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw std::invalid_argument("column length mismatch");
    m.columns_[j] = sparse::from_dense(columns[j]);
  }
  return m;
}

IntMatrix IntMatrix::diagonal(const IntVector& diag) {
  IntMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i)
    if (sgn(diag[i]) != 0) m.columns_[i].push_back({static_cast<std::uint32_t>(i), diag[i]});
  return m;
}

IntMatrix IntMatrix::block_diagonal(const std::vector<IntMatrix>& blocks) {
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) {
    r += b.rows();
    c += b.cols();
  }
  IntMatrix m(r, c);
  std::size_t ro = 0, co = 0;
  for (const auto& b : blocks) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      auto& dst = m.columns_[co + j];
      for (const auto& e : b.columns_[j])
        dst.push_back({static_cast<std::uint32_t>(e.index + ro), e.value});
    }
    ro += b.rows();
    co += b.cols();
  }
  return m;
}

IntMatrix IntMatrix::kronecker(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ja = 0; ja < a.cols(); ++ja)
    for (std::size_t jb = 0; jb < b.cols(); ++jb) {
      auto& dst = m.columns_[ja * b.cols() + jb];
      for (const auto& ea : a.columns_[ja])
        for (const auto& eb : b.columns_[jb])
          dst.push_back({static_cast<std::uint32_t>(ea.index * b.rows() + eb.index), ea.value * eb.value});
    }
  return m;
}

std::size_t IntMatrix::nnz() const noexcept {
  std::size_t n = 0;
  for (const auto& c : columns_) n += c.size();
  return n;
}

Integer IntMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols()) throw std::out_of_range("IntMatrix::at");
  return sparse::value_at(columns_[j], static_cast<std::uint32_t>(i));
}

void IntMatrix::set(std::size_t i, std::size_t j, const Integer& value) {
  if (i >= rows_ || j >= cols()) throw std::out_of_range("IntMatrix::set");
  auto& col = columns_[j];
  auto idx = static_cast<std::uint32_t>(i);
  auto it = std::lower_bound(col.begin(), col.end(), idx,
                             [](const SparseEntry& e, std::uint32_t k) { return e.index < k; });
  bool present = it != col.end() && it->index == idx;
  if (sgn(value) == 0) {
    if (present) col.erase(it);
  } else if (present) {
    it->value = value;
  } else {
    col.insert(it, {idx, value});
  }
}

IntVector IntMatrix::column_dense(std::size_t j) const { return sparse::to_dense(columns_.at(j), rows_); }

IntVector IntMatrix::row_dense(std::size_t i) const {
  IntVector out(cols());
  for (std::size_t j = 0; j < cols(); ++j) out[j] = at(i, j);
  return out;
}

std::vector<IntVector> IntMatrix::to_dense() const {
  std::vector<IntVector> out(rows_, IntVector(cols()));
  for (std::size_t j = 0; j < cols(); ++j)
    for (const auto& e : columns_[j]) out[e.index][j] = e.value;
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols(), rows_);
  for (std::size_t j = 0; j < cols(); ++j)
    for (const auto& e : columns_[j]) t.columns_[e.index].push_back({static_cast<std::uint32_t>(j), e.value});
  return t;
}

bool IntMatrix::is_zero() const noexcept {
  for (const auto& c : columns_)
    if (!c.empty()) return false;
  return true;
}

bool IntMatrix::is_identity() const {
  if (rows_ != cols()) return false;
  for (std::size_t j = 0; j < cols(); ++j) {
    const auto& c = columns_[j];
    if (c.size() != 1 || c[0].index != j || c[0].value != 1) return false;
  }
  return true;
}

IntMatrix IntMatrix::hstack(const IntMatrix& other) const {
  if (cols() > 0 && other.cols() > 0 && rows_ != other.rows_)
    throw std::invalid_argument("hstack: row count mismatch");
  IntMatrix m = *this;
  if (cols() == 0 && other.cols() > 0) m.rows_ = other.rows_;
  m.columns_.insert(m.columns_.end(), other.columns_.begin(), other.columns_.end());
  return m;
}

IntMatrix IntMatrix::vstack(const IntMatrix& other) const {
  if (cols() != other.cols()) throw std::invalid_argument("vstack: column count mismatch");
  IntMatrix m(rows_ + other.rows_, cols());
  for (std::size_t j = 0; j < cols(); ++j) {
    m.columns_[j] = columns_[j];
    for (const auto& e : other.columns_[j])
      m.columns_[j].push_back({static_cast<std::uint32_t>(e.index + rows_), e.value});
  }
  return m;
}

IntMatrix IntMatrix::select_columns(const std::vector<std::size_t>& cols) const {
  IntMatrix m(rows_, cols.size());
  for (std::size_t k = 0; k < cols.size(); ++k) m.columns_[k] = columns_.at(cols[k]);
  return m;
}

IntMatrix IntMatrix::select_rows(const std::vector<std::size_t>& rows) const {
  std::vector<std::int64_t> map(rows_, -1);
  for (std::size_t k = 0; k < rows.size(); ++k) map.at(rows[k]) = static_cast<std::int64_t>(k);
  IntMatrix m(rows.size(), cols());
  for (std::size_t j = 0; j < cols(); ++j) {
    for (const auto& e : columns_[j])
      if (map[e.index] >= 0) m.columns_[j].push_back({static_cast<std::uint32_t>(map[e.index]), e.value});
    std::sort(m.columns_[j].begin(), m.columns_[j].end(),
              [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
  }
  return m;
}

IntMatrix IntMatrix::negated() const {
  IntMatrix m = *this;
  for (auto& c : m.columns_)
    for (auto& e : c) e.value = -e.value;
  return m;
}

Integer IntMatrix::determinant() const {
  if (rows_ != cols()) throw std::invalid_argument("determinant of non-square matrix");
  std::size_t n = rows_;
  if (n == 0) return 1;
  auto a = to_dense();
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a[k][k]) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && sgn(a[swap][k]) == 0) ++swap;
      if (swap == n) return 0;
      std::swap(a[k], a[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

IntVector IntMatrix::operator*(const IntVector& v) const {
  if (v.size() != cols()) throw std::invalid_argument("matrix-vector dimension mismatch");
  IntVector out(rows_);
  for (std::size_t j = 0; j < cols(); ++j) {
    if (sgn(v[j]) == 0) continue;
    for (const auto& e : columns_[j]) out[e.index] += e.value * v[j];
  }
  return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product dimension mismatch");
  IntMatrix m(a.rows(), b.cols());
  IntVector acc(a.rows());
  std::vector<char> touched(a.rows(), 0);
  std::vector<std::uint32_t> list;
  for (std::size_t j = 0; j < b.cols(); ++j) {
    list.clear();
    for (const auto& eb : b.columns_[j])
      for (const auto& ea : a.columns_[eb.index]) {
        if (!touched[ea.index]) {
          touched[ea.index] = 1;
          list.push_back(ea.index);
          acc[ea.index] = 0;
        }
        mpz_addmul(acc[ea.index].get_mpz_t(), ea.value.get_mpz_t(), eb.value.get_mpz_t());
      }
    std::sort(list.begin(), list.end());
    auto& dst = m.columns_[j];
    for (auto i : list) {
      touched[i] = 0;
      if (sgn(acc[i]) != 0) dst.push_back({i, acc[i]});
    }
  }
  return m;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix sum dimension mismatch");
  IntMatrix m(a.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) m.columns_[j] = sparse::axpy(a.columns_[j], 1, b.columns_[j]);
  return m;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix difference dimension mismatch");
  IntMatrix m(a.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) m.columns_[j] = sparse::axpy(a.columns_[j], -1, b.columns_[j]);
  return m;
}

IntMatrix operator*(const Integer& s, const IntMatrix& a) {
  IntMatrix m(a.rows(), a.cols());
  if (sgn(s) == 0) return m;
  m = a;
  for (auto& c : m.columns_)
    for (auto& e : c) e.value *= s;
  return m;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols() != b.cols()) return false;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    const auto& x = a.columns_[j];
    const auto& y = b.columns_[j];
    if (x.size() != y.size()) return false;
    for (std::size_t k = 0; k < x.size(); ++k)
      if (x[k].index != y[k].index || x[k].value != y[k].value) return false;
  }
  return true;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  auto d = to_dense();
  os << "[";
  for (std::size_t i = 0; i < d.size(); ++i) {
    os << (i ? " [" : "[");
    for (std::size_t j = 0; j < d[i].size(); ++j) os << (j ? " " : "") << d[i][j];
    os << "]";
  }
  os << "]";
  return os.str();
}

bool is_zero_vector(const IntVector& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

}  // namespace torsor
