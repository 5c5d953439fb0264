#include "torsor/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "torsor/errors.hpp"

namespace torsor {

namespace {

SparseVector scaled(const SparseVector& x, const Integer& a) {
  if (sgn(a) == 0) return {};
  SparseVector out = x;
  for (auto& e : out) e.value *= a;
  return out;
}

// a*x + b*y
SparseVector combine(const Integer& a, const SparseVector& x, const Integer& b, const SparseVector& y) {
  return sparse::axpy(scaled(x, a), b, y);
}

void negate(SparseVector& v) {
  for (auto& e : v) e.value = -e.value;
}

using Dense = std::vector<IntVector>;

void swap_rows(Dense& m, std::size_t i, std::size_t j) { std::swap(m[i], m[j]); }

void swap_cols(Dense& m, std::size_t i, std::size_t j) {
  for (auto& row : m) std::swap(row[i], row[j]);
}

// row_i += q * row_j
void add_row(Dense& m, std::size_t i, std::size_t j, const Integer& q) {
  for (std::size_t k = 0; k < m[i].size(); ++k)
    if (sgn(m[j][k]) != 0) mpz_addmul(m[i][k].get_mpz_t(), q.get_mpz_t(), m[j][k].get_mpz_t());
}

void add_col(Dense& m, std::size_t i, std::size_t j, const Integer& q) {
  for (auto& row : m)
    if (sgn(row[j]) != 0) mpz_addmul(row[i].get_mpz_t(), q.get_mpz_t(), row[j].get_mpz_t());
}

// In-place Smith reduction. Transforms are optional.
void smith_dense(Dense& d, Dense* u, Dense* v) {
  const std::size_t m = d.size();
  const std::size_t n = m == 0 ? 0 : d[0].size();
  const std::size_t steps = std::min(m, n);
  for (std::size_t t = 0; t < steps; ++t) {
    while (true) {
      // pivot: minimal |entry|, tie-break on sparsity of row + column
      std::size_t pi = m, pj = n;
      std::size_t best_count = 0;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (sgn(d[i][j]) == 0) continue;
          int cmp = pi == m ? -1 : mpz_cmpabs(d[i][j].get_mpz_t(), d[pi][pj].get_mpz_t());
          if (cmp > 0) continue;
          std::size_t count = 0;
          for (std::size_t k = t; k < n; ++k) count += sgn(d[i][k]) != 0;
          for (std::size_t k = t; k < m; ++k) count += sgn(d[k][j]) != 0;
          if (cmp < 0 || count < best_count) {
            pi = i;
            pj = j;
            best_count = count;
          }
        }
      if (pi == m) return;
      if (pi != t) {
        swap_rows(d, pi, t);
        if (u) swap_rows(*u, pi, t);
      }
      if (pj != t) {
        swap_cols(d, pj, t);
        if (v) swap_cols(*v, pj, t);
      }
      bool clean = true;
      Integer q;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (sgn(d[i][t]) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), d[i][t].get_mpz_t(), d[t][t].get_mpz_t());
        q = -q;
        add_row(d, i, t, q);
        if (u) add_row(*u, i, t, q);
        if (sgn(d[i][t]) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (sgn(d[t][j]) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), d[t][j].get_mpz_t(), d[t][t].get_mpz_t());
        q = -q;
        add_col(d, j, t, q);
        if (v) add_col(*v, j, t, q);
        if (sgn(d[t][j]) != 0) clean = false;
      }
      if (!clean) continue;
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (sgn(d[i][j]) != 0 && !mpz_divisible_p(d[i][j].get_mpz_t(), d[t][t].get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == m) break;
      add_row(d, t, bad, 1);
      if (u) add_row(*u, t, bad, 1);
    }
    if (sgn(d[t][t]) < 0) {
      for (auto& x : d[t]) x = -x;
      if (u)
        for (auto& x : (*u)[t]) x = -x;
    }
  }
}

Dense identity_dense(std::size_t n) {
  Dense id(n, IntVector(n));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  return id;
}

}  // namespace

Integer AbelianInvariants::torsion_order() const {
  Integer o = 1;
  for (const auto& t : torsion) o *= t;
  return o;
}

Integer AbelianInvariants::exponent() const { return torsion.empty() ? Integer(1) : torsion.back(); }

std::string AbelianInvariants::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  if (free_rank > 0) {
    os << "Z";
    if (free_rank > 1) os << "^" << free_rank;
    first = false;
  }
  for (const auto& t : torsion) {
    os << (first ? "" : " x ") << "Z/" << t;
    first = false;
  }
  return os.str();
}

AbelianInvariants invariants_from_diagonal(const std::vector<Integer>& diagonal, std::size_t rows) {
  AbelianInvariants inv;
  std::size_t rank = 0;
  std::vector<Integer> nonunit;
  for (const auto& x : diagonal) {
    if (sgn(x) == 0) continue;
    ++rank;
    Integer a = abs(x);
    if (a != 1) nonunit.push_back(a);
  }
  inv.free_rank = rows - rank;
  // Re-derive the divisibility chain in case the diagonal is not in Smith order.
  if (!nonunit.empty()) {
    auto dm = IntMatrix::diagonal(nonunit);
    Dense d = dm.to_dense();
    smith_dense(d, nullptr, nullptr);
    for (std::size_t i = 0; i < d.size(); ++i)
      if (d[i][i] != 1) inv.torsion.push_back(d[i][i]);
  }
  return inv;
}

SmithForm smith_normal_form(const IntMatrix& a) {
  Dense d = a.to_dense();
  Dense u = identity_dense(a.rows());
  Dense v = identity_dense(a.cols());
  smith_dense(d, &u, &v);
  return {IntMatrix::from_dense(u, a.rows()), IntMatrix::from_dense(d, a.cols()), IntMatrix::from_dense(v, a.cols())};
}

// ---------------------------------------------------------------------------
// ColumnEchelon

ColumnEchelon::ColumnEchelon(std::size_t rows, bool track_combinations)
    : rows_(rows), track_(track_combinations), pivot_at_row_(rows, -1) {}

bool ColumnEchelon::add(const SparseVector& column) {
  SparseVector v = column;
  SparseVector c;
  if (track_) c.push_back({static_cast<std::uint32_t>(added_), 1});
  ++added_;
  Integer q, g, s, t, bg, ag;
  while (!v.empty()) {
    const std::uint32_t r = v.front().index;
    if (r >= rows_) throw std::out_of_range("ColumnEchelon: entry out of range");
    int p = pivot_at_row_[r];
    if (p < 0) {
      if (sgn(v.front().value) < 0) {
        negate(v);
        negate(c);
      }
      pivot_at_row_[r] = static_cast<int>(pivots_.size());
      pivots_.push_back({std::move(v), std::move(c)});
      return true;
    }
    Pivot& piv = pivots_[p];
    const Integer& a = piv.vec.front().value;
    const Integer b = v.front().value;
    if (mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) {
      mpz_divexact(q.get_mpz_t(), b.get_mpz_t(), a.get_mpz_t());
      q = -q;
      v = sparse::axpy(v, q, piv.vec);
      if (track_) c = sparse::axpy(c, q, piv.combo);
      continue;
    }
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_divexact(bg.get_mpz_t(), b.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(ag.get_mpz_t(), a.get_mpz_t(), g.get_mpz_t());
    SparseVector new_pivot = combine(s, piv.vec, t, v);
    SparseVector new_v = combine(bg, piv.vec, -ag, v);
    if (track_) {
      SparseVector new_pc = combine(s, piv.combo, t, c);
      c = combine(bg, piv.combo, -ag, c);
      piv.combo = std::move(new_pc);
    }
    piv.vec = std::move(new_pivot);
    v = std::move(new_v);
  }
  if (track_) kernel_.push_back(std::move(c));
  return false;
}

void ColumnEchelon::add_all(const IntMatrix& m) {
  if (m.rows() != rows_ && m.cols() > 0) throw std::invalid_argument("ColumnEchelon: row count mismatch");
  for (std::size_t j = 0; j < m.cols(); ++j) add(m.column(j));
}

bool ColumnEchelon::contains(const SparseVector& b) const {
  SparseVector v = b;
  Integer q;
  while (!v.empty()) {
    const std::uint32_t r = v.front().index;
    int p = pivot_at_row_.at(r);
    if (p < 0) return false;
    const auto& piv = pivots_[p];
    if (!mpz_divisible_p(v.front().value.get_mpz_t(), piv.vec.front().value.get_mpz_t())) return false;
    mpz_divexact(q.get_mpz_t(), v.front().value.get_mpz_t(), piv.vec.front().value.get_mpz_t());
    v = sparse::axpy(v, -q, piv.vec);
  }
  return true;
}

std::optional<SparseVector> ColumnEchelon::solve(const SparseVector& b) const {
  if (!track_) throw std::logic_error("ColumnEchelon::solve requires tracking");
  SparseVector v = b;
  SparseVector x;
  Integer q;
  while (!v.empty()) {
    const std::uint32_t r = v.front().index;
    int p = pivot_at_row_.at(r);
    if (p < 0) return std::nullopt;
    const auto& piv = pivots_[p];
    if (!mpz_divisible_p(v.front().value.get_mpz_t(), piv.vec.front().value.get_mpz_t())) return std::nullopt;
    mpz_divexact(q.get_mpz_t(), v.front().value.get_mpz_t(), piv.vec.front().value.get_mpz_t());
    v = sparse::axpy(v, -q, piv.vec);
    x = sparse::axpy(x, q, piv.combo);
  }
  return x;
}

IntMatrix ColumnEchelon::basis() const {
  std::vector<SparseVector> cols;
  cols.reserve(pivots_.size());
  for (std::size_t r = 0; r < rows_; ++r)
    if (pivot_at_row_[r] >= 0) cols.push_back(pivots_[pivot_at_row_[r]].vec);
  return IntMatrix::from_columns(rows_, std::move(cols));
}

IntMatrix ColumnEchelon::hermite() const {
  std::vector<std::uint32_t> prow;
  std::vector<SparseVector> cols;
  for (std::size_t r = 0; r < rows_; ++r)
    if (pivot_at_row_[r] >= 0) {
      prow.push_back(static_cast<std::uint32_t>(r));
      cols.push_back(pivots_[pivot_at_row_[r]].vec);
    }
  Integer q;
  for (std::size_t i = 0; i < cols.size(); ++i)
    for (std::size_t j = i + 1; j < cols.size(); ++j) {
      Integer x = sparse::value_at(cols[i], prow[j]);
      if (sgn(x) == 0) continue;
      const Integer& pv = cols[j].front().value;
      mpz_fdiv_q(q.get_mpz_t(), x.get_mpz_t(), pv.get_mpz_t());
      if (sgn(q) != 0) cols[i] = sparse::axpy(cols[i], -q, cols[j]);
    }
  return IntMatrix::from_columns(rows_, std::move(cols));
}

// ---------------------------------------------------------------------------

namespace {

struct Elimination {
  std::vector<SparseVector> pivots;  // echelon columns, by increasing pivot row
  std::vector<SparseVector> kernel;  // combinations of input columns that vanish
};

// Offline column elimination, row by row. Each row is cleared with Euclid
// steps against the entry of least absolute value, which keeps both the
// columns and their recorded combinations small (unit pivots need no gcd).
Elimination eliminate(const IntMatrix& a, bool track) {
  const std::size_t n = a.cols();
  std::vector<SparseVector> cols = a.columns();
  std::vector<SparseVector> combos(track ? n : 0);
  if (track)
    for (std::size_t j = 0; j < n; ++j) combos[j] = {{static_cast<std::uint32_t>(j), Integer(1)}};
  std::vector<std::size_t> active;
  for (std::size_t j = 0; j < n; ++j)
    if (!cols[j].empty() || track) active.push_back(j);
  auto cost = [&](std::size_t j) { return cols[j].size() + (track ? combos[j].size() : 0); };
  Elimination out;
  Integer q;
  std::vector<std::size_t> hit;
  for (std::size_t row = 0; row < a.rows(); ++row) {
    for (;;) {
      hit.clear();
      for (auto j : active)
        if (!cols[j].empty() && cols[j].front().index == row) hit.push_back(j);
      if (hit.empty()) break;
      std::size_t best = hit.front();
      for (auto j : hit) {
        int c = mpz_cmpabs(cols[j].front().value.get_mpz_t(), cols[best].front().value.get_mpz_t());
        if (c < 0 || (c == 0 && cost(j) < cost(best))) best = j;
      }
      if (hit.size() == 1) {
        active.erase(std::find(active.begin(), active.end(), best));
        if (sgn(cols[best].front().value) < 0)
          for (auto& e : cols[best]) e.value = -e.value;
        out.pivots.push_back(std::move(cols[best]));
        break;
      }
      const Integer pv = cols[best].front().value;
      const Integer twice = 2 * pv;
      for (auto j : hit) {
        if (j == best) continue;
        // nearest quotient leaves a remainder of at most |pv| / 2
        Integer shifted = 2 * cols[j].front().value + pv;
        mpz_fdiv_q(q.get_mpz_t(), shifted.get_mpz_t(), twice.get_mpz_t());
        cols[j] = sparse::axpy(cols[j], -q, cols[best]);
        if (track) combos[j] = sparse::axpy(combos[j], -q, combos[best]);
      }
    }
  }
  if (track)
    for (auto j : active) {
      ensure(cols[j].empty(), "kernel_basis: elimination left a nonzero column");
      out.kernel.push_back(std::move(combos[j]));
    }
  return out;
}

// Reduce entries at later pivot rows into [0, pivot).
void hermite_reduce(std::vector<SparseVector>& cols) {
  Integer q;
  for (std::size_t i = cols.size(); i-- > 0;)
    for (std::size_t j = i + 1; j < cols.size(); ++j) {
      Integer x = sparse::value_at(cols[i], cols[j].front().index);
      if (sgn(x) == 0) continue;
      mpz_fdiv_q(q.get_mpz_t(), x.get_mpz_t(), cols[j].front().value.get_mpz_t());
      if (sgn(q) != 0) cols[i] = sparse::axpy(cols[i], -q, cols[j]);
    }
}

}  // namespace

IntMatrix hermite_basis(const IntMatrix& a) {
  Elimination e = eliminate(a, false);
  hermite_reduce(e.pivots);
  return IntMatrix::from_columns(a.rows(), std::move(e.pivots));
}

IntMatrix kernel_basis(const IntMatrix& a) {
  Elimination e = eliminate(a, true);
  return IntMatrix::from_columns(a.cols(), std::move(e.kernel));
}

std::optional<IntVector> solve_linear(const IntMatrix& a, const IntVector& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve_linear: dimension mismatch");
  ColumnEchelon e(a.rows(), true);
  e.add_all(a);
  auto x = e.solve(sparse::from_dense(b));
  if (!x) return std::nullopt;
  IntVector dense = sparse::to_dense(*x, a.cols());
  ensure(a * dense == b, "solve_linear: substitution check failed");
  return dense;
}

std::vector<Integer> smith_diagonal(const IntMatrix& a) {
  // Hermite reduction keeps entries small before unit pivots are stripped.
  IntMatrix h = hermite_basis(a);
  std::vector<SparseVector> cols = h.columns();
  std::vector<std::uint32_t> prow(cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) prow[j] = cols[j].front().index;

  std::vector<char> alive(cols.size(), 1);
  std::vector<char> row_dead(a.rows(), 0);
  std::size_t units = 0;
  for (std::size_t jj = cols.size(); jj-- > 0;) {
    if (cols[jj].front().index != prow[jj] || cols[jj].front().value != 1) continue;
    const std::uint32_t r = prow[jj];
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (j == jj || !alive[j]) continue;
      Integer x = sparse::value_at(cols[j], r);
      if (sgn(x) != 0) cols[j] = sparse::axpy(cols[j], -x, cols[jj]);
    }
    alive[jj] = 0;
    row_dead[r] = 1;
    ++units;
  }
  // Remaining block: live columns restricted to rows that still carry entries.
  std::vector<std::size_t> live_cols;
  for (std::size_t j = 0; j < cols.size(); ++j)
    if (alive[j]) live_cols.push_back(j);
  std::vector<char> row_used(a.rows(), 0);
  for (auto j : live_cols)
    for (const auto& en : cols[j]) row_used[en.index] = 1;
  std::vector<std::size_t> live_rows;
  for (std::size_t r = 0; r < a.rows(); ++r)
    if (row_used[r]) live_rows.push_back(r);
  std::vector<std::int64_t> row_map(a.rows(), -1);
  for (std::size_t k = 0; k < live_rows.size(); ++k) row_map[live_rows[k]] = static_cast<std::int64_t>(k);
  Dense d(live_rows.size(), IntVector(live_cols.size()));
  for (std::size_t k = 0; k < live_cols.size(); ++k)
    for (const auto& en : cols[live_cols[k]]) {
      ensure(!row_dead[en.index], "smith_diagonal: stale entry in a stripped row");
      d[row_map[en.index]][k] = en.value;
    }
  smith_dense(d, nullptr, nullptr);
  std::vector<Integer> diag(units, Integer(1));
  for (std::size_t i = 0; i < std::min(d.size(), live_cols.size()); ++i)
    if (sgn(d[i][i]) != 0) diag.push_back(d[i][i]);
  return diag;
}

AbelianInvariants cokernel_invariants(const IntMatrix& a) {
  return invariants_from_diagonal(smith_diagonal(a), a.rows());
}

}  // namespace torsor
