#pragma once

// Randomized linear-algebra property checks, shared by the unit tests and the
// acceptance binary. Every check returns an empty string on success and a
// description of the first failure otherwise.

#include <random>
#include <string>
#include <vector>

#include "torsor/linalg.hpp"

namespace checks {

using torsor::IntMatrix;
using torsor::IntVector;
using torsor::Integer;

inline IntMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int bound = 9) {
  std::uniform_int_distribution<int> entry(-bound, bound);
  std::vector<IntVector> r(rows, IntVector(cols));
  for (auto& row : r)
    for (auto& x : row) x = entry(rng);
  return IntMatrix::from_dense(r, cols);
}

// Product of random elementary operations.
inline IntMatrix random_unimodular(std::mt19937& rng, std::size_t n) {
  std::vector<IntVector> m(n, IntVector(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  if (n < 2) return IntMatrix::from_dense(m, n);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int step = 0; step < static_cast<int>(3 * n); ++step) {
    std::size_t i = pick(rng), j = pick(rng);
    if (i == j) continue;
    Integer c = coef(rng);
    for (std::size_t k = 0; k < n; ++k) m[i][k] += c * m[j][k];
    if (step % 5 == 0) std::swap(m[i], m[j]);
  }
  return IntMatrix::from_dense(m, n);
}

inline bool unit(const Integer& x) { return x == 1 || x == -1; }

inline std::string check_smith(const IntMatrix& a) {
  auto s = torsor::smith_normal_form(a);
  if (!(s.left * a * s.right == s.diagonal)) return "U A V != D";
  if (!unit(s.left.determinant()) || !unit(s.right.determinant())) return "transform is not unimodular";
  const auto& d = s.diagonal;
  Integer prev = 1;
  bool zero_seen = false;
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j) {
      Integer x = d.at(i, j);
      if (i != j && x != 0) return "off-diagonal entry";
      if (i != j) continue;
      if (x < 0) return "negative diagonal entry";
      if (x == 0) {
        zero_seen = true;
        continue;
      }
      if (zero_seen) return "nonzero after zero on the diagonal";
      if (x % prev != 0) return "divisibility chain broken";
      prev = x;
    }
  return {};
}

inline std::string check_kernel(const IntMatrix& a) {
  IntMatrix k = torsor::kernel_basis(a);
  if (k.rows() != a.cols()) return "kernel has wrong ambient rank";
  if (k.cols() > 0 && !(a * k).is_zero()) return "A K != 0";
  std::size_t rank = torsor::smith_diagonal(a).size();
  if (k.cols() != a.cols() - rank) return "kernel rank != cols - rank(A)";
  for (const auto& x : torsor::smith_diagonal(k))
    if (x != 1) return "kernel basis is not saturated";
  return {};
}

// b is solvable iff, with U A V = D, every entry of U b is divisible by the
// matching diagonal entry (and vanishes past the rank).
inline bool solvable_by_smith(const IntMatrix& a, const IntVector& b) {
  auto s = torsor::smith_normal_form(a);
  IntVector c = s.left * b;
  for (std::size_t i = 0; i < c.size(); ++i) {
    Integer di = (i < a.cols()) ? s.diagonal.at(i, i) : Integer(0);
    if (di == 0) {
      if (c[i] != 0) return false;
    } else if (c[i] % di != 0) {
      return false;
    }
  }
  return true;
}

inline std::string check_solve(std::mt19937& rng, const IntMatrix& a) {
  std::uniform_int_distribution<int> entry(-5, 5);
  IntVector x(a.cols());
  for (auto& v : x) v = entry(rng);
  IntVector b = a * x;
  auto sol = torsor::solve_linear(a, b);
  if (!sol || !(a * *sol == b)) return "consistent system not solved";
  IntVector r(a.rows());
  for (auto& v : r) v = entry(rng);
  bool expected = solvable_by_smith(a, r);
  auto got = torsor::solve_linear(a, r);
  if (got.has_value() != expected) return "solvability disagrees with the Smith criterion";
  if (got && !(a * *got == r)) return "returned solution is wrong";
  return {};
}

inline std::string check_cokernel_invariance(std::mt19937& rng, const IntMatrix& a) {
  IntMatrix p = random_unimodular(rng, a.rows());
  IntMatrix q = random_unimodular(rng, a.cols());
  if (!(torsor::cokernel_invariants(p * a * q) == torsor::cokernel_invariants(a)))
    return "cokernel invariants changed under unimodular transforms";
  return {};
}

inline std::string check_hermite(std::mt19937& rng, const IntMatrix& a) {
  IntMatrix h = torsor::hermite_basis(a);
  IntMatrix q = random_unimodular(rng, a.cols());
  if (!(torsor::hermite_basis(a * q) == h)) return "hermite basis depends on the generating set";
  for (std::size_t j = 0; j < a.cols(); ++j)
    if (!torsor::solve_linear(h, a.column_dense(j))) return "column outside the hermite span";
  for (std::size_t j = 0; j < h.cols(); ++j)
    if (!torsor::solve_linear(a, h.column_dense(j))) return "hermite column outside the original span";
  return {};
}

struct Summary {
  int cases = 0;
  std::vector<std::string> failures;
};

// `cases` random matrices with dimensions in [1, 8] and entries in [-9, 9].
inline Summary run_random_suite(int cases, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::size_t> dim(1, 8);
  Summary s;
  for (int i = 0; i < cases; ++i) {
    IntMatrix a = random_matrix(rng, dim(rng), dim(rng));
    // sprinkle rank deficiency
    if (i % 4 == 0 && a.cols() > 1) {
      std::vector<IntVector> rows = a.to_dense();
      for (auto& row : rows) row.back() = 2 * row.front() - row[row.size() / 2];
      a = IntMatrix::from_dense(rows, a.cols());
    }
    for (const std::string& err :
         {check_smith(a), check_kernel(a), check_solve(rng, a), check_cokernel_invariance(rng, a), check_hermite(rng, a)})
      if (!err.empty()) s.failures.push_back("case " + std::to_string(i) + " (" + std::to_string(a.rows()) + "x" +
                                             std::to_string(a.cols()) + "): " + err);
    ++s.cases;
  }
  return s;
}

}  // namespace checks
