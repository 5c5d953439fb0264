#pragma once

#include <optional>
#include <string>
#include <vector>

#include "torsor/int_matrix.hpp"

namespace torsor {

/// Isomorphism type of a finitely generated abelian group:
/// Z^free_rank x Z/d1 x ... x Z/dr with d1 | d2 | ... | dr, every di >= 2.
struct AbelianInvariants {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;

  bool is_zero() const noexcept { return free_rank == 0 && torsion.empty(); }
  bool is_finite() const noexcept { return free_rank == 0; }
  /// Order of the torsion part.
  Integer torsion_order() const;
  /// Largest invariant factor (1 for the trivial group). Undefined when infinite.
  Integer exponent() const;
  std::string to_string() const;

  friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;
};

/// Invariants from a diagonal (any order, zeros allowed); `rows` is the rank of
/// the ambient free group.
AbelianInvariants invariants_from_diagonal(const std::vector<Integer>& diagonal, std::size_t rows);

struct SmithForm {
  IntMatrix left;      // U
  IntMatrix diagonal;  // D = U * A * V
  IntMatrix right;     // V
};

/// Dense Smith normal form with unimodular transforms. Pivot: smallest nonzero
/// absolute value, ties broken by fewest nonzeros in the pivot's row and column.
SmithForm smith_normal_form(const IntMatrix& a);

/// Diagonal of the Smith form without transforms; scales to large sparse input
/// by echelonizing first and stripping unit pivots.
std::vector<Integer> smith_diagonal(const IntMatrix& a);

/// Saturated basis of the integer kernel.
IntMatrix kernel_basis(const IntMatrix& a);

/// Some x with a*x = b, or nullopt when none exists over the integers.
std::optional<IntVector> solve_linear(const IntMatrix& a, const IntVector& b);

/// Isomorphism type of Z^rows / image(a).
AbelianInvariants cokernel_invariants(const IntMatrix& a);

/// Canonical column Hermite basis of the lattice spanned by the columns.
IntMatrix hermite_basis(const IntMatrix& a);

/// Online column echelonization over the integers. Every column operation is
/// unimodular, so the combinations of columns reduced to zero form a saturated
/// kernel basis when tracking is enabled.
class ColumnEchelon {
 public:
  explicit ColumnEchelon(std::size_t rows, bool track_combinations = false);

  /// Returns true when the rank increased.
  bool add(const SparseVector& column);
  void add_all(const IntMatrix& m);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t rank() const noexcept { return pivots_.size(); }
  std::size_t added() const noexcept { return added_; }

  bool contains(const SparseVector& v) const;
  /// Coefficients over the added columns; requires tracking.
  std::optional<SparseVector> solve(const SparseVector& b) const;
  /// Combinations of added columns that vanish; requires tracking.
  const std::vector<SparseVector>& kernel() const noexcept { return kernel_; }

  /// Echelon basis ordered by pivot row.
  IntMatrix basis() const;
  /// Reduced canonical form of basis(): positive pivots, entries at later pivot
  /// rows reduced into [0, pivot).
  IntMatrix hermite() const;

 private:
  struct Pivot {
    SparseVector vec;
    SparseVector combo;
  };

  std::size_t rows_;
  bool track_;
  std::size_t added_ = 0;
  std::vector<int> pivot_at_row_;
  std::vector<Pivot> pivots_;
  std::vector<SparseVector> kernel_;
};

}  // namespace torsor
