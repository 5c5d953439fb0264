#pragma once

#include <memory>
#include <vector>

#include "torsor/g_lattice.hpp"
#include "torsor/linalg.hpp"

namespace torsor {

/// Cohomology group together with the presentation it was computed from:
/// cocycles are columns in cochain coordinates, coboundaries are generators
/// written in the cocycle basis.
struct CohomologyGroup {
  int degree = 0;
  AbelianInvariants invariants;
  IntMatrix cocycles;
  IntMatrix coboundaries;
};

/// Free Z[G]-resolution F_3 -> F_2 -> F_1 -> F_0 = Z[G] -> Z of the trivial
/// module. F_n = Z[G]^{ranks[n]}, coordinates (j, g) -> j * |G| + g, and
/// boundary[n] is the Z-matrix of d_n (column (j, g) is g * d_n(gen_j)).
struct FreeResolution {
  GroupPtr group;
  std::vector<std::size_t> ranks;
  std::vector<IntMatrix> boundary;  // index 1..3, entry 0 unused
};

/// Cached per multiplication table.
std::shared_ptr<const FreeResolution> free_resolution(const GroupPtr& g);

/// delta^n : M^{k_{n-1}} -> M^{k_n}, the dual of d_n on Hom_G(F, M).
IntMatrix cochain_differential(const FreeResolution& res, const GLattice& m, int n);

/// Z / B with Z = {x : d_out x in span(rel_next)} and B = span(d_in, rel_here).
CohomologyGroup subquotient(const IntMatrix& d_in, const IntMatrix& d_out, const IntMatrix& rel_here,
                            const IntMatrix& rel_next, int degree);

/// Tate cohomology in degrees -1, 0, 1, 2. Degree 2 obeys the cohomology guard.
CohomologyGroup tate_h(const Subgroup& h, const GModule& m, int degree);
CohomologyGroup tate_h(const Subgroup& h, const GLattice& m, int degree);

/// Kernel of H^2(G, M) -> prod over cyclic C of H^2(C, M).
CohomologyGroup sha2(const GModule& m);
CohomologyGroup sha2(const GLattice& m);

/// Degree-1 cocycle: values[g] is c(g) in the coefficient lattice.
struct Cocycle {
  GLattice coefficients;
  std::vector<IntVector> values;

  /// c(gh) = c(g) + g c(h) for all pairs.
  void validate() const;
  Cocycle operator+(const Cocycle& other) const;
  Cocycle operator-(const Cocycle& other) const;
  Cocycle scaled(const Integer& k) const;
};

/// The coboundary g -> g f - f.
Cocycle coboundary(const GLattice& a, const IntVector& f);
/// f with c = coboundary(f), if any.
std::optional<IntVector> coboundary_witness(const Cocycle& c);
bool is_coboundary(const Cocycle& c);

/// Class of 0 -> N -> P -> M -> 0 in H^1(G, Hom(M, N)) from an integer splitting.
Cocycle extension_class(const LatticeSES& ses);

/// Least k >= 1 with k c a coboundary.
long cocycle_order(const Cocycle& c);

}  // namespace torsor
