#pragma once

#include <optional>
#include <vector>

#include "torsor/cohomology.hpp"
#include "torsor/g_lattice.hpp"

namespace torsor {

/// Z[G] / <sigma>, rank |G| - 1.
GLattice norm_one_lattice(const GroupPtr& g);
/// 0 -> Z -> Z[G] -> T -> 0 with 1 -> sigma.
LatticeSES norm_one_sequence(const GroupPtr& g);
/// The dual sequence 0 -> T' -> Z[G] -> Z -> 0.
LatticeSES dual_sequence(const LatticeSES& ses);

struct TdLattice {
  GLattice lattice;
  IntMatrix inclusion;      // basis of <d Z[G], sigma> inside Z[G]
  LatticeSES presentation;  // 0 -> Z -> Z[G] + Z -> T_d -> 0
};

TdLattice t_hat_d(const GroupPtr& g, long d);
/// 0 -> Z -> T_d -> T -> 0 with 1 -> sigma and d y + k sigma -> [y].
LatticeSES t_hat_d_sequence(const GroupPtr& g, long d);

struct MdLattice {
  GLattice lattice;
  LatticeSES sequence;  // 0 -> M_d -> Z[G] + Z -> Z -> 0, last map (1, ..., 1, -d)
  IntMatrix duality;    // equivariant isomorphism dual(T_d) -> M_d
};

MdLattice m_d(const GroupPtr& g, long d);

/// An equivariant isomorphism left + right -> middle when the sequence splits.
std::optional<IntMatrix> equivariant_splitting(const LatticeSES& ses);

struct CoflasqueResolution {
  LatticeSES ses;  // 0 -> N_d -> P_d -> M_d -> 0
  std::vector<Subgroup> subgroups;
};

/// P_d = Z[G x G] + sum over all subgroups of Z[G/G'], mapped onto M_d.
/// Requires a p-group G and d dividing |G|.
CoflasqueResolution coflasque_resolution_md(const GroupPtr& g, long d, bool verify = true);

/// Basis of P^H made of orbit sums; P must act by permutation matrices.
IntMatrix orbit_sum_basis(const GLattice& p, const Subgroup& h);
/// H^1(H, ker) = 0 for all subgroups H of a sequence whose middle term is a
/// permutation lattice, i.e. surject(P^H) = M^H. Returns the first failing H.
std::optional<Subgroup> coflasque_kernel_witness(const LatticeSES& ses);

struct PredicateResult {
  bool holds = true;
  std::optional<Subgroup> witness;
};

PredicateResult is_flasque(const GLattice& m);
PredicateResult is_coflasque(const GLattice& m);

struct FlasqueClass {
  GLattice lattice;
  LatticeSES provenance;
};

/// dual(N_d) of the coflasque resolution of M_d.
FlasqueClass flasque_class_norm_one(const GroupPtr& g, long d, bool verify = true);

/// 0 -> K -> P -> F -> 0 with P permutation: regular copies on Z[G]-generators
/// of F plus one Z[G/H] per generator of H^0(H, F). K is verified coflasque.
LatticeSES standard_coflasque_cover(const GLattice& f);

struct InvertibilityResult {
  bool invertible = false;
  LatticeSES cover;
  IntMatrix splitting;  // P x F, equivariant with surject * splitting = 1, when invertible
};

/// Direct summand of a permutation lattice. Meant for flasque input.
InvertibilityResult is_invertible(const GLattice& f);

struct PeriodReport {
  long period = 0;
  long base_order = 0;
  long dual_order = 0;
};

/// |G|; with verify, re-derived as the order of the base extension class and its dual.
PeriodReport period_norm_one(const GroupPtr& g, bool verify = true);

struct SubgroupDecomposition {
  IntMatrix f;  // automorphism of Z[H]^r + Z
  GMap iso;     // restrict(M_{G,d}, H) -> Z[H]^{r-1} + M_{H,d}
};

/// M_{G,d} = (Z[G] + Z) / <(sigma, -d)>.
Quotient m_gd_quotient(const GroupPtr& g, long d);
SubgroupDecomposition subgroup_decomposition(const GroupPtr& g, const Subgroup& h, long d);

}  // namespace torsor
