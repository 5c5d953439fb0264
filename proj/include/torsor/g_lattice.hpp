#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "torsor/finite_group.hpp"
#include "torsor/int_matrix.hpp"

namespace torsor {

/// A free Z-module of finite rank with a G-action, one matrix per element.
/// Immutable; copies share the action storage.
class GLattice {
 public:
  GLattice() = default;
  /// Validates rho(e) = 1 and rho(g) rho(h) = rho(gh) for all pairs unless told not to.
  GLattice(GroupPtr group, std::vector<IntMatrix> action, bool validate = true);

  const GroupPtr& group() const noexcept { return group_; }
  std::size_t rank() const noexcept { return rank_; }
  const IntMatrix& action(int g) const { return (*action_)[g]; }
  const std::vector<IntMatrix>& actions() const noexcept { return *action_; }

  void validate() const;

 private:
  GroupPtr group_;
  std::size_t rank_ = 0;
  std::shared_ptr<const std::vector<IntMatrix>> action_;
};

/// Equivariant homomorphism given by a target.rank x source.rank matrix.
struct GMap {
  GLattice source;
  GLattice target;
  IntMatrix matrix;

  /// Throws Error(verification) when the matrix is not equivariant.
  void validate() const;
};

GMap make_gmap(const GLattice& source, const GLattice& target, IntMatrix matrix);
bool is_equivariant(const GLattice& source, const GLattice& target, const IntMatrix& matrix);

/// Finitely presented G-module: carrier / (column span of relations).
struct GModule {
  GLattice carrier;
  IntMatrix relations;  // carrier.rank() x k

  void validate() const;
  const GroupPtr& group() const noexcept { return carrier.group(); }
};

GModule lattice_module(const GLattice& m);
/// Z/dZ with trivial action.
GModule trivial_cyclic_module(const GroupPtr& g, long d);

bool same_group(const GroupPtr& a, const GroupPtr& b);
void require_same_group(const GroupPtr& a, const GroupPtr& b, const char* what);
void require_subgroup_of(const Subgroup& h, const GroupPtr& g, const char* what);

GLattice trivial_lattice(const GroupPtr& g, std::size_t rank);
GLattice regular_lattice(const GroupPtr& g);
/// Permutation lattice of a G-set on `points` points, x -> act(g, x).
GLattice gset_lattice(const GroupPtr& g, int points, const std::function<int(int, int)>& act);
/// Z[G/H]: G acting on left cosets of H (ordered as left_cosets(h)).
GLattice permutation_lattice(const Subgroup& h);
GLattice direct_sum(const GLattice& a, const GLattice& b);
GLattice direct_sum(const std::vector<GLattice>& parts);
/// rho'(g) = transpose(rho(g^-1))
GLattice dual(const GLattice& m);
/// Restriction to H; the group becomes H as an abstract group.
GLattice restrict_to(const GLattice& m, const Subgroup& h);
/// Hom_Z(M, N) with (g f) = rho_N(g) f rho_M(g)^-1, f vectorized column-major.
GLattice hom_lattice(const GLattice& m, const GLattice& n);

/// Column-major vectorization helpers for Hom lattices.
IntVector vectorize(const IntMatrix& f);
IntMatrix unvectorize(const IntVector& v, std::size_t rows, std::size_t cols);

struct Sublattice {
  GLattice lattice;
  GMap inclusion;
};

/// G-stable span of the generator columns, in its canonical column HNF basis.
Sublattice sublattice_with_induced_action(const GLattice& ambient, const IntMatrix& generators);

struct Quotient {
  GLattice lattice;
  GMap projection;
  IntMatrix section;  // integer right inverse of projection.matrix
};

/// ambient / span(sub_generators); the span must be G-stable and saturated.
Quotient torsion_free_quotient(const GLattice& ambient, const IntMatrix& sub_generators);

/// Saturated basis of M^H (columns).
IntMatrix fixed_sublattice(const GLattice& m, const Subgroup& h);
/// Basis of Hom_G(M, N).
std::vector<GMap> equivariant_hom_basis(const GLattice& m, const GLattice& n);

/// 0 -> left -> middle -> right -> 0
struct LatticeSES {
  GLattice left;
  GLattice middle;
  GLattice right;
  GMap inject;
  GMap surject;

  /// Equivariance, injectivity with saturated image, surjectivity, exactness.
  void validate() const;
};

LatticeSES make_ses(const GLattice& left, const GLattice& middle, const GLattice& right, IntMatrix inject,
                    IntMatrix surject);

/// Integer matrix s with surject * s = identity (not equivariant in general).
IntMatrix integer_splitting(const GMap& surject);

/// Matrix X with basis * X = rho(g) * basis for every g; throws when the span is not stable.
std::vector<IntMatrix> induced_action(const GLattice& ambient, const IntMatrix& basis);

}  // namespace torsor
