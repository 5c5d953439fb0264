#include "torsor/g_lattice.hpp"

#include <map>

#include "torsor/errors.hpp"
#include "torsor/linalg.hpp"

namespace torsor {

GLattice::GLattice(GroupPtr group, std::vector<IntMatrix> action, bool validate_now)
    : group_(std::move(group)) {
  if (!group_) fail(ErrorCode::invalid_argument, "GLattice: null group");
  if (static_cast<int>(action.size()) != group_->order())
    fail(ErrorCode::invalid_argument, "GLattice: need one matrix per group element");
  rank_ = action.front().rows();
  for (const auto& a : action)
    if (a.rows() != rank_ || a.cols() != rank_)
      fail(ErrorCode::invalid_argument, "GLattice: action matrices must be square of equal size");
  action_ = std::make_shared<const std::vector<IntMatrix>>(std::move(action));
  if (validate_now) validate();
}

void GLattice::validate() const {
  const auto& a = *action_;
  if (!a[0].is_identity()) fail(ErrorCode::verification, "GLattice: identity does not act trivially");
  // rho(g s) = rho(g) rho(s) for all g and generators s is equivalent to the
  // homomorphism property on all pairs.
  for (int s : group_->generators())
    for (int g = 0; g < group_->order(); ++g)
      if (!(a[g] * a[s] == a[group_->mul(g, s)]))
        fail(ErrorCode::verification, "GLattice: rho(" + std::to_string(g) + ") rho(" + std::to_string(s) +
                                          ") != rho(" + std::to_string(group_->mul(g, s)) + ")");
}

bool same_group(const GroupPtr& a, const GroupPtr& b) { return a == b || (a && b && a->same_table(*b)); }

void require_same_group(const GroupPtr& a, const GroupPtr& b, const char* what) {
  if (!same_group(a, b)) fail(ErrorCode::invalid_argument, std::string(what) + ": lattices over different groups");
}

void require_subgroup_of(const Subgroup& h, const GroupPtr& g, const char* what) {
  if (!same_group(h.parent, g)) fail(ErrorCode::invalid_argument, std::string(what) + ": subgroup of another group");
}

bool is_equivariant(const GLattice& source, const GLattice& target, const IntMatrix& matrix) {
  if (matrix.rows() != target.rank() || matrix.cols() != source.rank()) return false;
  if (!same_group(source.group(), target.group())) return false;
  for (int s : source.group()->generators())
    if (!(target.action(s) * matrix == matrix * source.action(s))) return false;
  return true;
}

void GMap::validate() const {
  if (!is_equivariant(source, target, matrix)) fail(ErrorCode::verification, "GMap: matrix is not G-equivariant");
}

GMap make_gmap(const GLattice& source, const GLattice& target, IntMatrix matrix) {
  GMap m{source, target, std::move(matrix)};
  m.validate();
  return m;
}

void GModule::validate() const {
  if (relations.rows() != carrier.rank()) fail(ErrorCode::invalid_argument, "GModule: relation rows != carrier rank");
  ColumnEchelon ech(carrier.rank());
  ech.add_all(relations);
  for (int s : carrier.group()->generators()) {
    IntMatrix moved = carrier.action(s) * relations;
    for (const auto& c : moved.columns())
      if (!ech.contains(c)) fail(ErrorCode::verification, "GModule: relations are not G-stable");
  }
}

GModule lattice_module(const GLattice& m) { return {m, IntMatrix(m.rank(), 0)}; }

GModule trivial_cyclic_module(const GroupPtr& g, long d) {
  if (d < 1) fail(ErrorCode::invalid_argument, "Z/dZ needs d >= 1");
  return {trivial_lattice(g, 1), IntMatrix::from_rows({{d}})};
}

GLattice trivial_lattice(const GroupPtr& g, std::size_t rank) {
  return GLattice(g, std::vector<IntMatrix>(g->order(), IntMatrix::identity(rank)), false);
}

GLattice gset_lattice(const GroupPtr& g, int points, const std::function<int(int, int)>& act) {
  std::vector<IntMatrix> a;
  a.reserve(g->order());
  for (int x = 0; x < g->order(); ++x) {
    std::vector<SparseVector> cols(points);
    for (int p = 0; p < points; ++p) cols[p] = {{static_cast<std::uint32_t>(act(x, p)), Integer(1)}};
    a.push_back(IntMatrix::from_columns(points, std::move(cols)));
  }
  return GLattice(g, std::move(a));
}

GLattice regular_lattice(const GroupPtr& g) {
  return gset_lattice(g, g->order(), [&](int x, int p) { return g->mul(x, p); });
}

GLattice permutation_lattice(const Subgroup& h) {
  const auto& g = h.parent;
  auto cosets = left_cosets(h);
  std::vector<int> coset_of(g->order());
  for (std::size_t i = 0; i < cosets.size(); ++i)
    for (int x : cosets[i]) coset_of[x] = static_cast<int>(i);
  return gset_lattice(g, static_cast<int>(cosets.size()),
                      [&](int x, int i) { return coset_of[g->mul(x, cosets[i].front())]; });
}

GLattice direct_sum(const GLattice& a, const GLattice& b) { return direct_sum(std::vector<GLattice>{a, b}); }

GLattice direct_sum(const std::vector<GLattice>& parts) {
  if (parts.empty()) fail(ErrorCode::invalid_argument, "direct_sum of nothing");
  const auto& g = parts.front().group();
  for (const auto& p : parts) require_same_group(g, p.group(), "direct_sum");
  std::vector<IntMatrix> a;
  for (int x = 0; x < g->order(); ++x) {
    std::vector<IntMatrix> blocks;
    for (const auto& p : parts) blocks.push_back(p.action(x));
    a.push_back(IntMatrix::block_diagonal(blocks));
  }
  return GLattice(g, std::move(a), false);
}

GLattice dual(const GLattice& m) {
  const auto& g = m.group();
  std::vector<IntMatrix> a;
  for (int x = 0; x < g->order(); ++x) a.push_back(m.action(g->inv(x)).transpose());
  return GLattice(g, std::move(a), false);
}

GLattice restrict_to(const GLattice& m, const Subgroup& h) {
  require_subgroup_of(h, m.group(), "restrict_to");
  std::vector<IntMatrix> a;
  for (int x : h.elements) a.push_back(m.action(x));
  return GLattice(h.as_group(), std::move(a), false);
}

GLattice hom_lattice(const GLattice& m, const GLattice& n) {
  require_same_group(m.group(), n.group(), "hom_lattice");
  const auto& g = m.group();
  std::vector<IntMatrix> a;
  for (int x = 0; x < g->order(); ++x)
    a.push_back(IntMatrix::kronecker(m.action(g->inv(x)).transpose(), n.action(x)));
  return GLattice(g, std::move(a), false);
}

IntVector vectorize(const IntMatrix& f) {
  IntVector v(f.rows() * f.cols());
  for (std::size_t j = 0; j < f.cols(); ++j)
    for (const auto& e : f.column(j)) v[j * f.rows() + e.index] = e.value;
  return v;
}

IntMatrix unvectorize(const IntVector& v, std::size_t rows, std::size_t cols) {
  if (v.size() != rows * cols) fail(ErrorCode::invalid_argument, "unvectorize: size mismatch");
  std::vector<IntVector> columns(cols, IntVector(rows));
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) columns[j][i] = v[j * rows + i];
  return IntMatrix::from_column_vectors(rows, columns);
}

std::vector<IntMatrix> induced_action(const GLattice& ambient, const IntMatrix& basis) {
  ColumnEchelon ech(ambient.rank(), true);
  ech.add_all(basis);
  if (ech.rank() != basis.cols()) fail(ErrorCode::invalid_argument, "induced_action: basis is not independent");
  const auto& g = ambient.group();
  std::vector<IntMatrix> out;
  out.reserve(g->order());
  for (int x = 0; x < g->order(); ++x) {
    IntMatrix moved = ambient.action(x) * basis;
    std::vector<SparseVector> cols;
    cols.reserve(moved.cols());
    for (const auto& c : moved.columns()) {
      auto sol = ech.solve(c);
      if (!sol) fail(ErrorCode::invalid_argument, "sublattice is not G-stable");
      cols.push_back(std::move(*sol));
    }
    out.push_back(IntMatrix::from_columns(basis.cols(), std::move(cols)));
  }
  return out;
}

Sublattice sublattice_with_induced_action(const GLattice& ambient, const IntMatrix& generators) {
  if (generators.rows() != ambient.rank())
    fail(ErrorCode::invalid_argument, "sublattice: generator rows != ambient rank");
  IntMatrix basis = hermite_basis(generators);
  GLattice sub(ambient.group(), induced_action(ambient, basis));
  return {sub, make_gmap(sub, ambient, basis)};
}

Quotient torsion_free_quotient(const GLattice& ambient, const IntMatrix& sub_generators) {
  const std::size_t n = ambient.rank();
  if (sub_generators.rows() != n) fail(ErrorCode::invalid_argument, "quotient: generator rows != ambient rank");
  IntMatrix s = hermite_basis(sub_generators);
  for (const auto& d : smith_diagonal(s))
    if (d != 1) fail(ErrorCode::invalid_argument, "quotient: sublattice is not saturated");
  ColumnEchelon sub(n);
  sub.add_all(s);
  for (int x : ambient.group()->generators()) {
    IntMatrix moved = ambient.action(x) * s;
    for (const auto& c : moved.columns())
      if (!sub.contains(c)) fail(ErrorCode::invalid_argument, "quotient: sublattice is not G-stable");
  }

  // q = K^T with K a saturated kernel basis of s^T; ker q = span(s), q onto.
  IntMatrix q = kernel_basis(s.transpose()).transpose();
  const std::size_t r = q.rows();
  ColumnEchelon qe(r, true);
  qe.add_all(q);
  std::vector<SparseVector> sec;
  for (std::size_t i = 0; i < r; ++i) {
    auto sol = qe.solve({{static_cast<std::uint32_t>(i), Integer(1)}});
    ensure(sol.has_value(), "quotient: projection is not surjective");
    sec.push_back(std::move(*sol));
  }
  IntMatrix section = IntMatrix::from_columns(n, std::move(sec));
  ensure((q * section).is_identity(), "quotient: section is not a right inverse");

  const auto& g = ambient.group();
  std::vector<IntMatrix> a;
  for (int x = 0; x < g->order(); ++x) a.push_back(q * ambient.action(x) * section);
  GLattice quot(g, std::move(a));
  return {quot, make_gmap(ambient, quot, q), section};
}

IntMatrix fixed_sublattice(const GLattice& m, const Subgroup& h) {
  require_subgroup_of(h, m.group(), "fixed_sublattice");
  const std::size_t n = m.rank();
  IntMatrix stacked(0, n);
  for (int x : h.generators()) stacked = stacked.vstack(m.action(x) - IntMatrix::identity(n));
  if (stacked.rows() == 0) return IntMatrix::identity(n);
  return kernel_basis(stacked);
}

std::vector<GMap> equivariant_hom_basis(const GLattice& m, const GLattice& n) {
  GLattice hom = hom_lattice(m, n);
  IntMatrix fixed = fixed_sublattice(hom, whole_group(m.group()));
  std::vector<GMap> out;
  for (std::size_t j = 0; j < fixed.cols(); ++j)
    out.push_back(make_gmap(m, n, unvectorize(fixed.column_dense(j), n.rank(), m.rank())));
  return out;
}

void LatticeSES::validate() const {
  inject.validate();
  surject.validate();
  if (inject.target.rank() != middle.rank() || surject.source.rank() != middle.rank())
    fail(ErrorCode::verification, "LatticeSES: maps do not meet at the middle lattice");
  if (left.rank() + right.rank() != middle.rank()) fail(ErrorCode::verification, "LatticeSES: ranks do not add up");
  if (!(surject.matrix * inject.matrix).is_zero()) fail(ErrorCode::verification, "LatticeSES: surject o inject != 0");
  auto di = smith_diagonal(inject.matrix);
  if (di.size() != left.rank()) fail(ErrorCode::verification, "LatticeSES: inject is not injective");
  for (const auto& d : di)
    if (d != 1) fail(ErrorCode::verification, "LatticeSES: inject is not a saturated embedding");
  auto ds = smith_diagonal(surject.matrix);
  if (ds.size() != right.rank()) fail(ErrorCode::verification, "LatticeSES: surject is not onto");
  for (const auto& d : ds)
    if (d != 1) fail(ErrorCode::verification, "LatticeSES: surject is not onto");
}

LatticeSES make_ses(const GLattice& left, const GLattice& middle, const GLattice& right, IntMatrix inject,
                    IntMatrix surject) {
  LatticeSES s{left, middle, right, GMap{left, middle, std::move(inject)}, GMap{middle, right, std::move(surject)}};
  s.validate();
  return s;
}

IntMatrix integer_splitting(const GMap& surject) {
  const auto& pi = surject.matrix;
  ColumnEchelon ech(pi.rows(), true);
  ech.add_all(pi);
  std::vector<SparseVector> cols;
  for (std::size_t i = 0; i < pi.rows(); ++i) {
    auto sol = ech.solve({{static_cast<std::uint32_t>(i), Integer(1)}});
    if (!sol) fail(ErrorCode::invalid_argument, "integer_splitting: map is not onto");
    cols.push_back(std::move(*sol));
  }
  IntMatrix s = IntMatrix::from_columns(pi.cols(), std::move(cols));
  ensure((pi * s).is_identity(), "integer_splitting: pi * s != 1");
  return s;
}

}  // namespace torsor
