#include "torsor/cohomology.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "torsor/config.hpp"
#include "torsor/errors.hpp"

namespace torsor {

namespace {

// x * v for v in Z[G]^k, coordinates j * n + g.
SparseVector translate(const FiniteGroup& g, int x, const SparseVector& v) {
  const auto n = static_cast<std::uint32_t>(g.order());
  SparseVector out;
  out.reserve(v.size());
  for (const auto& e : v) {
    const std::uint32_t blk = e.index / n, h = e.index % n;
    out.push_back({blk * n + static_cast<std::uint32_t>(g.mul(x, static_cast<int>(h))), e.value});
  }
  std::sort(out.begin(), out.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
  return out;
}

// Z-matrix of the Z[G]-map Z[G]^k -> Z[G]^{k'} with gen_j -> images[j].
IntMatrix extend_equivariantly(const FiniteGroup& g, const std::vector<SparseVector>& images, std::size_t target_dim) {
  std::vector<SparseVector> cols;
  cols.reserve(images.size() * g.order());
  for (const auto& y : images)
    for (int x = 0; x < g.order(); ++x) cols.push_back(translate(g, x, y));
  return IntMatrix::from_columns(target_dim, std::move(cols));
}

// Greedy Z[G]-module generators of the Z-lattice spanned by the columns of k.
std::vector<SparseVector> module_generators(const FiniteGroup& g, const IntMatrix& k) {
  ColumnEchelon span(k.rows());
  std::vector<SparseVector> gens;
  for (const auto& b : k.columns()) {
    if (span.contains(b)) continue;
    gens.push_back(b);
    for (int x = 0; x < g.order(); ++x) span.add(translate(g, x, b));
  }
  return gens;
}

std::shared_ptr<const FreeResolution> build_resolution(const GroupPtr& g) {
  auto res = std::make_shared<FreeResolution>();
  res->group = g;
  const std::size_t n = static_cast<std::size_t>(g->order());
  res->ranks = {1};
  res->boundary.resize(4);
  std::vector<SparseVector> images;
  for (int s : g->generators()) images.push_back(sparse::from_dense([&] {
      IntVector v(n);
      v[s] += 1;
      v[0] -= 1;
      return v;
    }()));
  for (int level = 1; level <= 3; ++level) {
    res->ranks.push_back(images.size());
    res->boundary[level] = extend_equivariantly(*g, images, n * res->ranks[level - 1]);
    if (level > 1)
      ensure((res->boundary[level - 1] * res->boundary[level]).is_zero(), "free resolution: d o d != 0");
    if (level < 3) images = module_generators(*g, kernel_basis(res->boundary[level]));
  }
  return res;
}

IntMatrix relation_blocks(const IntMatrix& r, std::size_t copies, std::size_t rank) {
  if (copies == 0) return IntMatrix(0, 0);
  if (r.cols() == 0) return IntMatrix(rank * copies, 0);
  return IntMatrix::block_diagonal(std::vector<IntMatrix>(copies, r));
}

void check_module_group(const Subgroup& h, const GModule& m) { require_subgroup_of(h, m.group(), "tate_h"); }

// Accumulates blocks into sparse columns.
class BlockBuilder {
 public:
  BlockBuilder(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  void add(std::size_t row0, std::size_t col0, const Integer& c, const IntMatrix& block) {
    for (std::size_t b = 0; b < block.cols(); ++b)
      for (const auto& e : block.column(b)) cols_[col0 + b][static_cast<std::uint32_t>(row0 + e.index)] += c * e.value;
  }

  IntMatrix build() const {
    std::vector<SparseVector> out(cols_.size());
    for (std::size_t j = 0; j < cols_.size(); ++j)
      for (const auto& [i, v] : cols_[j])
        if (sgn(v) != 0) out[j].push_back({i, v});
    return IntMatrix::from_columns(rows_, std::move(out));
  }

 private:
  std::size_t rows_;
  std::vector<std::map<std::uint32_t, Integer>> cols_;
};

// delta^n for the restriction of the G-resolution to C, free over Z[C] on
// the generators t * gen_i, t in reps (right coset representatives).
IntMatrix restricted_differential(const FreeResolution& res, const GLattice& m, const Subgroup& c,
                                  const std::vector<int>& reps, int n) {
  const auto& g = *res.group;
  const std::size_t order = static_cast<std::size_t>(g.order());
  const std::size_t r = m.rank(), q = reps.size();
  const std::size_t kin = res.ranks[n - 1], kout = res.ranks[n];
  // x = h' * reps[coset[x]]
  std::vector<int> coset(order), head(order);
  for (std::size_t ti = 0; ti < q; ++ti)
    for (int h : c.elements) {
      int x = g.mul(h, reps[ti]);
      coset[x] = static_cast<int>(ti);
      head[x] = h;
    }
  BlockBuilder bb(q * kout * r, q * kin * r);
  const auto& d = res.boundary[n];
  for (std::size_t ti = 0; ti < q; ++ti)
    for (std::size_t i = 0; i < kout; ++i)
      for (const auto& e : d.column(i * order)) {
        const std::size_t j = e.index / order;
        const int x = g.mul(reps[ti], static_cast<int>(e.index % order));
        bb.add((ti * kout + i) * r, (coset[x] * kin + j) * r, e.value, m.action(head[x]));
      }
  return bb.build();
}

}  // namespace

std::shared_ptr<const FreeResolution> free_resolution(const GroupPtr& g) {
  static std::mutex mu;
  static std::map<std::vector<std::vector<int>>, std::shared_ptr<const FreeResolution>> cache;
  auto key = g->table_rows();
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto res = build_resolution(g);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::move(key), std::move(res)).first->second;
}

IntMatrix cochain_differential(const FreeResolution& res, const GLattice& m, int n) {
  if (n < 1 || n > 3) fail(ErrorCode::invalid_argument, "cochain_differential: degree out of range");
  require_same_group(res.group, m.group(), "cochain_differential");
  const std::size_t order = static_cast<std::size_t>(res.group->order());
  const std::size_t r = m.rank(), kin = res.ranks[n - 1], kout = res.ranks[n];
  BlockBuilder bb(kout * r, kin * r);
  for (std::size_t i = 0; i < kout; ++i)
    for (const auto& e : res.boundary[n].column(i * order))
      bb.add(i * r, (e.index / order) * r, e.value, m.action(static_cast<int>(e.index % order)));
  return bb.build();
}

CohomologyGroup subquotient(const IntMatrix& d_in, const IntMatrix& d_out, const IntMatrix& rel_here,
                            const IntMatrix& rel_next, int degree) {
  const std::size_t dim = d_out.cols();
  IntMatrix a = d_out;
  if (rel_next.cols() > 0) a = a.hstack(rel_next.negated());
  IntMatrix k = kernel_basis(a);
  std::vector<std::size_t> top(dim);
  for (std::size_t i = 0; i < dim; ++i) top[i] = i;
  IntMatrix z = hermite_basis(k.select_rows(top));

  ColumnEchelon zb(dim, true);
  zb.add_all(z);
  IntMatrix b = d_in;
  if (rel_here.cols() > 0) b = b.cols() ? b.hstack(rel_here) : rel_here;
  std::vector<SparseVector> coords;
  for (const auto& col : b.columns()) {
    auto x = zb.solve(col);
    ensure(x.has_value(), "cohomology: a coboundary is not a cocycle");
    coords.push_back(std::move(*x));
  }
  IntMatrix bc = IntMatrix::from_columns(z.cols(), std::move(coords));
  return {degree, cokernel_invariants(bc), z, bc};
}

CohomologyGroup tate_h(const Subgroup& h, const GLattice& m, int degree) { return tate_h(h, lattice_module(m), degree); }

CohomologyGroup tate_h(const Subgroup& h, const GModule& m, int degree) {
  check_module_group(h, m);
  const auto& lat = m.carrier;
  const std::size_t r = lat.rank();
  const IntMatrix& rel = m.relations.cols() ? m.relations : IntMatrix(r, 0);
  const IntMatrix id = IntMatrix::identity(r);
  auto gens = h.generators();

  if (degree == 0 || degree == -1) {
    IntMatrix norm(r, r);
    for (int x : h.elements) norm = norm + lat.action(x);
    IntMatrix aug(0, r), aug_cols(r, 0);
    for (int s : gens) {
      aug = aug.vstack(lat.action(s) - id);
      aug_cols = aug_cols.hstack(lat.action(s) - id);
    }
    if (degree == 0) return subquotient(norm, aug, rel, relation_blocks(rel, gens.size(), r), 0);
    return subquotient(aug_cols, norm, rel, rel, -1);
  }
  if (degree == 1 || degree == 2) {
    if (degree == 2) require_cohomology_guard(h.order(), "tate_h");
    GLattice sub = restrict_to(lat, h);
    auto res = free_resolution(sub.group());
    IntMatrix d_in = cochain_differential(*res, sub, degree);
    IntMatrix d_out = cochain_differential(*res, sub, degree + 1);
    return subquotient(d_in, d_out, relation_blocks(rel, res->ranks[degree], r),
                       relation_blocks(rel, res->ranks[degree + 1], r), degree);
  }
  fail(ErrorCode::invalid_argument, "tate_h: degree must be -1, 0, 1 or 2");
}

CohomologyGroup sha2(const GLattice& m) { return sha2(lattice_module(m)); }

CohomologyGroup sha2(const GModule& m) {
  const auto& g = m.group();
  require_cohomology_guard(g->order(), "sha2");
  const auto& lat = m.carrier;
  const std::size_t r = lat.rank();
  const IntMatrix& rel = m.relations.cols() ? m.relations : IntMatrix(r, 0);
  auto res = free_resolution(g);
  const std::size_t k2 = res->ranks[2], k3 = res->ranks[3];
  CohomologyGroup h2 = subquotient(cochain_differential(*res, lat, 2), cochain_differential(*res, lat, 3),
                                   relation_blocks(rel, k2, r), relation_blocks(rel, k3, r), 2);
  const std::size_t z = h2.cocycles.cols();

  // u in Z-coordinates survives when res_C(Z u) = delta_C v + R w for every
  // cyclic C; the surviving lattice is narrowed one subgroup at a time.
  IntMatrix ku = IntMatrix::identity(z);
  for (const auto& c : cyclic_subgroups(g)) {
    if (c.order() == 1 || ku.cols() == 0) continue;
    auto reps = right_coset_representatives(c);
    const std::size_t q = reps.size();
    BlockBuilder rb(q * k2 * r, k2 * r);
    for (std::size_t ti = 0; ti < q; ++ti)
      for (std::size_t i = 0; i < k2; ++i) rb.add((ti * k2 + i) * r, i * r, Integer(1), lat.action(reps[ti]));
    IntMatrix a = rb.build() * h2.cocycles * ku;
    a = a.hstack(restricted_differential(*res, lat, c, reps, 2).negated());
    IntMatrix rc = relation_blocks(rel, q * k2, r);
    if (rc.cols()) a = a.hstack(rc.negated());
    const std::size_t m = ku.cols();
    IntMatrix k = kernel_basis(a);
    std::vector<std::size_t> top(m);
    for (std::size_t i = 0; i < m; ++i) top[i] = i;
    ku = hermite_basis(ku * k.select_rows(top));
  }

  ColumnEchelon kb(z, true);
  kb.add_all(ku);
  std::vector<SparseVector> coords;
  for (const auto& col : h2.coboundaries.columns()) {
    auto x = kb.solve(col);
    ensure(x.has_value(), "sha2: a coboundary does not restrict to zero");
    coords.push_back(std::move(*x));
  }
  IntMatrix bc = IntMatrix::from_columns(ku.cols(), std::move(coords));
  return {2, cokernel_invariants(bc), h2.cocycles * ku, bc};
}

void Cocycle::validate() const {
  const auto& g = coefficients.group();
  if (static_cast<int>(values.size()) != g->order()) fail(ErrorCode::invalid_argument, "cocycle: one value per element");
  for (const auto& v : values)
    if (v.size() != coefficients.rank()) fail(ErrorCode::invalid_argument, "cocycle: value of wrong rank");
  for (int x = 0; x < g->order(); ++x)
    for (int y = 0; y < g->order(); ++y) {
      IntVector rhs = coefficients.action(x) * values[y];
      for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] += values[x][i];
      if (rhs != values[g->mul(x, y)])
        fail(ErrorCode::verification, "cocycle condition fails at (" + std::to_string(x) + ", " + std::to_string(y) + ")");
    }
}

Cocycle Cocycle::operator+(const Cocycle& other) const {
  require_same_group(coefficients.group(), other.coefficients.group(), "cocycle sum");
  Cocycle c = *this;
  for (std::size_t g = 0; g < values.size(); ++g)
    for (std::size_t i = 0; i < values[g].size(); ++i) c.values[g][i] += other.values[g][i];
  c.validate();
  return c;
}

Cocycle Cocycle::operator-(const Cocycle& other) const { return *this + other.scaled(-1); }

Cocycle Cocycle::scaled(const Integer& k) const {
  Cocycle c = *this;
  for (auto& v : c.values)
    for (auto& x : v) x *= k;
  c.validate();
  return c;
}

Cocycle coboundary(const GLattice& a, const IntVector& f) {
  Cocycle c{a, {}};
  for (int x = 0; x < a.group()->order(); ++x) {
    IntVector v = a.action(x) * f;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= f[i];
    c.values.push_back(std::move(v));
  }
  return c;
}

std::optional<IntVector> coboundary_witness(const Cocycle& c) {
  const auto& a = c.coefficients;
  const std::size_t r = a.rank();
  const IntMatrix id = IntMatrix::identity(r);
  IntMatrix stacked(0, r);
  IntVector rhs;
  for (int s : a.group()->generators()) {
    stacked = stacked.vstack(a.action(s) - id);
    rhs.insert(rhs.end(), c.values[s].begin(), c.values[s].end());
  }
  std::optional<IntVector> f = stacked.rows() ? solve_linear(stacked, rhs) : std::optional<IntVector>(IntVector(r));
  if (!f) return std::nullopt;
  // agreement on generators forces agreement everywhere for genuine cocycles
  ensure(coboundary(a, *f).values == c.values, "coboundary witness disagrees off the generators");
  return f;
}

bool is_coboundary(const Cocycle& c) { return coboundary_witness(c).has_value(); }

Cocycle extension_class(const LatticeSES& ses) {
  ses.validate();
  const auto& g = ses.middle.group();
  IntMatrix s = integer_splitting(ses.surject);
  ColumnEchelon inj(ses.middle.rank(), true);
  inj.add_all(ses.inject.matrix);
  Cocycle c{hom_lattice(ses.right, ses.left), {}};
  for (int x = 0; x < g->order(); ++x) {
    IntMatrix diff = ses.middle.action(x) * s * ses.right.action(g->inv(x)) - s;
    std::vector<SparseVector> cols;
    for (const auto& col : diff.columns()) {
      auto y = inj.solve(col);
      ensure(y.has_value(), "extension class: value outside the kernel");
      cols.push_back(std::move(*y));
    }
    c.values.push_back(vectorize(IntMatrix::from_columns(ses.left.rank(), std::move(cols))));
  }
  c.validate();
  return c;
}

long cocycle_order(const Cocycle& c) {
  c.validate();
  const auto& g = c.coefficients.group();
  AbelianInvariants h1 = tate_h(whole_group(g), c.coefficients, 1).invariants;
  ensure(h1.is_finite(), "H^1 with lattice coefficients must be finite");
  const long e = h1.exponent().get_si();
  for (long k = 1; k <= e; ++k) {
    if (e % k) continue;
    if (is_coboundary(c.scaled(k))) return k;
  }
  fail(ErrorCode::verification, "cocycle order does not divide the exponent of H^1");
}

}  // namespace torsor
