#include <algorithm>

#include "torsor/config.hpp"
#include "torsor/errors.hpp"
#include "torsor/resolutions.hpp"

namespace torsor {

namespace {

// One Z[G/H] summand of the cover; its coset tH maps to rho(t) v.
struct Summand {
  Subgroup h;
  IntVector v;
  std::vector<int> reps;  // left coset representatives, in permutation_lattice order
  std::size_t offset = 0;
};

struct Cover {
  LatticeSES ses;
  std::vector<Summand> summands;
};

// Row echelon form over F_p that remembers, for each pivot, its combination
// of the columns that became pivots.
class ModEchelon {
 public:
  ModEchelon(std::size_t rows, std::uint32_t p) : rows_(rows), p_(p), pivot_at_row_(rows, -1) {}

  void add(const SparseVector& column) {
    std::vector<std::uint32_t> v(rows_, 0);
    for (const auto& e : column) v[e.index] = reduce(e.value);
    std::vector<std::uint32_t> combo;
    const std::uint32_t id = static_cast<std::uint32_t>(added_++);
    reduce_vector(v, &combo);
    auto lead = std::find_if(v.begin(), v.end(), [](std::uint32_t a) { return a != 0; });
    if (lead == v.end()) return;
    // v = column - sum combo_i pivot_i
    for (auto& a : combo) a = a == 0 ? 0 : p_ - a;
    combo.resize(pivots_.size() + 1, 0);
    combo[pivots_.size()] = 1;
    const std::uint32_t inv = inverse(*lead);
    for (auto& a : v) a = mul(a, inv);
    for (auto& a : combo) a = mul(a, inv);
    pivot_at_row_[lead - v.begin()] = static_cast<int>(pivots_.size());
    pivots_.push_back({std::move(v), std::move(combo), id});
  }

  /// Coefficients over all added columns (reduced into [0, p)), or empty when
  /// b is not in the span.
  std::vector<Integer> solve(const IntVector& b) const {
    std::vector<std::uint32_t> v(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = reduce(b[i]);
    std::vector<std::uint32_t> combo;
    reduce_vector(v, &combo);
    if (std::any_of(v.begin(), v.end(), [](std::uint32_t a) { return a != 0; })) return {};
    std::vector<Integer> out(added_, 0);
    for (std::size_t i = 0; i < combo.size(); ++i)
      if (combo[i] != 0) out[pivots_[i].column] = combo[i];
    return out;
  }

 private:
  struct Pivot {
    std::vector<std::uint32_t> vec;
    std::vector<std::uint32_t> combo;  // over pivot columns, indexed by pivot number
    std::uint32_t column;
  };

  std::uint32_t reduce(const Integer& a) const {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), p_);
    return static_cast<std::uint32_t>(r.get_ui());
  }
  std::uint32_t mul(std::uint64_t a, std::uint64_t b) const { return static_cast<std::uint32_t>(a * b % p_); }
  std::uint32_t inverse(std::uint32_t a) const {
    std::uint64_t r = 1, base = a;
    for (std::uint32_t e = p_ - 2; e > 0; e >>= 1, base = base * base % p_)
      if (e & 1) r = r * base % p_;
    return static_cast<std::uint32_t>(r);
  }

  // v -= sum c_i pivot_i, recording c in combo as a combination of pivot columns.
  void reduce_vector(std::vector<std::uint32_t>& v, std::vector<std::uint32_t>* combo) const {
    combo->assign(pivots_.size(), 0);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (v[r] == 0 || pivot_at_row_[r] < 0) continue;
      const auto& piv = pivots_[pivot_at_row_[r]];
      const std::uint64_t c = v[r];
      const std::uint64_t neg = p_ - c;
      for (std::size_t i = r; i < rows_; ++i)
        if (piv.vec[i] != 0) v[i] = static_cast<std::uint32_t>((v[i] + neg * piv.vec[i]) % p_);
      for (std::size_t i = 0; i < piv.combo.size(); ++i)
        if (piv.combo[i] != 0) (*combo)[i] = static_cast<std::uint32_t>(((*combo)[i] + c * piv.combo[i]) % p_);
    }
  }

  std::size_t rows_;
  std::uint32_t p_;
  std::size_t added_ = 0;
  std::vector<int> pivot_at_row_;
  std::vector<Pivot> pivots_;
};

IntMatrix divided_exact(const IntMatrix& a, const Integer& d) {
  std::vector<SparseVector> cols;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    SparseVector c = a.column(j);
    for (auto& e : c) {
      ensure(mpz_divisible_p(e.value.get_mpz_t(), d.get_mpz_t()) != 0, "invertibility: residue is not divisible");
      mpz_divexact(e.value.get_mpz_t(), e.value.get_mpz_t(), d.get_mpz_t());
    }
    cols.push_back(std::move(c));
  }
  return IntMatrix::from_columns(a.rows(), std::move(cols));
}

// The equivariant endomorphism w of F with w X = values.
IntMatrix extend_from_generators(const GLattice& f, const IntMatrix& x, const IntMatrix& values) {
  const auto& g = f.group();
  const std::size_t r = f.rank();
  ColumnEchelon span(r, true);
  std::vector<SparseVector> images;
  for (int y = 0; y < g->order(); ++y) {
    IntMatrix moved = f.action(y) * x;
    IntMatrix moved_values = f.action(y) * values;
    for (std::size_t j = 0; j < x.cols(); ++j) {
      span.add(moved.column(j));
      images.push_back(moved_values.column(j));
    }
  }
  std::vector<SparseVector> cols;
  for (std::size_t i = 0; i < r; ++i) {
    auto c = span.solve(SparseVector{{static_cast<std::uint32_t>(i), Integer(1)}});
    ensure(c.has_value(), "invertibility: generators do not span F");
    SparseVector col;
    for (const auto& e : *c) col = sparse::axpy(col, e.value, images[e.index]);
    cols.push_back(std::move(col));
  }
  IntMatrix w = IntMatrix::from_columns(r, std::move(cols));
  ensure(w * x == values, "invertibility: endomorphism does not match on generators");
  ensure(is_equivariant(f, f, w), "invertibility: endomorphism is not equivariant");
  return w;
}

Cover build_cover(const GLattice& f) {
  const auto& g = f.group();
  const std::size_t r = f.rank();
  std::vector<Summand> summands;

  // regular block on greedy Z[G]-generators
  ColumnEchelon span(r);
  for (std::size_t i = 0; i < r; ++i) {
    SparseVector e{{static_cast<std::uint32_t>(i), Integer(1)}};
    if (span.contains(e)) continue;
    IntVector v(r);
    v[i] = 1;
    for (int x = 0; x < g->order(); ++x) span.add(f.action(x).column(i));
    summands.push_back({trivial_subgroup(g), v, {}, 0});
  }
  // one Z[G/H] per generator of H^0(H, F)
  for (const auto& h : all_subgroups(g)) {
    if (h.order() == 1) continue;
    CohomologyGroup h0 = tate_h(h, f, 0);
    if (h0.invariants.is_zero()) continue;
    ColumnEchelon quot(h0.cocycles.cols());
    quot.add_all(h0.coboundaries);
    for (std::size_t j = 0; j < h0.cocycles.cols(); ++j) {
      SparseVector e{{static_cast<std::uint32_t>(j), Integer(1)}};
      if (quot.contains(e)) continue;
      quot.add(e);
      summands.push_back({h, h0.cocycles.column_dense(j), {}, 0});
    }
  }

  std::vector<GLattice> parts;
  std::vector<IntVector> images;
  std::size_t offset = 0;
  for (auto& s : summands) {
    parts.push_back(permutation_lattice(s.h));
    s.offset = offset;
    for (const auto& coset : left_cosets(s.h)) {
      s.reps.push_back(coset.front());
      images.push_back(f.action(coset.front()) * s.v);
    }
    offset += s.reps.size();
  }
  GLattice p = direct_sum(parts);
  IntMatrix pi = IntMatrix::from_column_vectors(r, images);
  Sublattice k = sublattice_with_induced_action(p, kernel_basis(pi));
  LatticeSES ses = make_ses(k.lattice, p, f, k.inclusion.matrix, pi);
  auto bad = coflasque_kernel_witness(ses);
  ensure(!bad, "standard cover: kernel is not coflasque at " + (bad ? bad->describe() : std::string()));
  return {ses, summands};
}

}  // namespace

LatticeSES standard_coflasque_cover(const GLattice& f) { return build_cover(f).ses; }

InvertibilityResult is_invertible(const GLattice& f) {
  const auto& g = f.group();
  require_cohomology_guard(g->order(), "is_invertible");
  Cover cover = build_cover(f);
  const std::size_t r = f.rank();

  // Z[G]-generators of F; equivariant endomorphisms agreeing on them agree.
  std::vector<IntVector> gens;
  for (const auto& s : cover.summands)
    if (s.h.order() == 1) gens.push_back(s.v);
  const std::size_t m = gens.size();
  IntMatrix x = IntMatrix::from_column_vectors(r, gens);
  GLattice fdual = dual(f);

  // Hom_G(F, Z[G/H]) = (F^dual)^H: phi -> s(y) = sum_t phi(t^-1 y) e_tH,
  // and surject o s = sum_t rho(t) v phi rho(t)^-1.
  struct Unknown {
    std::size_t summand;
    IntVector phi;
  };
  std::vector<Unknown> unknowns;
  std::vector<SparseVector> columns;
  for (std::size_t si = 0; si < cover.summands.size(); ++si) {
    const auto& s = cover.summands[si];
    IntMatrix phis = s.h.order() == 1 ? IntMatrix::identity(r) : fixed_sublattice(fdual, s.h);
    // rows phi rho(t)^-1 X for every coset representative t
    std::vector<IntMatrix> moved;
    for (int t : s.reps) moved.push_back(f.action(g->inv(t)) * x);
    for (std::size_t j = 0; j < phis.cols(); ++j) {
      IntVector phi = phis.column_dense(j);
      std::vector<Integer> acc(r * m);
      for (std::size_t ti = 0; ti < s.reps.size(); ++ti) {
        IntVector w = f.action(s.reps[ti]) * s.v;
        for (std::size_t k = 0; k < m; ++k) {
          Integer psi = sparse::dot(moved[ti].column(k), phi);
          if (sgn(psi) == 0) continue;
          for (std::size_t i = 0; i < r; ++i)
            if (sgn(w[i]) != 0) acc[k * r + i] += psi * w[i];
        }
      }
      columns.push_back(sparse::from_dense(acc));
      unknowns.push_back({si, std::move(phi)});
    }
  }
  // The image I of Hom_G(F, P) in End_G(F) is a right ideal containing
  // |G| End_G(F), and End_G(F) -> Z^{rm}, phi -> phi X has saturated image.
  // For |G| = p^k this makes id in I equivalent to id in I + p End_G(F),
  // which is decided over F_p.
  const long n = g->order();
  long p = 1;
  int k = 0;
  if (n > 1) {
    auto base = prime_power_base(n);
    if (!base) fail(ErrorCode::invalid_argument, "is_invertible: the group must be a p-group");
    p = *base;
    for (long t = 1; t < n; t *= p) ++k;
  }
  InvertibilityResult out;
  out.cover = cover.ses;
  const IntMatrix s0 = integer_splitting(cover.ses.surject);
  auto average = [&](const IntMatrix& t) {
    IntMatrix acc = IntMatrix(cover.ses.middle.rank(), r);
    for (int y = 0; y < g->order(); ++y) acc = acc + cover.ses.middle.action(y) * t * f.action(g->inv(y));
    return acc;
  };
  if (n == 1) {
    out.invertible = true;
    out.splitting = average(s0);
    return out;
  }
  const std::vector<Integer> target = vectorize(x);
  std::vector<Integer> coeff;
  {
    ModEchelon span(r * m, static_cast<std::uint32_t>(p));
    for (const auto& c : columns) span.add(c);
    coeff = span.solve(target);
  }
  if (coeff.empty()) return out;
  SparseVector sol;
  for (std::size_t j = 0; j < coeff.size(); ++j)
    if (sgn(coeff[j]) != 0) sol.push_back({static_cast<std::uint32_t>(j), coeff[j]});

  const std::size_t prank = cover.ses.middle.rank();
  std::vector<IntVector> rows(prank, IntVector(r));
  for (const auto& e : sol) {
    const auto& u = unknowns[e.index];
    const auto& s = cover.summands[u.summand];
    for (std::size_t ti = 0; ti < s.reps.size(); ++ti) {
      // row of coset ti: c * phi rho(t)^-1
      IntVector row = f.action(g->inv(s.reps[ti])).transpose() * u.phi;
      for (std::size_t i = 0; i < r; ++i) rows[s.offset + ti][i] += e.value * row[i];
    }
  }
  const IntMatrix sc = IntMatrix::from_dense(rows, r);
  // X = pi sc X + p W with W = w X for an equivariant w, so
  // id = (pi sc) (1 + pw + ... + (pw)^{k-1}) + |G| w^k.
  const IntMatrix pisc = cover.ses.surject.matrix * sc;
  IntMatrix pw = x - pisc * x;
  IntMatrix wx = divided_exact(pw, Integer(p));
  IntMatrix w = extend_from_generators(f, x, wx);
  IntMatrix power = IntMatrix::identity(r);
  IntMatrix series = IntMatrix(r, r);
  IntMatrix pwm = Integer(p) * w;
  for (int i = 0; i < k; ++i) {
    series = series + power;
    power = power * pwm;
  }
  IntMatrix wk = IntMatrix::identity(r);
  for (int i = 0; i < k; ++i) wk = wk * w;
  IntMatrix splitting = sc * series + average(s0 * wk);
  make_gmap(f, cover.ses.middle, splitting);
  ensure((cover.ses.surject.matrix * splitting).is_identity(), "invertibility: surject o splitting != 1");
  out.invertible = true;
  out.splitting = std::move(splitting);
  return out;
}

}  // namespace torsor
