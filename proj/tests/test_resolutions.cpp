#include <doctest.h>

#include "torsor/cohomology.hpp"
#include "torsor/errors.hpp"
#include "torsor/group_library.hpp"
#include "torsor/resolutions.hpp"

using namespace torsor;

namespace {

bool unimodular(const IntMatrix& m) {
  if (m.rows() != m.cols()) return false;
  Integer det = m.determinant();
  return det == 1 || det == -1;
}

std::vector<long> divisors_of(long n) {
  std::vector<long> out;
  for (long k = 1; k <= n; ++k)
    if (n % k == 0) out.push_back(k);
  return out;
}

}  // namespace

TEST_SUITE("resolutions") {
  TEST_CASE("T_d sequence is exact and its cohomology matches Z/d") {
    for (const char* spec : {"C2", "C4", "E2^2", "D8", "Q8", "C3", "S3"}) {
      auto g = parse_group_spec(spec);
      for (long d : {1L, 2L, 3L, 4L, 6L}) {
        LatticeSES seq = t_hat_d_sequence(g, d);
        seq.validate();
        CHECK(seq.middle.rank() == static_cast<std::size_t>(g->order()));
        t_hat_d(g, d).presentation.validate();
        for (const auto& h : all_subgroups(g))
          for (int i = 0; i <= 2; ++i)
            CHECK_MESSAGE(tate_h(h, t_hat_d(g, d).lattice, i).invariants ==
                              tate_h(h, trivial_cyclic_module(g, d), i).invariants,
                          spec << " d=" << d << " H=" << h.describe() << " degree " << i);
      }
    }
  }

  TEST_CASE("M_d is dual to T_d") {
    for (const char* spec : {"C4", "E2^2", "S3"})
      for (long d : {1L, 2L, 4L}) {
        auto g = parse_group_spec(spec);
        MdLattice md = m_d(g, d);
        md.sequence.validate();
        CHECK(unimodular(md.duality));
        CHECK(is_equivariant(dual(t_hat_d(g, d).lattice), md.lattice, md.duality));
      }
  }

  TEST_CASE("extension class of the norm-one sequence has order |G|, and so does its dual") {
    for (const char* spec : {"C2", "C3", "C4", "E2^2", "S3", "D8", "Q8", "C8"}) {
      auto g = parse_group_spec(spec);
      PeriodReport rep = period_norm_one(g, true);
      CHECK(rep.period == g->order());
      CHECK(rep.base_order == g->order());
      CHECK(rep.dual_order == g->order());
      CHECK(period_norm_one(g, false).base_order == 0);
    }
  }

  TEST_CASE("the T_d class is d times the base class") {
    for (const char* spec : {"C2", "C4", "E2^2", "S3"}) {
      auto g = parse_group_spec(spec);
      Cocycle base = extension_class(norm_one_sequence(g));
      for (long d = 1; d <= g->order(); ++d) {
        Cocycle alpha_d = extension_class(t_hat_d_sequence(g, d));
        alpha_d.validate();
        CHECK_MESSAGE(is_coboundary(alpha_d - base.scaled(Integer(d))), spec << " d=" << d);
        CHECK(cocycle_order(alpha_d) == g->order() / gcd_long(d, g->order()));
      }
    }
  }

  TEST_CASE("T_d splits exactly when |G| divides d") {
    for (const char* spec : {"C2", "C4", "E2^2", "S3", "C3"}) {
      auto g = parse_group_spec(spec);
      const long n = g->order();
      auto split = equivariant_splitting(t_hat_d_sequence(g, n));
      REQUIRE(split.has_value());
      CHECK(unimodular(*split));
      CHECK(equivariant_splitting(t_hat_d_sequence(g, 2 * n)).has_value());
      for (long d = 1; d < n; ++d) CHECK_FALSE(equivariant_splitting(t_hat_d_sequence(g, d)).has_value());
    }
  }

  TEST_CASE("restriction of M_{G,d} to a subgroup decomposes") {
    struct Case {
      const char* group;
      int sub_order;
    };
    for (auto c : {Case{"C4", 2}, Case{"D8", 4}, Case{"Q8", 4}, Case{"C3xC3", 3}}) {
      auto g = parse_group_spec(c.group);
      int tried = 0;
      for (const auto& h : all_subgroups(g)) {
        if (h.order() != c.sub_order) continue;
        if (std::string(c.group) == "D8" && recognize(h) != GroupKind::cyclic) continue;
        for (long d : {1L, 2L, 3L, 4L}) {
          SubgroupDecomposition dec = subgroup_decomposition(g, h, d);
          dec.iso.validate();
          CHECK(unimodular(dec.iso.matrix));
          CHECK(unimodular(dec.f));
          CHECK(dec.iso.target.rank() == static_cast<std::size_t>(g->order()));
        }
        ++tried;
      }
      CHECK(tried > 0);
    }
  }

  TEST_CASE("coflasque resolutions of M_d") {
    for (const char* spec : {"C2", "C4", "E2^2", "C8", "D8", "Q8", "C3", "C9"}) {
      auto g = parse_group_spec(spec);
      for (long d : divisors_of(g->order())) {
        CoflasqueResolution res = coflasque_resolution_md(g, d, true);
        res.ses.validate();
        CHECK_FALSE(coflasque_kernel_witness(res.ses).has_value());
        CHECK(res.ses.right.rank() == static_cast<std::size_t>(g->order()));
        CHECK(res.ses.middle.rank() == res.ses.left.rank() + res.ses.right.rank());
        if (g->order() <= 4) CHECK(is_coflasque(res.ses.left).holds);
      }
    }
    CHECK_THROWS_AS(coflasque_resolution_md(parse_group_spec("S3"), 2), Error);
    CHECK_THROWS_AS(coflasque_resolution_md(parse_group_spec("C4"), 3), Error);
  }

  TEST_CASE("flasque and coflasque predicates") {
    auto c2 = parse_group_spec("C2");
    GLattice sign = norm_one_lattice(c2);
    auto f = is_flasque(sign);
    CHECK_FALSE(f.holds);
    REQUIRE(f.witness.has_value());
    CHECK(f.witness->order() == 2);
    CHECK_FALSE(is_coflasque(sign).holds);
    for (const char* spec : {"C4", "E2^2", "S3"}) {
      auto g = parse_group_spec(spec);
      for (const auto& h : all_subgroups(g)) {
        CHECK(is_flasque(permutation_lattice(h)).holds);
        CHECK(is_coflasque(permutation_lattice(h)).holds);
      }
      // Ĥ^-1(H, T) = Z/|H| and H^1(H, T) = H^2(H, Z)
      CHECK_FALSE(is_flasque(norm_one_lattice(g)).holds);
      CHECK_FALSE(is_coflasque(norm_one_lattice(g)).holds);
    }
  }

  TEST_CASE("flasque classes are flasque") {
    for (const char* spec : {"C2", "C4", "E2^2"}) {
      auto g = parse_group_spec(spec);
      for (long d : divisors_of(g->order())) {
        FlasqueClass fc = flasque_class_norm_one(g, d, true);
        CHECK(is_flasque(fc.lattice).holds);
        CHECK(is_coflasque(dual(fc.lattice)).holds);
      }
    }
  }

  TEST_CASE("orbit sums span the fixed points of a permutation lattice") {
    auto g = parse_group_spec("D8");
    GLattice p = direct_sum(regular_lattice(g), permutation_lattice(all_subgroups(g)[3]));
    for (const auto& h : all_subgroups(g)) {
      IntMatrix orbits = orbit_sum_basis(p, h);
      CHECK(hermite_basis(orbits) == hermite_basis(fixed_sublattice(p, h)));
    }
  }

  TEST_CASE("invertibility of permutation and known lattices") {
    auto g = parse_group_spec("E2^2");
    for (const auto& h : all_subgroups(g)) {
      InvertibilityResult r = is_invertible(permutation_lattice(h));
      CHECK(r.invertible);
      CHECK((r.cover.surject.matrix * r.splitting).is_identity());
      CHECK(is_equivariant(r.cover.right, r.cover.middle, r.splitting));
    }
    CHECK(is_invertible(trivial_lattice(parse_group_spec("C1"), 3)).invertible);
  }

  TEST_CASE("invertibility is unchanged by adding permutation summands") {
    struct Case {
      const char* group;
      long d;
      bool expected;
    };
    for (auto c : {Case{"C2", 2, true}, Case{"C4", 2, true}, Case{"C4", 4, true}, Case{"E2^2", 2, true},
                   Case{"E2^2", 4, false}, Case{"C3", 3, true}}) {
      auto g = parse_group_spec(c.group);
      GLattice f = flasque_class_norm_one(g, c.d, true).lattice;
      CHECK_MESSAGE(is_invertible(f).invertible == c.expected, c.group << " d=" << c.d);
      for (const auto& h : all_subgroups(g)) {
        GLattice bigger = direct_sum(f, permutation_lattice(h));
        CHECK_MESSAGE(is_invertible(bigger).invertible == c.expected, c.group << " d=" << c.d << " + Z[G/"
                                                                              << h.describe() << "]");
      }
    }
  }

  TEST_CASE("flasque classes with known invertibility") {
    CHECK(is_invertible(flasque_class_norm_one(parse_group_spec("C2"), 1).lattice).invertible);
    CHECK(is_invertible(flasque_class_norm_one(parse_group_spec("D8"), 2).lattice).invertible);
    FlasqueClass c4 = flasque_class_norm_one(parse_group_spec("C4"), 2);
    CHECK(is_flasque(c4.lattice).holds);
    CHECK(is_invertible(c4.lattice).invertible);
    CHECK_FALSE(is_invertible(flasque_class_norm_one(parse_group_spec("Q8"), 4).lattice).invertible);
  }

  TEST_CASE("invertibility needs a p-group") {
    CHECK_THROWS_AS(is_invertible(trivial_lattice(parse_group_spec("S3"), 1)), Error);
  }
}
