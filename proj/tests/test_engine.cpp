#include <doctest.h>

#include <json.hpp>
#include <random>

#include "torsor/engine.hpp"
#include "torsor/errors.hpp"
#include "torsor/group_library.hpp"
#include "torsor/serialize.hpp"
#include "support/golden_table.hpp"

using namespace torsor;

namespace {

std::string verdict_string(const GroupPtr& g) {
  std::string s;
  for (long d = 1; d <= 2L * g->order(); ++d) s += classify(g, d).retract_rational ? 'T' : 'F';
  return s;
}

bool all_subgroups_of_order_cyclic(const GroupPtr& g, long order) {
  for (const auto& h : all_subgroups(g))
    if (h.order() == order && recognize(h) != GroupKind::cyclic) return false;
  return true;
}

const char* kSmallGroups[] = {"C2", "C3", "C4", "E2^2", "C5", "C6", "S3", "C7", "C8", "C4xC2", "E2^3", "D8",
                              "Q8", "C9", "C3xC3", "D10", "C10", "D12", "C12", "C6xC2", "Q8xC3", "C16",
                              "C4xC4", "C8xC2", "E2^4", "D16", "Q16", "S4"};

}  // namespace

TEST_SUITE("engine") {
  TEST_CASE("golden classification table") {
    for (const auto& row : golden::kClassification) {
      auto g = parse_group_spec(row.group);
      CHECK_MESSAGE(verdict_string(g) == row.verdicts, row.group);
    }
  }

  TEST_CASE("verdict depends only on gcd(d, |G|) and splits over primes") {
    std::mt19937 rng(20240611);
    std::vector<GroupPtr> groups;
    for (const char* spec : kSmallGroups) groups.push_back(parse_group_spec(spec));
    for (int trial = 0; trial < 200; ++trial) {
      const auto& g = groups[rng() % groups.size()];
      const long n = g->order();
      const long d = 1 + static_cast<long>(rng() % 500);
      const bool v = classify(g, d).retract_rational;
      CHECK(classify(g, d + n).retract_rational == v);
      CHECK(classify(g, gcd_long(d, n)).retract_rational == v);
      CHECK(classify(g, d * (n + 1)).retract_rational == v);
      bool conj = true;
      for (const auto& [p, a] : factorize(gcd_long(d, n))) {
        long pa = 1;
        for (int i = 0; i < a; ++i) pa *= p;
        conj = conj && classify(g, pa).retract_rational;
      }
      CHECK_MESSAGE(conj == v, g->name() << " d=" << d);
    }
  }

  TEST_CASE("a positive verdict forces cyclic subgroups at each prime power") {
    for (const char* spec : kSmallGroups) {
      auto g = parse_group_spec(spec);
      for (long d = 1; d <= g->order(); ++d) {
        if (!classify(g, d).retract_rational) continue;
        for (const auto& [p, a] : factorize(gcd_long(d, g->order()))) {
          long pa = 1;
          for (int i = 0; i < a; ++i) pa *= p;
          CHECK_MESSAGE(all_subgroups_of_order_cyclic(g, pa), spec << " d=" << d << " order " << pa);
        }
      }
    }
  }

  TEST_CASE("classify trace and reductions") {
    auto g = parse_group_spec("C8");
    Verdict v = classify(g, 6);
    CHECK(v.retract_rational);
    CHECK(v.d_reduced == 2);
    REQUIRE(v.sylow.size() == 1);
    CHECK(v.sylow[0].rule == "cyclic");
    Verdict q = classify(parse_group_spec("Q8"), 2);
    CHECK_FALSE(q.retract_rational);
    CHECK(q.sylow[0].rule == "non_dihedral_2group");
    CHECK(classify(parse_group_spec("C3xC3"), 3).sylow[0].rule == "noncyclic_odd");
    CHECK(classify(parse_group_spec("D8"), 4).sylow[0].rule == "dihedral");
    Verdict one = classify(parse_group_spec("D8"), 9);
    CHECK(one.retract_rational);
    CHECK(one.sylow.empty());
    bool noted = false;
    for (const auto& line : one.trace) noted = noted || line.find("stably rational") != std::string::npos;
    CHECK(noted);
    CHECK_THROWS_AS(classify(g, 0), Error);
    CHECK_THROWS_AS(classify(g, -3), Error);
  }

  TEST_CASE("certify on small p-groups") {
    struct Case {
      const char* group;
      long d;
      bool expected;
    };
    for (auto c : {Case{"C2", 1, true}, Case{"C2", 2, true}, Case{"C4", 4, true}, Case{"E2^2", 2, true},
                   Case{"E2^2", 4, false}, Case{"C3", 3, true}, Case{"C4xC2", 2, false}}) {
      auto g = parse_group_spec(c.group);
      Certified cert = certify(g, c.d);
      CHECK_MESSAGE(cert.verdict.retract_rational == c.expected, c.group << " d=" << c.d);
      CHECK(cert.verdict.retract_rational == classify(g, c.d).retract_rational);
      bool has_flasque = false, has_rule = false;
      for (const auto& k : cert.certificates) {
        if (k.kind == CertificateKind::flasque_class_invertible) has_flasque = c.expected;
        if (k.kind == CertificateKind::flasque_class_not_invertible) has_flasque = !c.expected;
        has_rule = has_rule || k.kind == CertificateKind::cyclic_group_rule;
      }
      CHECK(has_flasque);
      CHECK(has_rule);
    }
    Certified c42 = certify(parse_group_spec("C4xC2"), 2);
    bool sha = false;
    for (const auto& k : c42.certificates) sha = sha || k.kind == CertificateKind::sha2_nonzero;
    CHECK(sha);
    CHECK_THROWS_AS(certify(parse_group_spec("S3"), 3), Error);
    CHECK_THROWS_AS(certify(parse_group_spec("C4"), 3), Error);
    CHECK_THROWS_AS(certify(parse_group_spec("C16xC2"), 2), Error);
  }

  TEST_CASE("symmetric groups") {
    const long expected[] = {1, 2, 6, 6, 30, 5};
    for (int n = 1; n <= 6; ++n) CHECK(sigma_symmetric(n) == expected[n - 1]);
    auto rows = sigma_table(6);
    REQUIRE(rows.size() == 6);
    for (const auto& row : rows) {
      CHECK(row.matches);
      long f = 1;
      for (int k = 2; k <= row.n; ++k) f *= k;
      for (long d : row.divisors) CHECK(f % d == 0);
    }
    CHECK(rows[5].divisors.size() == 30);
    CHECK_THROWS_AS(sigma_table(7), Error);
    CHECK_THROWS_AS(sigma_symmetric(0), Error);
  }

  TEST_CASE("cohomology queries") {
    auto g = parse_group_spec("C2");
    CHECK(cohomology_query(g, {"T", 1, 0, -1}).invariants.is_zero());
    CHECK(cohomology_query(g, {"T", 1, -1, -1}).invariants.to_string() == "Z/2");
    CHECK(cohomology_query(g, {"ZdZ", 2, 2, -1}).invariants.to_string() == "Z/2");
    auto q8 = parse_group_spec("Q8");
    CHECK(cohomology_query(q8, {"Td", 2, 1, -1}).invariants == cohomology_query(q8, {"ZdZ", 2, 1, -1}).invariants);
    CHECK(cohomology_query(q8, {"Md", 2, 0, 1}).subgroup != "Q8");
    CHECK_THROWS_AS(cohomology_query(q8, {"X", 2, 0, -1}), Error);
    CHECK_THROWS_AS(cohomology_query(q8, {"T", 1, 0, 99}), Error);
    CHECK_THROWS_AS(cohomology_query(q8, {"Td", 0, 0, -1}), Error);
  }

  TEST_CASE("JSON output is canonical and round-trips") {
    auto g = parse_group_spec("Q8");
    Certified c = certify(g, 2);
    std::string a = verdict_json(c.verdict, c.certificates);
    CHECK(a == verdict_json(certify(g, 2).verdict, certify(g, 2).certificates));
    auto j = nlohmann::json::parse(a);
    CHECK(j.dump(2) + "\n" == a);
    CHECK(j["group"] == "Q8");
    CHECK(j["retract_rational"] == false);
    CHECK(j["d_reduced"] == 2);
    CHECK(j["certificates"].is_array());
    auto s = nlohmann::json::parse(sigma_table_json(sigma_table(4)));
    CHECK(s["rows"].size() == 4);
    CHECK(s["rows"][3]["sigma"] == 6);
    auto inv = nlohmann::json::parse(invariants_json(sha2_cyclic_coefficients(g, 2)));
    CHECK(inv["free_rank"] == 0);
    CHECK(inv["torsion"] == nlohmann::json::array({"2", "2"}));
    SweepReport rep = consistency_sweep(4);
    CHECK(rep.consistent());
    auto sw = nlohmann::json::parse(sweep_json(rep, false));
    CHECK(sw["cells"].size() == rep.cells.size());
    CHECK_FALSE(sw["cells"][0].contains("milliseconds"));
  }

  TEST_CASE("resolution summary") {
    ResolutionSummary s = resolution_summary(parse_group_spec("C4"), 2, true);
    CHECK(s.verified);
    CHECK(s.m_rank == 4);
    CHECK(s.p_rank == s.n_rank + s.m_rank);
    CHECK(s.subgroups == 3);
  }
}
