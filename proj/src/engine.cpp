#include "torsor/engine.hpp"

#include <chrono>

#include "torsor/cohomology.hpp"
#include "torsor/config.hpp"
#include "torsor/errors.hpp"
#include "torsor/group_library.hpp"
#include "torsor/resolutions.hpp"

namespace torsor {

namespace {

void require_positive_d(long d, const char* what) {
  if (d < 1) fail(ErrorCode::invalid_argument, std::string(what) + ": d must be >= 1, got " + std::to_string(d));
}

std::vector<long> divisors(long n) {
  std::vector<long> out;
  for (long k = 1; k <= n; ++k)
    if (n % k == 0) out.push_back(k);
  return out;
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

long factorial(int n) {
  long f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

SylowStep apply_rule(long p, int a, GroupKind kind) {
  SylowStep s{p, a, kind, "", true};
  if (kind == GroupKind::cyclic) {
    s.rule = "cyclic";
  } else if (p != 2) {
    s.rule = "noncyclic_odd";
    s.ok = false;
  } else if (kind == GroupKind::dihedral) {
    s.rule = "dihedral";
    s.ok = a < 2;
  } else {
    s.rule = "non_dihedral_2group";
    s.ok = false;
  }
  return s;
}

std::string describe_step(const SylowStep& s, int sylow_order) {
  std::string head = "p = " + std::to_string(s.p) + ": p-part " + std::to_string(s.p) + "^" + std::to_string(s.a) +
                     ", Sylow subgroup of order " + std::to_string(sylow_order) + " is " + kind_name(s.kind);
  std::string why;
  if (s.rule == "cyclic")
    why = "cyclic Sylow subgroup, retract rational for every torsion";
  else if (s.rule == "noncyclic_odd")
    why = "non-cyclic Sylow subgroup at an odd prime dividing d_reduced, not retract rational";
  else if (s.rule == "dihedral")
    why = s.ok ? "dihedral 2-group and 4 does not divide the 2-part, retract rational"
               : "dihedral 2-group and 4 divides the 2-part, not retract rational";
  else
    why = "2-group neither cyclic nor dihedral with even 2-part, not retract rational";
  return head + "; rule " + s.rule + ": " + why;
}

}  // namespace

const char* certificate_kind_name(CertificateKind k) {
  switch (k) {
    case CertificateKind::sha2_nonzero: return "sha2_nonzero";
    case CertificateKind::flasque_class_invertible: return "flasque_class_invertible";
    case CertificateKind::flasque_class_not_invertible: return "flasque_class_not_invertible";
    case CertificateKind::cyclic_group_rule: return "cyclic_group_rule";
  }
  return "unknown";
}

Verdict classify(const GroupPtr& g, long d) {
  require_positive_d(d, "classify");
  const long n = g->order();
  Verdict v;
  v.group = g->name();
  v.d = d;
  v.d_reduced = gcd_long(d, n);
  v.trace.push_back("e(T) = |G| = " + std::to_string(n));
  v.trace.push_back("d_reduced = gcd(" + std::to_string(d) + ", " + std::to_string(n) + ") = " +
                    std::to_string(v.d_reduced));
  if (v.d_reduced == 1) {
    v.trace.push_back("d_reduced = 1: trivial torsion, retract rational");
  } else {
    for (const auto& [p, a] : factorize(v.d_reduced)) {
      Subgroup sylow = sylow_subgroup(g, static_cast<int>(p));
      SylowStep step = apply_rule(p, a, recognize(sylow));
      v.trace.push_back(describe_step(step, sylow.order()));
      v.retract_rational = v.retract_rational && step.ok;
      v.sylow.push_back(step);
    }
    v.trace.push_back(std::string("conjunction over primes: ") +
                      (v.retract_rational ? "retract rational" : "not retract rational"));
  }
  if (n > 1 && ((d - 1) % n == 0 || (d + 1) % n == 0))
    v.trace.push_back("note: d = +-1 mod |G|, BT[d] is stably rational");
  if (n > 1 && d % n == 0) v.trace.push_back("note: |G| divides d, BT[d] is stably birational to T x BT");
  return v;
}

Certified certify(const GroupPtr& g, long d) {
  require_positive_d(d, "certify");
  const long n = g->order();
  auto base = prime_power_base(n);
  if (!base) fail(ErrorCode::invalid_argument, "certify: " + g->name() + " is not a p-group");
  if (n % d != 0) fail(ErrorCode::invalid_argument, "certify: d = " + std::to_string(d) + " does not divide |G|");
  require_cohomology_guard(static_cast<int>(n), "certify");

  Certified out;
  Verdict& v = out.verdict;
  v.group = g->name();
  v.d = d;
  v.d_reduced = d;
  FlasqueClass fc = flasque_class_norm_one(g, d, true);
  v.trace.push_back("coflasque resolution 0 -> N_d -> P_d -> M_d -> 0 with rank P_d = " +
                    std::to_string(fc.provenance.middle.rank()) + ", rank N_d = " +
                    std::to_string(fc.provenance.left.rank()) + ", N_d coflasque verified");
  v.trace.push_back("flasque class dual(N_d) of rank " + std::to_string(fc.lattice.rank()));
  InvertibilityResult inv = is_invertible(fc.lattice);
  v.trace.push_back("permutation cover of rank " + std::to_string(inv.cover.middle.rank()) + ": flasque class " +
                    (inv.invertible ? "is a direct summand (invertible)" : "is not a direct summand"));
  v.retract_rational = inv.invertible;
  int a = 0;
  for (long t = d; t > 1; t /= *base) ++a;
  SylowStep step{*base, a, recognize(*g), "flasque_invertibility", inv.invertible};
  v.sylow.push_back(step);

  if (inv.invertible) {
    ensure((inv.cover.surject.matrix * inv.splitting).is_identity(), "certify: splitting does not compose to 1");
    out.certificates.push_back({CertificateKind::flasque_class_invertible,
                                "equivariant splitting of the permutation cover, surject o splitting = 1 verified",
                                {{"cover_rank", std::to_string(inv.cover.middle.rank())},
                                 {"flasque_rank", std::to_string(fc.lattice.rank())},
                                 {"splitting_nonzeros", std::to_string(inv.splitting.nnz())}}});
  } else {
    out.certificates.push_back({CertificateKind::flasque_class_not_invertible,
                                "identity of the flasque class is not in the image of the cover's Hom system",
                                {{"cover_rank", std::to_string(inv.cover.middle.rank())},
                                 {"flasque_rank", std::to_string(fc.lattice.rank())},
                                 {"prime", std::to_string(*base)}}});
  }
  if (d > 1) {
    AbelianInvariants sha = sha2(trivial_cyclic_module(g, d)).invariants;
    if (!sha.is_zero()) {
      ensure(!inv.invertible, "certify: Sha^2 is nonzero but the flasque class is invertible");
      out.certificates.push_back({CertificateKind::sha2_nonzero, "Sha^2(G, Z/d) is nonzero",
                                  {{"sha2", sha.to_string()}}});
      v.trace.push_back("Sha^2(G, Z/" + std::to_string(d) + ") = " + sha.to_string());
    }
  }
  std::size_t count = 0;
  bool all_cyclic = true;
  for (const auto& h : all_subgroups(g))
    if (h.order() == d) {
      ++count;
      all_cyclic = all_cyclic && recognize(h) == GroupKind::cyclic;
    }
  ensure(!inv.invertible || all_cyclic, "certify: invertible flasque class with a non-cyclic subgroup of order d");
  out.certificates.push_back({CertificateKind::cyclic_group_rule, "subgroups of order d",
                              {{"all_cyclic", yes_no(all_cyclic)}, {"count", std::to_string(count)}}});
  return out;
}

long sigma_symmetric(int n) {
  if (n < 1) fail(ErrorCode::invalid_argument, "sigma: n must be >= 1");
  static const long small[] = {1, 2, 6, 6, 30};
  if (n <= 5) return small[n - 1];
  long s = 1;
  for (long p = n / 2 + 1; p <= n; ++p)
    if (is_prime(p)) s *= p;
  return s;
}

std::vector<SigmaRow> sigma_table(int n_max) {
  if (n_max < 1 || n_max > 6) fail(ErrorCode::invalid_argument, "sigma-table: n_max must be in 1..6");
  std::vector<SigmaRow> rows;
  for (int n = 1; n <= n_max; ++n) {
    SigmaRow row;
    row.n = n;
    row.sigma = sigma_symmetric(n);
    GroupPtr sn = symmetric_group(n);
    for (long d : divisors(factorial(n))) {
      bool rr = classify(sn, d).retract_rational;
      row.divisors.push_back(d);
      row.verdicts.push_back(rr);
      row.matches = row.matches && rr == (row.sigma % d == 0);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

bool SweepReport::consistent() const {
  for (const auto& c : cells)
    if (c.classified != c.certified) return false;
  return true;
}

SweepReport consistency_sweep(int max_order) {
  SweepReport rep;
  rep.max_order = max_order;
  for (const auto& spec : builtin_p_group_specs()) {
    GroupPtr g = parse_group_spec(spec);
    if (g->order() > max_order) continue;
    for (long d : divisors(g->order())) {
      auto start = std::chrono::steady_clock::now();
      SweepCell cell{spec, d, classify(g, d).retract_rational, certify(g, d).verdict.retract_rational, 0};
      cell.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      rep.cells.push_back(cell);
    }
  }
  return rep;
}

CohomologyAnswer cohomology_query(const GroupPtr& g, const CohomologyQuery& q) {
  Subgroup h = whole_group(g);
  if (q.subgroup >= 0) {
    auto subs = all_subgroups(g);
    if (static_cast<std::size_t>(q.subgroup) >= subs.size())
      fail(ErrorCode::invalid_argument, "subgroup index " + std::to_string(q.subgroup) + " out of range (G has " +
                                            std::to_string(subs.size()) + " subgroups)");
    h = subs[q.subgroup];
  }
  CohomologyAnswer ans;
  ans.subgroup = q.subgroup >= 0 ? h.describe() : g->name();
  if (q.module == "T") {
    ans.invariants = tate_h(h, norm_one_lattice(g), q.degree).invariants;
  } else if (q.module == "Td") {
    require_positive_d(q.d, "cohomology");
    ans.invariants = tate_h(h, t_hat_d(g, q.d).lattice, q.degree).invariants;
  } else if (q.module == "Md") {
    require_positive_d(q.d, "cohomology");
    ans.invariants = tate_h(h, m_d(g, q.d).lattice, q.degree).invariants;
  } else if (q.module == "ZdZ") {
    require_positive_d(q.d, "cohomology");
    ans.invariants = tate_h(h, trivial_cyclic_module(g, q.d), q.degree).invariants;
  } else {
    fail(ErrorCode::invalid_argument, "unknown module '" + q.module + "' (expected T, Td, Md or ZdZ)");
  }
  return ans;
}

AbelianInvariants sha2_cyclic_coefficients(const GroupPtr& g, long d) {
  require_positive_d(d, "sha2");
  return sha2(trivial_cyclic_module(g, d)).invariants;
}

ResolutionSummary resolution_summary(const GroupPtr& g, long d, bool verify) {
  CoflasqueResolution res = coflasque_resolution_md(g, d, verify);
  if (verify) res.ses.validate();
  return {res.ses.middle.rank(), res.ses.left.rank(), res.ses.right.rank(), res.subgroups.size(), verify};
}

}  // namespace torsor
