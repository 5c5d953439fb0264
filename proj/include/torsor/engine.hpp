#pragma once

#include <string>
#include <vector>

#include "torsor/finite_group.hpp"
#include "torsor/linalg.hpp"

namespace torsor {

struct SylowStep {
  long p = 0;
  int a = 0;  // exponent of p in d_reduced
  GroupKind kind = GroupKind::other;
  std::string rule;
  bool ok = true;
};

struct Verdict {
  std::string group;
  long d = 1;
  long d_reduced = 1;
  std::vector<SylowStep> sylow;
  bool retract_rational = true;
  std::vector<std::string> trace;
};

enum class CertificateKind { sha2_nonzero, flasque_class_invertible, flasque_class_not_invertible, cyclic_group_rule };
const char* certificate_kind_name(CertificateKind k);

struct Certificate {
  CertificateKind kind;
  std::string summary;
  // Flat key/value payload, serialized with sorted keys.
  std::vector<std::pair<std::string, std::string>> payload;
};

/// Retract rationality of BT[d] by the Sylow case analysis. Pure and cheap.
Verdict classify(const GroupPtr& g, long d);

struct Certified {
  Verdict verdict;
  std::vector<Certificate> certificates;
};

/// Oracle verdict: the flasque class of the norm-one torus's d-torsion is
/// tested for invertibility directly. Requires a p-group within the
/// cohomology guard and d dividing |G|.
Certified certify(const GroupPtr& g, long d);

/// sigma(n) for the symmetric group S_n.
long sigma_symmetric(int n);

struct SigmaRow {
  int n = 0;
  long sigma = 0;
  std::vector<long> divisors;   // every d dividing n!
  std::vector<bool> verdicts;   // classify(S_n, d)
  bool matches = true;          // verdict == (d | sigma) throughout
};

std::vector<SigmaRow> sigma_table(int n_max);

struct SweepCell {
  std::string group;
  long d = 0;
  bool classified = false;
  bool certified = false;
  double seconds = 0;
};

struct SweepReport {
  int max_order = 0;
  std::vector<SweepCell> cells;
  bool consistent() const;
};

/// classify against certify on every built-in p-group of order <= max_order
/// and every d dividing |G|.
SweepReport consistency_sweep(int max_order);

/// Module selectors used by the cohomology query: T, Td, Md, ZdZ.
struct CohomologyQuery {
  std::string module;
  long d = 1;
  int degree = 0;
  int subgroup = -1;  // index into all_subgroups, -1 for G itself
};

struct CohomologyAnswer {
  std::string subgroup;
  AbelianInvariants invariants;
};

CohomologyAnswer cohomology_query(const GroupPtr& g, const CohomologyQuery& q);

/// Sha^2(G, Z/d).
AbelianInvariants sha2_cyclic_coefficients(const GroupPtr& g, long d);

struct ResolutionSummary {
  std::size_t p_rank = 0;
  std::size_t n_rank = 0;
  std::size_t m_rank = 0;
  std::size_t subgroups = 0;
  bool verified = false;  // exactness and coflasque kernel re-checked
};

ResolutionSummary resolution_summary(const GroupPtr& g, long d, bool verify);

}  // namespace torsor
