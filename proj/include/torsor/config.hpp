#pragma once

#include <string>

namespace torsor {

/// Size guards. The environment variable TORSOR_MAX_ORDER overrides both
/// (read by the CLI; library callers use set_guards).
struct Guards {
  int subgroup_enumeration = 64;  // max |G| for all_subgroups
  int cohomology = 16;            // max |H| for degree-2 cohomology, Sha and lattice oracles
};

Guards current_guards();
void set_guards(const Guards& g);

/// Applies TORSOR_MAX_ORDER when set; returns true if it was present.
bool apply_guard_environment();

/// Throws Error(guard) naming the guard and the override when order exceeds it.
void require_cohomology_guard(int order, const std::string& what);

}  // namespace torsor
