#pragma once

#include <string>
#include <vector>

#include "torsor/engine.hpp"
#include "torsor/resolutions.hpp"

namespace torsor {

// Canonical JSON: sorted keys, integers and strings only, two-space indent.
std::string verdict_json(const Verdict& v, const std::vector<Certificate>& certificates = {});
std::string sweep_json(const SweepReport& r, bool timings);
std::string sigma_table_json(const std::vector<SigmaRow>& rows);
std::string invariants_json(const AbelianInvariants& inv);
std::string cohomology_json(const std::string& group, const CohomologyQuery& q, const CohomologyAnswer& a);
std::string sha2_json(const std::string& group, long d, const AbelianInvariants& inv);
std::string resolution_json(const std::string& group, long d, const ResolutionSummary& s);
std::string period_json(const std::string& group, const PeriodReport& p, bool verified);

}  // namespace torsor
