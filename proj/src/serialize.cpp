#include "torsor/serialize.hpp"

#include <json.hpp>

namespace torsor {

namespace {

using json = nlohmann::json;

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json invariants_value(const AbelianInvariants& inv) {
  json torsion = json::array();
  for (const auto& t : inv.torsion) torsion.push_back(t.get_str());
  return {{"free_rank", inv.free_rank}, {"torsion", torsion}, {"text", inv.to_string()}};
}

}  // namespace

std::string verdict_json(const Verdict& v, const std::vector<Certificate>& certificates) {
  json sylow = json::array();
  for (const auto& s : v.sylow)
    sylow.push_back({{"p", s.p}, {"a", s.a}, {"kind", kind_name(s.kind)}, {"rule", s.rule}, {"ok", s.ok}});
  json certs = json::array();
  for (const auto& c : certificates) {
    json payload = json::object();
    for (const auto& [k, val] : c.payload) payload[k] = val;
    certs.push_back({{"kind", certificate_kind_name(c.kind)}, {"summary", c.summary}, {"payload", payload}});
  }
  json j = {{"group", v.group},         {"d", v.d},
            {"d_reduced", v.d_reduced}, {"sylow", sylow},
            {"retract_rational", v.retract_rational},
            {"trace", v.trace},         {"certificates", certs}};
  return dump(j);
}

std::string sweep_json(const SweepReport& r, bool timings) {
  json cells = json::array();
  for (const auto& c : r.cells) {
    json cell = {{"group", c.group}, {"d", c.d}, {"classify", c.classified}, {"certify", c.certified},
                 {"consistent", c.classified == c.certified}};
    // milliseconds, kept integral so the schema has no floats
    if (timings) cell["milliseconds"] = static_cast<long>(c.seconds * 1000.0);
    cells.push_back(cell);
  }
  return dump({{"max_order", r.max_order}, {"cells", cells}, {"consistent", r.consistent()}});
}

std::string sigma_table_json(const std::vector<SigmaRow>& rows) {
  json out = json::array();
  for (const auto& row : rows) {
    json verdicts = json::array();
    for (std::size_t i = 0; i < row.divisors.size(); ++i)
      verdicts.push_back({{"d", row.divisors[i]}, {"retract_rational", static_cast<bool>(row.verdicts[i])}});
    out.push_back({{"n", row.n}, {"sigma", row.sigma}, {"verdicts", verdicts}, {"matches", row.matches}});
  }
  return dump({{"rows", out}});
}

std::string invariants_json(const AbelianInvariants& inv) { return dump(invariants_value(inv)); }

std::string cohomology_json(const std::string& group, const CohomologyQuery& q, const CohomologyAnswer& a) {
  return dump({{"group", group},
               {"module", q.module},
               {"d", q.d},
               {"degree", q.degree},
               {"subgroup", a.subgroup},
               {"invariants", invariants_value(a.invariants)}});
}

std::string sha2_json(const std::string& group, long d, const AbelianInvariants& inv) {
  return dump({{"group", group}, {"d", d}, {"sha2", invariants_value(inv)}, {"nonzero", !inv.is_zero()}});
}

std::string resolution_json(const std::string& group, long d, const ResolutionSummary& s) {
  return dump({{"group", group},
               {"d", d},
               {"p_rank", s.p_rank},
               {"n_rank", s.n_rank},
               {"m_rank", s.m_rank},
               {"subgroups", s.subgroups},
               {"verified", s.verified}});
}

std::string period_json(const std::string& group, const PeriodReport& p, bool verified) {
  json j = {{"group", group}, {"period", p.period}, {"verified", verified}};
  if (verified) {
    j["base_class_order"] = p.base_order;
    j["dual_class_order"] = p.dual_order;
  }
  return dump(j);
}

}  // namespace torsor
