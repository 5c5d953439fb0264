// Command-line frontend. Links only the C API; results arrive as JSON and are
// either passed through (--json) or rendered as text.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <memory>
#include <string>

#include "torsor/torsor.h"

namespace {

using json = nlohmann::json;

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;
constexpr int kFailure = 3;

struct GroupDeleter {
  void operator()(torsor_group* g) const { torsor_group_free(g); }
};
using GroupHandle = std::unique_ptr<torsor_group, GroupDeleter>;

struct Failure {
  int exit_code;
  std::string message;
};

[[noreturn]] void raise(torsor_status s) {
  std::string msg = std::string(torsor_status_name(s)) + ": " + torsor_last_error();
  bool usage = s == TORSOR_INVALID_ARGUMENT || s == TORSOR_PARSE_ERROR;
  throw Failure{usage ? kUsage : kFailure, msg};
}

void check(torsor_status s) {
  if (s != TORSOR_OK) raise(s);
}

std::string take(char* s) {
  std::string out = s ? s : "";
  torsor_string_free(s);
  return out;
}

GroupHandle open_group(const std::string& spec) {
  torsor_group* g = nullptr;
  check(torsor_group_parse(spec.c_str(), &g));
  return GroupHandle(g);
}

std::string text_of(const json& inv) { return inv.at("text").get<std::string>(); }

void print_verdict(const json& v) {
  std::cout << "group: " << v["group"].get<std::string>() << "\n";
  std::cout << "d: " << v["d"] << "\n";
  std::cout << "d_reduced: " << v["d_reduced"] << "\n";
  std::cout << "retract_rational: " << (v["retract_rational"].get<bool>() ? "true" : "false") << "\n";
  for (const auto& s : v["sylow"])
    std::cout << "sylow p=" << s["p"] << " a=" << s["a"] << " kind=" << s["kind"].get<std::string>()
              << " rule=" << s["rule"].get<std::string>() << " ok=" << (s["ok"].get<bool>() ? "true" : "false")
              << "\n";
  std::cout << "trace:\n";
  for (const auto& line : v["trace"]) std::cout << "  " << line.get<std::string>() << "\n";
  if (!v["certificates"].empty()) {
    std::cout << "certificates:\n";
    for (const auto& c : v["certificates"]) {
      std::cout << "  " << c["kind"].get<std::string>() << ": " << c["summary"].get<std::string>();
      for (const auto& [k, val] : c["payload"].items()) std::cout << " " << k << "=" << val.get<std::string>();
      std::cout << "\n";
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Retract rationality of torsion subgroups of norm-one tori"};
  app.require_subcommand(1);

  std::string group;
  long d = 1;
  bool as_json = false;
  bool verify = false;
  bool timings = false;
  std::string module;
  int degree = 0;
  int subgroup = -1;
  int max_order = 8;
  int n_max = 6;

  const CLI::Validator positive(
      [](std::string& s) -> std::string {
        try {
          std::size_t used = 0;
          long v = std::stol(s, &used);
          if (used == s.size() && v >= 1) return {};
        } catch (const std::exception&) {
        }
        return "must be an integer >= 1, got " + s;
      },
      "INT>=1");
  auto add_group = [&](CLI::App* sub) { sub->add_option("--group", group, "group spec")->required(); };
  auto add_d = [&](CLI::App* sub) {
    sub->add_option("--d", d, "torsion order d >= 1")->required()->check(positive);
  };
  auto add_json = [&](CLI::App* sub) { sub->add_flag("--json", as_json, "emit JSON"); };

  auto* classify = app.add_subcommand("classify", "verdict by the Sylow case analysis");
  add_group(classify);
  add_d(classify);
  add_json(classify);

  auto* certify = app.add_subcommand("certify", "oracle verdict from the flasque class");
  add_group(certify);
  add_d(certify);
  add_json(certify);

  auto* cohomology = app.add_subcommand("cohomology", "Tate cohomology of a norm-one lattice or Z/d");
  add_group(cohomology);
  cohomology->add_option("--module", module, "T, Td, Md or ZdZ")
      ->required()
      ->check(CLI::IsMember({"T", "Td", "Md", "ZdZ"}));
  cohomology->add_option("--d", d, "torsion order d >= 1")->check(positive);
  cohomology->add_option("--degree", degree, "-1, 0, 1 or 2")->required()->check(CLI::Range(-1, 2));
  cohomology->add_option("--subgroup", subgroup, "index into the subgroup list")->check(CLI::NonNegativeNumber);
  add_json(cohomology);

  auto* sha = app.add_subcommand("sha2", "Sha^2(G, Z/d)");
  add_group(sha);
  add_d(sha);
  add_json(sha);

  auto* resolution = app.add_subcommand("resolution", "coflasque resolution of M_d");
  add_group(resolution);
  add_d(resolution);
  resolution->add_flag("--verify", verify, "re-check exactness and the coflasque kernel");
  add_json(resolution);

  auto* period = app.add_subcommand("period", "period of the norm-one torus");
  add_group(period);
  period->add_flag("--verify", verify, "re-derive the period from extension classes");
  add_json(period);

  auto* sweep = app.add_subcommand("sweep", "classify against certify over built-in p-groups");
  sweep->add_option("--max-order", max_order, "largest group order")->required()->check(positive);
  sweep->add_flag("--timings", timings, "include per-cell timings");
  add_json(sweep);

  auto* sigma = app.add_subcommand("sigma-table", "sigma(n) for symmetric groups");
  sigma->add_option("--n-max", n_max, "largest n (<= 6)")->required()->check(CLI::Range(1, 6));
  add_json(sigma);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    check(torsor_apply_guard_environment(nullptr));
    int code = kOk;
    std::string out;
    if (*classify || *certify) {
      auto g = open_group(group);
      char* js = nullptr;
      check(*classify ? torsor_classify(g.get(), d, nullptr, &js) : torsor_certify(g.get(), d, nullptr, &js));
      out = take(js);
      if (!as_json) print_verdict(json::parse(out));
    } else if (*cohomology) {
      auto g = open_group(group);
      char* js = nullptr;
      check(torsor_cohomology(g.get(), module.c_str(), d, degree, subgroup, &js));
      out = take(js);
      if (!as_json) {
        auto j = json::parse(out);
        std::cout << "H^" << degree << "(" << j["subgroup"].get<std::string>() << ", " << module
                  << (module == "T" ? "" : " d=" + std::to_string(d)) << ") = " << text_of(j["invariants"]) << "\n";
      }
    } else if (*sha) {
      auto g = open_group(group);
      char* js = nullptr;
      check(torsor_sha2(g.get(), d, nullptr, &js));
      out = take(js);
      if (!as_json) {
        auto j = json::parse(out);
        std::cout << "Sha^2(" << j["group"].get<std::string>() << ", Z/" << d << ") = " << text_of(j["sha2"]) << "\n";
      }
    } else if (*resolution) {
      auto g = open_group(group);
      char* js = nullptr;
      check(torsor_resolution(g.get(), d, verify ? 1 : 0, &js));
      out = take(js);
      if (!as_json) {
        auto j = json::parse(out);
        std::cout << "0 -> N_d -> P_d -> M_d -> 0 for " << j["group"].get<std::string>() << ", d = " << d << "\n"
                  << "rank P_d: " << j["p_rank"] << "\nrank N_d: " << j["n_rank"] << "\nrank M_d: " << j["m_rank"]
                  << "\nsubgroups: " << j["subgroups"]
                  << "\nverified: " << (j["verified"].get<bool>() ? "true" : "false") << "\n";
      }
    } else if (*period) {
      auto g = open_group(group);
      char* js = nullptr;
      long p = 0;
      check(torsor_period(g.get(), verify ? 1 : 0, &p, &js));
      out = take(js);
      if (!as_json) std::cout << p << "\n";
    } else if (*sweep) {
      char* js = nullptr;
      int consistent = 0;
      check(torsor_sweep(max_order, timings ? 1 : 0, &consistent, &js));
      out = take(js);
      if (!consistent) code = kMismatch;
      if (!as_json) {
        auto j = json::parse(out);
        for (const auto& c : j["cells"]) {
          std::cout << c["group"].get<std::string>() << " d=" << c["d"]
                    << " classify=" << (c["classify"].get<bool>() ? "true" : "false")
                    << " certify=" << (c["certify"].get<bool>() ? "true" : "false")
                    << (c["consistent"].get<bool>() ? "" : " MISMATCH");
          if (c.contains("milliseconds")) std::cout << " " << c["milliseconds"] << "ms";
          std::cout << "\n";
        }
        std::cout << "consistent: " << (consistent ? "true" : "false") << "\n";
      }
    } else if (*sigma) {
      char* js = nullptr;
      int all = 0;
      check(torsor_sigma_table(n_max, &all, &js));
      out = take(js);
      if (!all) code = kMismatch;
      if (!as_json) {
        auto j = json::parse(out);
        for (const auto& row : j["rows"]) {
          std::cout << "n=" << row["n"] << " sigma=" << row["sigma"] << " retract rational for d in {";
          bool first = true;
          for (const auto& v : row["verdicts"])
            if (v["retract_rational"].get<bool>()) {
              std::cout << (first ? "" : ", ") << v["d"];
              first = false;
            }
          std::cout << "} " << (row["matches"].get<bool>() ? "matches d | sigma" : "MISMATCH") << "\n";
        }
      }
    }
    if (as_json) std::cout << out;
    return code;
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
}
