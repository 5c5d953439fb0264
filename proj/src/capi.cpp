#include "torsor/torsor.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "torsor/config.hpp"
#include "torsor/engine.hpp"
#include "torsor/errors.hpp"
#include "torsor/group_library.hpp"
#include "torsor/serialize.hpp"

struct torsor_group {
  torsor::GroupPtr group;
};

namespace {

thread_local std::string last_error;

torsor_status status_of(torsor::ErrorCode c) {
  switch (c) {
    case torsor::ErrorCode::invalid_argument: return TORSOR_INVALID_ARGUMENT;
    case torsor::ErrorCode::parse: return TORSOR_PARSE_ERROR;
    case torsor::ErrorCode::guard: return TORSOR_GUARD_EXCEEDED;
    case torsor::ErrorCode::verification: return TORSOR_VERIFICATION_FAILED;
    case torsor::ErrorCode::mismatch: return TORSOR_MISMATCH;
  }
  return TORSOR_INTERNAL_ERROR;
}

template <class F>
torsor_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return TORSOR_OK;
  } catch (const torsor::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return TORSOR_INTERNAL_ERROR;
  } catch (const std::invalid_argument& e) {
    last_error = e.what();
    return TORSOR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    last_error = e.what();
    return TORSOR_INTERNAL_ERROR;
  } catch (...) {
    last_error = "unknown error";
    return TORSOR_INTERNAL_ERROR;
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(bool ok, const char* what) {
  if (!ok) torsor::fail(torsor::ErrorCode::invalid_argument, what);
}

const torsor::GroupPtr& group_of(const torsor_group* g) {
  require(g != nullptr && g->group != nullptr, "null group handle");
  return g->group;
}

void emit(char** out, const std::string& s) {
  if (out) *out = copy_string(s);
}

}  // namespace

extern "C" {

const char* torsor_last_error(void) { return last_error.c_str(); }

const char* torsor_status_name(torsor_status s) {
  switch (s) {
    case TORSOR_OK: return "ok";
    case TORSOR_INVALID_ARGUMENT: return "invalid_argument";
    case TORSOR_PARSE_ERROR: return "parse_error";
    case TORSOR_GUARD_EXCEEDED: return "guard_exceeded";
    case TORSOR_VERIFICATION_FAILED: return "verification_failed";
    case TORSOR_MISMATCH: return "mismatch";
    case TORSOR_INTERNAL_ERROR: return "internal_error";
  }
  return "unknown";
}

void torsor_string_free(char* s) { std::free(s); }

torsor_status torsor_apply_guard_environment(int* applied) {
  return guarded([&] {
    bool a = torsor::apply_guard_environment();
    if (applied) *applied = a ? 1 : 0;
  });
}

torsor_status torsor_set_max_order(int order) {
  return guarded([&] {
    require(order >= 1, "max order must be >= 1");
    torsor::set_guards({order, order});
  });
}

torsor_status torsor_group_parse(const char* spec, torsor_group** out) {
  return guarded([&] {
    require(spec != nullptr && out != nullptr, "null argument");
    *out = nullptr;
    auto g = torsor::parse_group_spec(spec);
    *out = new torsor_group{std::move(g)};
  });
}

void torsor_group_free(torsor_group* g) { delete g; }

torsor_status torsor_group_order(const torsor_group* g, int* order) {
  return guarded([&] {
    require(order != nullptr, "null argument");
    *order = group_of(g)->order();
  });
}

torsor_status torsor_group_name(const torsor_group* g, char** name) {
  return guarded([&] {
    require(name != nullptr, "null argument");
    *name = copy_string(group_of(g)->name());
  });
}

torsor_status torsor_classify(const torsor_group* g, long d, int* retract_rational, char** json) {
  return guarded([&] {
    auto v = torsor::classify(group_of(g), d);
    if (retract_rational) *retract_rational = v.retract_rational ? 1 : 0;
    emit(json, torsor::verdict_json(v));
  });
}

torsor_status torsor_certify(const torsor_group* g, long d, int* retract_rational, char** json) {
  return guarded([&] {
    auto c = torsor::certify(group_of(g), d);
    if (retract_rational) *retract_rational = c.verdict.retract_rational ? 1 : 0;
    emit(json, torsor::verdict_json(c.verdict, c.certificates));
  });
}

torsor_status torsor_cohomology(const torsor_group* g, const char* module, long d, int degree, int subgroup,
                                char** json) {
  return guarded([&] {
    require(module != nullptr, "null module");
    torsor::CohomologyQuery q{module, d, degree, subgroup};
    auto a = torsor::cohomology_query(group_of(g), q);
    emit(json, torsor::cohomology_json(group_of(g)->name(), q, a));
  });
}

torsor_status torsor_sha2(const torsor_group* g, long d, int* nonzero, char** json) {
  return guarded([&] {
    auto inv = torsor::sha2_cyclic_coefficients(group_of(g), d);
    if (nonzero) *nonzero = inv.is_zero() ? 0 : 1;
    emit(json, torsor::sha2_json(group_of(g)->name(), d, inv));
  });
}

torsor_status torsor_resolution(const torsor_group* g, long d, int verify, char** json) {
  return guarded([&] {
    auto s = torsor::resolution_summary(group_of(g), d, verify != 0);
    emit(json, torsor::resolution_json(group_of(g)->name(), d, s));
  });
}

torsor_status torsor_period(const torsor_group* g, int verify, long* period, char** json) {
  return guarded([&] {
    auto p = torsor::period_norm_one(group_of(g), verify != 0);
    if (period) *period = p.period;
    emit(json, torsor::period_json(group_of(g)->name(), p, verify != 0));
  });
}

torsor_status torsor_sweep(int max_order, int timings, int* consistent, char** json) {
  return guarded([&] {
    auto r = torsor::consistency_sweep(max_order);
    if (consistent) *consistent = r.consistent() ? 1 : 0;
    emit(json, torsor::sweep_json(r, timings != 0));
  });
}

torsor_status torsor_sigma_table(int n_max, int* all_match, char** json) {
  return guarded([&] {
    auto rows = torsor::sigma_table(n_max);
    bool ok = true;
    for (const auto& r : rows) ok = ok && r.matches;
    if (all_match) *all_match = ok ? 1 : 0;
    emit(json, torsor::sigma_table_json(rows));
  });
}

}  // extern "C"
