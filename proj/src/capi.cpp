#include "redundalloc/redundalloc.h"

#include <cstring>
#include <string>

#include "redundalloc/costs.hpp"
#include "redundalloc/errors.hpp"
#include "redundalloc/oracle.hpp"
#include "redundalloc/reliability.hpp"
#include "redundalloc/runspec.hpp"

struct rda_session {
  rda::RunSpec spec;
};

namespace {

thread_local std::string g_last_error;

rda_status status_of(const rda::Error& e) {
  return rda::errc_is_validation(e.code()) ? RDA_ERR_VALIDATION
                                           : RDA_ERR_NUMERIC;
}

template <typename F>
rda_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return RDA_OK;
  } catch (const rda::Error& e) {
    g_last_error = e.what();
    return e.code() == rda::errc::io_error ? RDA_ERR_IO : status_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return RDA_ERR_VALIDATION;
  }
}

char* copy_out(const std::string& text) {
  char* out = new char[text.size() + 1];
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

std::vector<int> v_of(const rda_session* s, const int* v, size_t len) {
  if (v == nullptr || len == 0)
    return std::vector<int>(s->spec.model.types(), 0);
  return std::vector<int>(v, v + len);
}

rda::CostAccounting accounting_of(rda_accounting a) {
  return a == RDA_ACCOUNTING_REFERENCE ? rda::CostAccounting::reference
                                       : rda::CostAccounting::consistent;
}

bool check_handle(const rda_session* s) {
  if (s != nullptr) return true;
  g_last_error = "null session handle";
  return false;
}

}  // namespace

extern "C" {

const char* rda_version(void) { return "0.1.0"; }

const char* rda_last_error(void) { return g_last_error.c_str(); }

void rda_string_free(char* text) { delete[] text; }

rda_status rda_session_create(const char* spec_json, rda_session** out) {
  if (spec_json == nullptr || out == nullptr) {
    g_last_error = "null argument";
    return RDA_ERR_VALIDATION;
  }
  *out = nullptr;
  return guarded([&] { *out = new rda_session{rda::parse_spec(spec_json)}; });
}

rda_status rda_session_create_file(const char* path, rda_session** out) {
  if (path == nullptr || out == nullptr) {
    g_last_error = "null argument";
    return RDA_ERR_VALIDATION;
  }
  *out = nullptr;
  return guarded(
      [&] { *out = new rda_session{rda::parse_spec_file(path)}; });
}

void rda_session_free(rda_session* session) { delete session; }

int rda_types(const rda_session* session) {
  return session ? session->spec.model.types() : -1;
}

rda_status rda_run(rda_session* session, const char* command,
                   const char* options_json, char** out_text) {
  if (!check_handle(session)) return RDA_ERR_BAD_HANDLE;
  if (command == nullptr || out_text == nullptr) {
    g_last_error = "null argument";
    return RDA_ERR_VALIDATION;
  }
  *out_text = nullptr;
  return guarded([&] {
    *out_text = copy_out(rda::run_command(
        session->spec, command, options_json ? options_json : ""));
  });
}

rda_status rda_reliability(rda_session* session, double t, double* out) {
  if (!check_handle(session)) return RDA_ERR_BAD_HANDLE;
  return guarded(
      [&] { *out = rda::system_reliability(session->spec.model, t); });
}

rda_status rda_redundant_reliability(rda_session* session, const int* v,
                                     size_t len, double t, double* out) {
  if (!check_handle(session)) return RDA_ERR_BAD_HANDLE;
  return guarded([&] {
    *out = rda::redundant_reliability(session->spec.model,
                                      v_of(session, v, len), t);
  });
}

rda_status rda_mttf(rda_session* session, const int* v, size_t len,
                    double* out) {
  if (!check_handle(session)) return RDA_ERR_BAD_HANDLE;
  return guarded(
      [&] { *out = rda::mttf(session->spec.model, v_of(session, v, len)); });
}

rda_status rda_expected_failed(rda_session* session, int type_index_1based,
                               double* out) {
  if (!check_handle(session)) return RDA_ERR_BAD_HANDLE;
  return guarded([&] {
    const auto& model = session->spec.model;
    const int i = type_index_1based - 1;
    *out = model.copula.is_independence()
               ? rda::expected_failed_at_failure_indep(model, i)
               : rda::expected_failed_at_failure(model, i);
  });
}

rda_status rda_cost1(rda_session* session, const int* v, size_t len,
                     double* out) {
  if (!check_handle(session)) return RDA_ERR_BAD_HANDLE;
  return guarded([&] {
    *out = rda::cost1(session->spec.model, session->spec.costs,
                      v_of(session, v, len));
  });
}

rda_status rda_cost2(rda_session* session, const int* v, size_t len,
                     double tau, rda_accounting accounting, double* out) {
  if (!check_handle(session)) return RDA_ERR_BAD_HANDLE;
  return guarded([&] {
    *out = rda::cost2(session->spec.model, session->spec.costs,
                      v_of(session, v, len), tau, accounting_of(accounting));
  });
}

rda_status rda_cost3(rda_session* session, double* out) {
  if (!check_handle(session)) return RDA_ERR_BAD_HANDLE;
  return guarded(
      [&] { *out = rda::cost3(session->spec.model, session->spec.costs); });
}

rda_status rda_cost4(rda_session* session, double tau,
                     rda_accounting accounting, double* out) {
  if (!check_handle(session)) return RDA_ERR_BAD_HANDLE;
  return guarded([&] {
    *out = rda::cost4(session->spec.model, session->spec.costs, tau,
                      accounting_of(accounting));
  });
}

rda_status rda_simulate_cost1(rda_session* session, const int* v, size_t len,
                              long samples, uint64_t seed, double* mean,
                              double* std_error) {
  if (!check_handle(session)) return RDA_ERR_BAD_HANDLE;
  return guarded([&] {
    rda::SimulationConfig config;
    config.samples = samples;
    config.seed = seed;
    auto est = rda::simulate_cost1(session->spec.model, session->spec.costs,
                                   v_of(session, v, len), config);
    *mean = est.mean;
    *std_error = est.std_error;
  });
}

}  // extern "C"
