#include "phasestar.h"

#include <chrono>
#include <cstring>
#include <string>

#include "core/errors.hpp"
#include "core/experiment.hpp"
#include "core/fock.hpp"
#include "core/normal_symbol.hpp"
#include "core/selftest.hpp"

using phasestar::cxd;
using phasestar::Error;
using phasestar::ErrorCode;
using phasestar::NormalSymbol;

struct ps_symbol {
  NormalSymbol value;
};

namespace {

thread_local std::string g_last_error;

ps_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
      return PS_ERR_INVALID_ARGUMENT;
    case ErrorCode::ParseError:
      return PS_ERR_PARSE;
    case ErrorCode::DimensionTooSmall:
      return PS_ERR_DIMENSION_TOO_SMALL;
    case ErrorCode::TruncationTooCoarse:
      return PS_ERR_TRUNCATION_TOO_COARSE;
    case ErrorCode::NonConvergence:
      return PS_ERR_NON_CONVERGENCE;
    case ErrorCode::DivergentTransform:
      return PS_ERR_DIVERGENT_TRANSFORM;
    case ErrorCode::InadmissibleTestFunction:
      return PS_ERR_INADMISSIBLE_TEST_FUNCTION;
    case ErrorCode::Internal:
      return PS_ERR_INTERNAL;
  }
  return PS_ERR_INTERNAL;
}

template <class F>
ps_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return PS_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PS_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return PS_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

ps_status require(bool cond, const char* msg) {
  if (cond) return PS_OK;
  g_last_error = msg;
  return PS_ERR_INVALID_ARGUMENT;
}

}  // namespace

extern "C" {

const char* ps_last_error(void) { return g_last_error.c_str(); }

void ps_string_free(char* s) { delete[] s; }

void ps_symbol_free(ps_symbol* s) { delete s; }

ps_status ps_symbol_create(ps_symbol** out) {
  if (auto st = require(out, "ps_symbol_create: out is null")) return st;
  return guarded([&] { *out = new ps_symbol{}; });
}

ps_status ps_symbol_parse(const char* json, ps_symbol** out) {
  if (auto st = require(json && out, "ps_symbol_parse: null argument"))
    return st;
  return guarded([&] { *out = new ps_symbol{NormalSymbol::from_json(json)}; });
}

ps_status ps_symbol_to_json(const ps_symbol* s, char** json_out) {
  if (auto st = require(s && json_out, "ps_symbol_to_json: null argument"))
    return st;
  return guarded([&] { *json_out = dup_string(s->value.to_json()); });
}

ps_status ps_symbol_add_term(ps_symbol* s, unsigned m, unsigned n, double re,
                             double im) {
  if (auto st = require(s, "ps_symbol_add_term: null symbol")) return st;
  return guarded([&] { s->value.add_term(m, n, cxd(re, im)); });
}

ps_status ps_symbol_add(const ps_symbol* a, const ps_symbol* b,
                        ps_symbol** out) {
  if (auto st = require(a && b && out, "ps_symbol_add: null argument"))
    return st;
  return guarded([&] { *out = new ps_symbol{a->value + b->value}; });
}

ps_status ps_symbol_star(const ps_symbol* a, const ps_symbol* b,
                         ps_symbol** out) {
  if (auto st = require(a && b && out, "ps_symbol_star: null argument"))
    return st;
  return guarded(
      [&] { *out = new ps_symbol{star_multiply(a->value, b->value)}; });
}

ps_status ps_symbol_star_commutator(const ps_symbol* a, const ps_symbol* b,
                                    ps_symbol** out) {
  if (auto st =
          require(a && b && out, "ps_symbol_star_commutator: null argument"))
    return st;
  return guarded(
      [&] { *out = new ps_symbol{star_commutator(a->value, b->value)}; });
}

ps_status ps_symbol_evaluate(const ps_symbol* s, double a_re, double a_im,
                             double astar_re, double astar_im, double* out_re,
                             double* out_im) {
  if (auto st = require(s && out_re && out_im,
                        "ps_symbol_evaluate: null argument"))
    return st;
  return guarded([&] {
    const cxd v = s->value.evaluate(cxd(a_re, a_im), cxd(astar_re, astar_im));
    *out_re = v.real();
    *out_im = v.imag();
  });
}

ps_status ps_symbol_star_exp(const ps_symbol* h, double z_re, double z_im,
                             int max_order, double tol, ps_symbol** out,
                             int* order_out, double* tail_out,
                             int* converged_out) {
  if (auto st = require(h && out, "ps_symbol_star_exp: null argument"))
    return st;
  return guarded([&] {
    phasestar::StarSeriesOptions opt;
    opt.max_order = max_order;
    opt.tol = tol;
    const phasestar::StarSeries series =
        star_exponential(h->value, cxd(z_re, z_im), opt);
    *out = new ps_symbol{series.value};
    if (order_out) *order_out = series.order;
    if (tail_out) *tail_out = series.tail_estimate;
    if (converged_out) *converged_out = series.converged ? 1 : 0;
  });
}

ps_status ps_symbol_fock_matrix_json(const ps_symbol* s, int dim,
                                     char** json_out) {
  if (auto st = require(s && json_out,
                        "ps_symbol_fock_matrix_json: null argument"))
    return st;
  return guarded([&] {
    const phasestar::fock::Matrix m = phasestar::fock::from_symbol(s->value, dim);
    nlohmann::json entries = nlohmann::json::array();
    for (int r = 0; r < m.rows(); ++r)
      for (int c = 0; c < m.cols(); ++c)
        entries.push_back({m(r, c).real(), m(r, c).imag()});
    nlohmann::json j;
    j["dim"] = dim;
    j["entries"] = entries;
    *json_out = dup_string(j.dump());
  });
}

ps_status ps_coherent_vector_json(double alpha_re, double alpha_im, int dim,
                                  char** json_out) {
  if (auto st = require(json_out, "ps_coherent_vector_json: null argument"))
    return st;
  return guarded([&] {
    const phasestar::fock::Vector v =
        phasestar::fock::coherent_vector(cxd(alpha_re, alpha_im), dim);
    nlohmann::json entries = nlohmann::json::array();
    for (int n = 0; n < v.size(); ++n)
      entries.push_back({v(n).real(), v(n).imag()});
    nlohmann::json j;
    j["dim"] = dim;
    j["entries"] = entries;
    *json_out = dup_string(j.dump());
  });
}

ps_status ps_run_amplitude(const char* config_json, char** report_json_out) {
  if (auto st = require(config_json && report_json_out,
                        "ps_run_amplitude: null argument"))
    return st;
  return guarded([&] {
    const auto cfg =
        phasestar::experiment::ExperimentConfig::from_json_text(config_json);
    *report_json_out = dup_string(phasestar::experiment::run_amplitude(cfg));
  });
}

ps_status ps_run_convergence(const char* config_json, char** csv_out,
                             char** sidecar_json_out) {
  if (auto st = require(config_json && csv_out && sidecar_json_out,
                        "ps_run_convergence: null argument"))
    return st;
  return guarded([&] {
    const auto cfg =
        phasestar::experiment::ExperimentConfig::from_json_text(config_json);
    const auto out = phasestar::experiment::run_convergence(cfg);
    *csv_out = dup_string(out.csv);
    *sidecar_json_out = dup_string(out.sidecar);
  });
}

ps_status ps_run_qdist(const char* config_json, char** csv_out,
                       char** sidecar_json_out) {
  if (auto st = require(config_json && csv_out && sidecar_json_out,
                        "ps_run_qdist: null argument"))
    return st;
  return guarded([&] {
    const auto cfg =
        phasestar::experiment::ExperimentConfig::from_json_text(config_json);
    const auto out = phasestar::experiment::run_qdist(cfg);
    *csv_out = dup_string(out.csv);
    *sidecar_json_out = dup_string(out.sidecar);
  });
}

ps_status ps_run_selftest(char** report_json_out, char** summary_text_out,
                          int* all_passed_out) {
  if (auto st = require(report_json_out && summary_text_out,
                        "ps_run_selftest: null argument"))
    return st;
  return guarded([&] {
    const auto t0 = std::chrono::steady_clock::now();
    const auto results = phasestar::selftest::run_all();
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    *report_json_out = dup_string(
        phasestar::selftest::report_json(results, ms).dump(2) + "\n");
    *summary_text_out =
        dup_string(phasestar::selftest::summary_text(results));
    if (all_passed_out)
      *all_passed_out = phasestar::selftest::all_passed(results) ? 1 : 0;
  });
}

}  // extern "C"
