#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstring>
#include <string>

#include <json.hpp>

#include "phasestar.h"

using nlohmann::json;
using cxd = std::complex<double>;

namespace {

struct Sym {
  ps_symbol* p = nullptr;
  ~Sym() { ps_symbol_free(p); }
};

struct Str {
  char* p = nullptr;
  ~Str() { ps_string_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

cxd eval(const ps_symbol* s, cxd a, cxd astar) {
  double re = 0, im = 0;
  REQUIRE(ps_symbol_evaluate(s, a.real(), a.imag(), astar.real(),
                             astar.imag(), &re, &im) == PS_OK);
  return {re, im};
}

}  // namespace

TEST_CASE("symbol lifecycle and interchange format") {
  Sym s;
  REQUIRE(ps_symbol_create(&s.p) == PS_OK);
  REQUIRE(ps_symbol_add_term(s.p, 1, 1, 1.0, 0.0) == PS_OK);

  Str js;
  REQUIRE(ps_symbol_to_json(s.p, &js.p) == PS_OK);
  CHECK(js.str() == "[[1,1,1.0,0.0]]");

  // duplicates summed on load, order irrelevant
  Sym dup;
  REQUIRE(ps_symbol_parse("[[0,2,0.5,0.0],[1,1,1.0,0.0],[0,2,0.25,0.0]]",
                          &dup.p) == PS_OK);
  CHECK(std::abs(eval(dup.p, cxd(1, 0), cxd(0, 0)) - cxd(0.75, 0.0)) < 1e-15);

  Sym bad;
  CHECK(ps_symbol_parse("[[1,1]]", &bad.p) == PS_ERR_PARSE);
  CHECK(std::strlen(ps_last_error()) > 0);
  CHECK(ps_symbol_parse(nullptr, &bad.p) == PS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("symbol algebra through the C surface") {
  Sym a, ad, sum, prod, comm;
  REQUIRE(ps_symbol_parse("[[0,1,1.0,0.0]]", &a.p) == PS_OK);
  REQUIRE(ps_symbol_parse("[[1,0,1.0,0.0]]", &ad.p) == PS_OK);

  REQUIRE(ps_symbol_add(a.p, ad.p, &sum.p) == PS_OK);
  CHECK(std::abs(eval(sum.p, cxd(0.8, 0), cxd(0.8, 0)) - cxd(1.6, 0)) < 1e-15);

  // a * a+ = a+a + 1
  REQUIRE(ps_symbol_star(a.p, ad.p, &prod.p) == PS_OK);
  const cxd alpha(0.7, -0.4);
  CHECK(std::abs(eval(prod.p, alpha, std::conj(alpha)) -
                 cxd(std::norm(alpha) + 1.0, 0.0)) < 1e-14);

  REQUIRE(ps_symbol_star_commutator(a.p, ad.p, &comm.p) == PS_OK);
  CHECK(eval(comm.p, cxd(0.3, 0.9), cxd(2.0, -1.0)) == cxd(1.0, 0.0));

  // independent-argument evaluation
  Sym num;
  REQUIRE(ps_symbol_parse("[[1,1,1.0,0.0]]", &num.p) == PS_OK);
  CHECK(eval(num.p, cxd(1, 0), cxd(0, 3)) == cxd(0.0, 3.0));
}

TEST_CASE("star exponential through the C surface") {
  Sym num, series;
  REQUIRE(ps_symbol_parse("[[1,1,1.0,0.0]]", &num.p) == PS_OK);
  int order = 0, converged = 0;
  double tail = 0.0;
  REQUIRE(ps_symbol_star_exp(num.p, 0.0, -1.0, 64, 1e-10, &series.p, &order,
                             &tail, &converged) == PS_OK);
  CHECK(converged == 1);
  CHECK(order >= 1);
  const cxd alpha(0.5, 0.5);
  const cxd want =
      std::exp(std::norm(alpha) * (std::exp(cxd(0.0, -1.0)) - cxd(1.0, 0.0)));
  CHECK(std::abs(eval(series.p, alpha, std::conj(alpha)) - want) < 1e-9);
}

TEST_CASE("number-basis dump") {
  Sym x;
  REQUIRE(ps_symbol_parse("[[0,1,1.0,0.0],[1,0,1.0,0.0]]", &x.p) == PS_OK);
  Str mat;
  REQUIRE(ps_symbol_fock_matrix_json(x.p, 3, &mat.p) == PS_OK);
  const json j = json::parse(mat.str());
  CHECK(j["dim"] == 3);
  REQUIRE(j["entries"].size() == 9);
  // row-major [re, im] pairs; entry (1, 2) = sqrt(2)
  CHECK(j["entries"][5][0].get<double>() ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(j["entries"][0][0].get<double>() == 0.0);

  Str bad;
  CHECK(ps_symbol_fock_matrix_json(x.p, 2, &bad.p) ==
        PS_ERR_DIMENSION_TOO_SMALL);

  // coherent state in the same layout
  Str vec;
  REQUIRE(ps_coherent_vector_json(0.0, 0.0, 4, &vec.p) == PS_OK);
  const json vj = json::parse(vec.str());
  CHECK(vj["dim"] == 4);
  REQUIRE(vj["entries"].size() == 4);
  CHECK(vj["entries"][0][0].get<double>() == 1.0);
  CHECK(vj["entries"][1][0].get<double>() == 0.0);

  Str coarse;
  CHECK(ps_coherent_vector_json(6.0, 0.0, 8, &coarse.p) ==
        PS_ERR_TRUNCATION_TOO_COARSE);
}

TEST_CASE("amplitude runner") {
  const std::string cfg = R"({
    "hamiltonian": [[1, 1, 1.0, 0.0]],
    "alpha_i": [0.5, 0.0],
    "alpha_f": [0.0, 0.2],
    "T": 1.0,
    "routes": ["star", "oracle"],
    "tolerance": 1e-8
  })";
  Str report;
  REQUIRE(ps_run_amplitude(cfg.c_str(), &report.p) == PS_OK);
  const json rep = json::parse(report.str());
  CHECK(rep["within_tolerance"].get<bool>());
  CHECK(rep["max_relative_error"].get<double>() <= 1e-8);
  CHECK(rep["config"]["max_order"] == 64);  // defaulted knobs echoed
  CHECK(rep["routes"].contains("star"));
  CHECK(rep["routes"].contains("oracle"));
  CHECK(rep["routes"]["star"]["series"]["converged"].get<bool>());

  // identical configs give identical reports apart from the timing field
  Str again;
  REQUIRE(ps_run_amplitude(cfg.c_str(), &again.p) == PS_OK);
  json a = json::parse(report.str());
  json b = json::parse(again.str());
  a.erase("timing_ms");
  b.erase("timing_ms");
  CHECK(a.dump() == b.dump());
}

TEST_CASE("runner validation and route errors") {
  Str out;
  CHECK(ps_run_amplitude("{ not json", &out.p) == PS_ERR_PARSE);
  CHECK(ps_run_amplitude(R"({"routes": []})", &out.p) ==
        PS_ERR_INVALID_ARGUMENT);
  CHECK(ps_run_amplitude(R"({"routes": ["warp"]})", &out.p) ==
        PS_ERR_INVALID_ARGUMENT);

  // a label far outside a forced tiny basis
  const std::string coarse = R"({
    "alpha_i": [6.0, 0.0],
    "alpha_f": [0.0, 0.2],
    "fock_dim": 8,
    "routes": ["oracle"]
  })";
  CHECK(ps_run_amplitude(coarse.c_str(), &out.p) ==
        PS_ERR_TRUNCATION_TOO_COARSE);

  // star series that cannot converge in the allowed order
  const std::string stuck = R"({
    "routes": ["star"],
    "T": 40.0,
    "max_order": 2
  })";
  CHECK(ps_run_amplitude(stuck.c_str(), &out.p) == PS_ERR_NON_CONVERGENCE);

  Str csv, side;
  CHECK(ps_run_convergence(R"({"N_list": [10, 20]})", &csv.p, &side.p) ==
        PS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("qdist runner") {
  Str csv, side;
  const std::string cfg = R"({
    "s": -1.0,
    "gamma": [0.0, 0.0],
    "rule_nodes": 48,
    "grid_points": 9,
    "window": 2.0
  })";
  REQUIRE(ps_run_qdist(cfg.c_str(), &csv.p, &side.p) == PS_OK);
  CHECK(csv.str().rfind("re_alpha,im_alpha,value,imag_residual\n", 0) == 0);
  const json sj = json::parse(side.str());
  CHECK(sj["normalization_residual"].get<double>() <= 1e-6);
  CHECK(sj["max_imag_residual"].get<double>() <= 1e-10);

  // the grid form of a singular weight is refused
  Str c2, s2;
  CHECK(ps_run_qdist(R"({"s": 1.0})", &c2.p, &s2.p) ==
        PS_ERR_DIVERGENT_TRANSFORM);

  // symbolic record for the non-diagonal weight
  Str c3, s3;
  const std::string sym = R"({"s": 1.0, "symbolic": true,
                              "alpha_i": [0.5, 0.0], "alpha_f": [0.0, 0.2]})";
  REQUIRE(ps_run_qdist(sym.c_str(), &c3.p, &s3.p) == PS_OK);
  const json rec = json::parse(s3.str());
  CHECK(rec["delta_pair"].contains("re_point"));
  CHECK(rec["delta_pair"].contains("prefactor"));
}
