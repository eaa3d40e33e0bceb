// Command-line front end for the phasestar engine.  All numerics go through
// the shared-library C API; this file only handles flags, config files and
// output placement.
//
// Exit codes: 0 success, 1 tolerance violation, 2 config error, 3 numeric
// route error (non-convergence, truncation, divergent transform).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "phasestar.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitTolerance = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

int exit_code_for(ps_status st) {
  switch (st) {
    case PS_OK:
      return kExitOk;
    case PS_ERR_INVALID_ARGUMENT:
    case PS_ERR_PARSE:
      return kExitConfig;
    default:
      return kExitNumeric;
  }
}

// temp + rename so partially written outputs are never observed
void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp);
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

struct StringGuard {
  char* s = nullptr;
  ~StringGuard() { ps_string_free(s); }
  std::string str() const { return s ? std::string(s) : std::string(); }
};

struct CommonFlags {
  std::string config_path;
  std::string hamiltonian_json;
  std::string hamiltonian_file;
  std::vector<double> alpha_i, alpha_f, gamma;
  std::optional<double> total_time, tolerance, series_tol, s_order, window,
      rule_scale;
  std::optional<int> fock_dim, max_order, rule_nodes, slices, grid_points;
  std::vector<int> slice_list;
  std::vector<std::string> routes;
  bool symbolic = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path,
                  "JSON config file; overrides flags");
  cmd->add_option("--hamiltonian", f.hamiltonian_json,
                  "inline symbol JSON [[m,n,re,im],...]");
  cmd->add_option("--hamiltonian-file", f.hamiltonian_file,
                  "file with symbol JSON");
  cmd->add_option("--alpha-i", f.alpha_i, "initial label RE IM")
      ->expected(2);
  cmd->add_option("--alpha-f", f.alpha_f, "final label RE IM")->expected(2);
  cmd->add_option("--gamma", f.gamma, "state label RE IM")->expected(2);
  cmd->add_option("-T,--time", f.total_time, "total time");
  cmd->add_option("--tolerance", f.tolerance, "route agreement tolerance");
  cmd->add_option("--series-tol", f.series_tol, "star series tolerance");
  cmd->add_option("--s", f.s_order, "ordering parameter s");
  cmd->add_option("--window", f.window, "grid half-width");
  cmd->add_option("--fock-dim", f.fock_dim, "basis size (0 = auto)");
  cmd->add_option("--max-order", f.max_order, "star series order cap");
  cmd->add_option("--rule-nodes", f.rule_nodes, "quadrature nodes per axis");
  cmd->add_option("--rule-scale", f.rule_scale, "quadrature Gaussian scale");
  cmd->add_option("--grid-points", f.grid_points, "output grid points per axis");
  cmd->add_option("--slices", f.slices, "time slices N");
  cmd->add_option("--n-list", f.slice_list, "slice counts for studies");
  cmd->add_option("--routes", f.routes,
                  "subset of star, oracle, sliced, optical");
  cmd->add_flag("--symbolic", f.symbolic,
                "qdist: emit the symbolic delta-pair record");
}

// defaults < flags < config file
json build_config(const CommonFlags& f) {
  json cfg = json::object();
  auto read_file = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };

  if (!f.hamiltonian_json.empty())
    cfg["hamiltonian"] = json::parse(f.hamiltonian_json);
  if (!f.hamiltonian_file.empty())
    cfg["hamiltonian"] = json::parse(read_file(f.hamiltonian_file));
  if (f.alpha_i.size() == 2) cfg["alpha_i"] = f.alpha_i;
  if (f.alpha_f.size() == 2) cfg["alpha_f"] = f.alpha_f;
  if (f.gamma.size() == 2) cfg["gamma"] = f.gamma;
  if (f.total_time) cfg["T"] = *f.total_time;
  if (f.tolerance) cfg["tolerance"] = *f.tolerance;
  if (f.series_tol) cfg["series_tol"] = *f.series_tol;
  if (f.s_order) cfg["s"] = *f.s_order;
  if (f.window) cfg["window"] = *f.window;
  if (f.fock_dim) cfg["fock_dim"] = *f.fock_dim;
  if (f.max_order) cfg["max_order"] = *f.max_order;
  if (f.rule_nodes) cfg["rule_nodes"] = *f.rule_nodes;
  if (f.rule_scale) cfg["rule_scale"] = *f.rule_scale;
  if (f.slices) cfg["slices"] = *f.slices;
  if (!f.slice_list.empty()) cfg["N_list"] = f.slice_list;
  if (!f.routes.empty()) cfg["routes"] = f.routes;
  if (f.symbolic) cfg["symbolic"] = true;

  if (!f.config_path.empty()) {
    const json file_cfg = json::parse(read_file(f.config_path));
    if (!file_cfg.is_object())
      throw std::runtime_error("config file must hold a JSON object");
    for (const auto& [key, value] : file_cfg.items()) cfg[key] = value;
  }
  return cfg;
}

int fail(ps_status st) {
  std::cerr << "error: " << ps_last_error() << "\n";
  return exit_code_for(st);
}

int cmd_amplitude(const CommonFlags& flags, const std::string& out_path) {
  const std::string cfg = build_config(flags).dump();
  StringGuard report;
  const ps_status st = ps_run_amplitude(cfg.c_str(), &report.s);
  if (st != PS_OK) return fail(st);

  const json rep = json::parse(report.str());
  if (!out_path.empty()) write_atomic(out_path, report.str());

  std::cout << "amplitude routes:\n";
  for (const auto& [name, body] : rep["routes"].items()) {
    const auto& v = body["value"];
    std::printf("  %-8s %+.12e %+.12e i\n", name.c_str(),
                v[0].get<double>(), v[1].get<double>());
  }
  std::printf("max relative error: %.3e (tolerance %.3e)\n",
              rep["max_relative_error"].get<double>(),
              rep["config"]["tolerance"].get<double>());
  const bool ok = rep["within_tolerance"].get<bool>();
  std::cout << (ok ? "within tolerance\n" : "TOLERANCE VIOLATION\n");
  return ok ? kExitOk : kExitTolerance;
}

int cmd_convergence(const CommonFlags& flags, const std::string& csv_path,
                    const std::string& out_path) {
  const std::string cfg = build_config(flags).dump();
  StringGuard csv, sidecar;
  const ps_status st = ps_run_convergence(cfg.c_str(), &csv.s, &sidecar.s);
  if (st != PS_OK) return fail(st);

  if (!csv_path.empty()) write_atomic(csv_path, csv.str());
  if (!out_path.empty()) write_atomic(out_path, sidecar.str());

  const json side = json::parse(sidecar.str());
  if (side["exact"].get<bool>()) {
    std::cout << "errors at rounding floor; slope fit skipped (exact)\n";
    return kExitOk;
  }
  const double slope = side["slope"].get<double>();
  std::printf("fitted slope: %.4f\n", slope);
  const bool ok = side["slope_ok"].get<bool>();
  std::cout << (ok ? "slope within [0.9, 1.1]\n" : "SLOPE OUT OF RANGE\n");
  return ok ? kExitOk : kExitTolerance;
}

int cmd_qdist(const CommonFlags& flags, const std::string& csv_path,
              const std::string& out_path, const std::string& state_path) {
  const json cfg_json = build_config(flags);
  const std::string cfg = cfg_json.dump();
  StringGuard csv, sidecar;
  const ps_status st = ps_run_qdist(cfg.c_str(), &csv.s, &sidecar.s);
  if (st != PS_OK) return fail(st);

  if (!state_path.empty()) {
    // debug dump of the truncated state the distribution was built from
    double g_re = 0.0, g_im = 0.0;
    if (cfg_json.contains("gamma")) {
      g_re = cfg_json["gamma"][0].get<double>();
      g_im = cfg_json["gamma"][1].get<double>();
    }
    const json side = json::parse(sidecar.str());
    const int dim = side.contains("fock_dim") ? side["fock_dim"].get<int>() : 32;
    StringGuard state;
    if (const ps_status vs =
            ps_coherent_vector_json(g_re, g_im, dim, &state.s);
        vs != PS_OK)
      return fail(vs);
    write_atomic(state_path, state.str() + "\n");
  }

  if (!csv_path.empty() && !csv.str().empty())
    write_atomic(csv_path, csv.str());
  if (!out_path.empty()) write_atomic(out_path, sidecar.str());

  const json side = json::parse(sidecar.str());
  if (side.contains("normalization_residual"))
    std::printf("normalization residual: %.3e\n",
                side["normalization_residual"].get<double>());
  if (side.contains("delta_pair")) std::cout << "symbolic record written\n";
  return kExitOk;
}

int cmd_star_product(const std::string& left, const std::string& right,
                     const std::string& out_path, int fock_dim,
                     const std::string& fock_out,
                     const std::vector<double>& at) {
  auto load = [](const std::string& source) {
    std::string text = source;
    if (!source.empty() && source[0] != '[') {
      std::ifstream in(source, std::ios::binary);
      if (!in) throw std::runtime_error("cannot read " + source);
      text.assign(std::istreambuf_iterator<char>(in), {});
    }
    ps_symbol* s = nullptr;
    const ps_status st = ps_symbol_parse(text.c_str(), &s);
    if (st != PS_OK) throw ps_status(st);
    return s;
  };

  ps_symbol* a = nullptr;
  ps_symbol* b = nullptr;
  ps_symbol* prod = nullptr;
  try {
    a = load(left);
    b = load(right);
    if (const ps_status st = ps_symbol_star(a, b, &prod); st != PS_OK)
      throw st;

    StringGuard prod_json;
    if (const ps_status st = ps_symbol_to_json(prod, &prod_json.s);
        st != PS_OK)
      throw st;
    if (!out_path.empty()) write_atomic(out_path, prod_json.str() + "\n");
    std::cout << prod_json.str() << "\n";

    if (at.size() == 2) {
      double re = 0.0, im = 0.0;
      if (const ps_status st = ps_symbol_evaluate(prod, at[0], at[1], at[0],
                                                  -at[1], &re, &im);
          st != PS_OK)
        throw st;
      std::printf("value at (%g, %g): %+.12e %+.12e i\n", at[0], at[1], re,
                  im);
    }
    if (fock_dim > 0) {
      StringGuard mat;
      if (const ps_status st =
              ps_symbol_fock_matrix_json(prod, fock_dim, &mat.s);
          st != PS_OK)
        throw st;
      if (!fock_out.empty()) write_atomic(fock_out, mat.str() + "\n");
      else std::cout << mat.str() << "\n";
    }
  } catch (ps_status st) {
    ps_symbol_free(a);
    ps_symbol_free(b);
    ps_symbol_free(prod);
    return fail(st);
  }
  ps_symbol_free(a);
  ps_symbol_free(b);
  ps_symbol_free(prod);
  return kExitOk;
}

int cmd_selftest(const std::string& out_path) {
  StringGuard report, summary;
  int all_passed = 0;
  const ps_status st = ps_run_selftest(&report.s, &summary.s, &all_passed);
  if (st != PS_OK) return fail(st);
  std::cout << summary.str();
  if (!out_path.empty()) write_atomic(out_path, report.str());
  std::cout << (all_passed ? "selftest: all criteria passed\n"
                           : "selftest: FAILURES\n");
  return all_passed ? kExitOk : kExitTolerance;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"phase-space engine: star products, star exponentials, "
               "coherent-state amplitudes and quasi-probability transforms"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string out_path, csv_path;

  auto* amplitude = app.add_subcommand(
      "amplitude", "transition amplitude by the requested routes");
  add_common_flags(amplitude, flags);
  amplitude->add_option("--out", out_path, "report JSON path");

  auto* convergence = app.add_subcommand(
      "convergence", "slice-count refinement study against the exact evolution");
  add_common_flags(convergence, flags);
  convergence->add_option("--csv", csv_path, "points CSV path");
  convergence->add_option("--out", out_path, "sidecar JSON path");

  auto* qdist = app.add_subcommand(
      "qdist", "quasi-probability distribution on a grid");
  add_common_flags(qdist, flags);
  std::string state_path;
  qdist->add_option("--csv", csv_path, "grid CSV path");
  qdist->add_option("--out", out_path, "sidecar JSON path");
  qdist->add_option("--dump-state", state_path,
                    "write the truncated state vector JSON");

  std::string left, right, fock_out;
  int fock_dim = 0;
  std::vector<double> at;
  auto* star = app.add_subcommand("star-product",
                                  "star product of two symbols");
  star->add_option("--left", left, "symbol JSON or file")->required();
  star->add_option("--right", right, "symbol JSON or file")->required();
  star->add_option("--out", out_path, "product symbol JSON path");
  star->add_option("--fock-dim", fock_dim, "also emit the number-basis matrix");
  star->add_option("--fock-out", fock_out, "matrix JSON path");
  star->add_option("--at", at, "evaluate at alpha = RE IM")->expected(2);

  auto* selftest = app.add_subcommand(
      "selftest", "run the verification battery");
  selftest->add_option("--out", out_path, "report JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (app.got_subcommand(amplitude)) return cmd_amplitude(flags, out_path);
    if (app.got_subcommand(convergence))
      return cmd_convergence(flags, csv_path, out_path);
    if (app.got_subcommand(qdist))
      return cmd_qdist(flags, csv_path, out_path, state_path);
    if (app.got_subcommand(star))
      return cmd_star_product(left, right, out_path, fock_dim, fock_out, at);
    if (app.got_subcommand(selftest)) return cmd_selftest(out_path);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
