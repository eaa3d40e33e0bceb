#ifndef PHASESTAR_CORE_EXPERIMENT_HPP
#define PHASESTAR_CORE_EXPERIMENT_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "core/normal_symbol.hpp"
#include "core/path_integral.hpp"

namespace phasestar::experiment {

using nlohmann::json;

// Resolved batch-experiment configuration.  Complex scalars travel as
// [re, im] pairs in every external format.
struct ExperimentConfig {
  NormalSymbol hamiltonian = NormalSymbol::number();
  cxd alpha_i{0.5, 0.0};
  cxd alpha_f{0.0, 0.2};
  double total_time = 1.0;
  std::vector<std::string> routes = {"star", "oracle"};
  double tolerance = 1e-6;

  int fock_dim = 0;  // 0 = auto
  int max_order = 64;
  double series_tol = 1e-10;
  double ref_radius = 2.0;
  int rule_nodes = 64;
  double rule_scale = 0.0;  // qdist beta rule; 0 = match the decay for s
  int slices = 8;
  std::vector<int> slice_list = {10, 20, 40, 80};

  double s_order = -1.0;
  cxd gamma{0.0, 0.0};
  double window = 3.0;
  int grid_points = 25;
  bool symbolic = false;  // qdist: emit the delta-pair record instead of a grid

  // Throws ParseError / InvalidArgument on malformed or inconsistent input.
  static ExperimentConfig from_json_text(const std::string& text);
  json echo() const;  // full resolved config, defaulted knobs included
};

// Runners.  Each returns the machine-readable documents as strings; file
// placement is the caller's concern.  Route failures raise Error.
std::string run_amplitude(const ExperimentConfig& cfg);

struct ConvergenceOutput {
  std::string csv;      // N,epsilon,abs_error,rel_error
  std::string sidecar;  // fitted slope + verdict
};
ConvergenceOutput run_convergence(const ExperimentConfig& cfg);

struct QdistOutput {
  std::string csv;      // re_alpha,im_alpha,value,imag_residual
  std::string sidecar;  // normalization residual etc.
};
QdistOutput run_qdist(const ExperimentConfig& cfg);

// Least-squares slope of log(err) against log(eps).
double fit_loglog_slope(const std::vector<double>& eps,
                        const std::vector<double>& err);

// Deterministic float formatting shared by the CSV writers.
std::string format_double(double v);

// Strips the labeled timing field from a report for byte comparisons.
std::string strip_timing(const std::string& report_json);

}  // namespace phasestar::experiment

#endif
