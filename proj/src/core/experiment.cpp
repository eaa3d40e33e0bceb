#include "core/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>

#include "core/quasiprob.hpp"

namespace phasestar::experiment {

namespace {

cxd parse_complex(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    raise(ErrorCode::ParseError,
          std::string(what) + ": expected a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

json dump_complex(cxd z) { return json::array({z.real(), z.imag()}); }

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    raise(ErrorCode::ParseError, std::string("config: bad JSON: ") + e.what());
  }
  if (!j.is_object()) raise(ErrorCode::ParseError, "config: expected an object");

  ExperimentConfig cfg;
  try {
    if (j.contains("hamiltonian"))
      cfg.hamiltonian = NormalSymbol::from_json(j["hamiltonian"].dump());
    if (j.contains("alpha_i")) cfg.alpha_i = parse_complex(j["alpha_i"], "alpha_i");
    if (j.contains("alpha_f")) cfg.alpha_f = parse_complex(j["alpha_f"], "alpha_f");
    if (j.contains("T")) cfg.total_time = j["T"].get<double>();
    if (j.contains("routes"))
      cfg.routes = j["routes"].get<std::vector<std::string>>();
    if (j.contains("tolerance")) cfg.tolerance = j["tolerance"].get<double>();
    if (j.contains("fock_dim")) cfg.fock_dim = j["fock_dim"].get<int>();
    if (j.contains("max_order")) cfg.max_order = j["max_order"].get<int>();
    if (j.contains("series_tol")) cfg.series_tol = j["series_tol"].get<double>();
    if (j.contains("ref_radius")) cfg.ref_radius = j["ref_radius"].get<double>();
    if (j.contains("rule_nodes")) cfg.rule_nodes = j["rule_nodes"].get<int>();
    if (j.contains("rule_scale")) cfg.rule_scale = j["rule_scale"].get<double>();
    if (j.contains("slices")) cfg.slices = j["slices"].get<int>();
    if (j.contains("N_list"))
      cfg.slice_list = j["N_list"].get<std::vector<int>>();
    if (j.contains("s")) cfg.s_order = j["s"].get<double>();
    if (j.contains("gamma")) cfg.gamma = parse_complex(j["gamma"], "gamma");
    if (j.contains("window")) cfg.window = j["window"].get<double>();
    if (j.contains("grid_points")) cfg.grid_points = j["grid_points"].get<int>();
    if (j.contains("symbolic")) cfg.symbolic = j["symbolic"].get<bool>();
  } catch (const json::exception& e) {
    raise(ErrorCode::ParseError, std::string("config: ") + e.what());
  }

  static const std::set<std::string> known_routes = {"star", "oracle", "sliced",
                                                     "optical"};
  if (cfg.routes.empty())
    raise(ErrorCode::InvalidArgument, "config: routes must be nonempty");
  for (const auto& r : cfg.routes)
    if (!known_routes.count(r))
      raise(ErrorCode::InvalidArgument, "config: unknown route '" + r + "'");
  if (!(cfg.tolerance > 0.0))
    raise(ErrorCode::InvalidArgument, "config: tolerance must be positive");
  if (cfg.fock_dim < 0)
    raise(ErrorCode::InvalidArgument, "config: fock_dim must be >= 0");
  if (cfg.max_order < 1)
    raise(ErrorCode::InvalidArgument, "config: max_order must be positive");
  if (!(cfg.series_tol > 0.0))
    raise(ErrorCode::InvalidArgument, "config: series_tol must be positive");
  if (!(cfg.ref_radius > 0.0))
    raise(ErrorCode::InvalidArgument, "config: ref_radius must be positive");
  if (cfg.rule_nodes < 2)
    raise(ErrorCode::InvalidArgument, "config: rule_nodes must be >= 2");
  if (!(cfg.rule_scale >= 0.0))
    raise(ErrorCode::InvalidArgument,
          "config: rule_scale must be positive (or 0 for automatic)");
  if (cfg.slices < 1)
    raise(ErrorCode::InvalidArgument, "config: slices must be >= 1");
  for (int n : cfg.slice_list)
    if (n < 1) raise(ErrorCode::InvalidArgument, "config: N_list entries must be >= 1");
  if (cfg.grid_points < 2)
    raise(ErrorCode::InvalidArgument, "config: grid_points must be >= 2");
  if (!(cfg.window > 0.0))
    raise(ErrorCode::InvalidArgument, "config: window must be positive");
  return cfg;
}

json ExperimentConfig::echo() const {
  json j;
  j["hamiltonian"] = json::parse(hamiltonian.to_json());
  j["alpha_i"] = dump_complex(alpha_i);
  j["alpha_f"] = dump_complex(alpha_f);
  j["T"] = total_time;
  j["routes"] = routes;
  j["tolerance"] = tolerance;
  j["fock_dim"] = fock_dim;
  j["max_order"] = max_order;
  j["series_tol"] = series_tol;
  j["ref_radius"] = ref_radius;
  j["rule_nodes"] = rule_nodes;
  j["rule_scale"] = rule_scale;
  j["slices"] = slices;
  j["N_list"] = slice_list;
  j["s"] = s_order;
  j["gamma"] = dump_complex(gamma);
  j["window"] = window;
  j["grid_points"] = grid_points;
  j["symbolic"] = symbolic;
  return j;
}

std::string run_amplitude(const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();

  pathint::SliceConfig sc{cfg.slices, cfg.total_time, cfg.alpha_i, cfg.alpha_f};
  pathint::CompareParams params;
  auto has = [&](const char* r) {
    return std::find(cfg.routes.begin(), cfg.routes.end(), r) !=
           cfg.routes.end();
  };
  params.want_star = has("star");
  params.want_oracle = has("oracle");
  params.want_sliced = has("sliced");
  params.want_optical = has("optical");
  params.fock_dim = cfg.fock_dim;
  params.series.max_order = cfg.max_order;
  params.series.tol = cfg.series_tol;
  params.series.ref_radius = cfg.ref_radius;
  params.rule_nodes = cfg.rule_nodes;

  const pathint::AmplitudeReport rep = pathint::compare_all(sc, cfg.hamiltonian, params);
  if ((params.want_star || params.want_optical) && !rep.series_converged)
    raise(ErrorCode::NonConvergence,
          "star route: series tolerance not reached by max_order");

  json routes = json::object();
  auto put = [&](const char* name, const std::optional<cxd>& v) {
    if (v) routes[name] = {{"value", dump_complex(*v)}};
  };
  put("star", rep.star_value);
  put("oracle", rep.oracle_value);
  put("sliced", rep.sliced_value);
  put("optical", rep.optical_value);
  if (rep.star_value || rep.optical_value) {
    json series = {{"order", rep.series_order},
                   {"tail_estimate", rep.tail_estimate},
                   {"converged", rep.series_converged},
                   {"splits", rep.series_splits}};
    if (rep.star_value) routes["star"]["series"] = series;
    if (rep.optical_value) routes["optical"]["series"] = series;
  }
  if (rep.oracle_value) routes["oracle"]["fock_dim"] = rep.fock_dim;
  if (rep.sliced_value) {
    routes["sliced"]["slices"] = rep.slices;
    routes["sliced"]["rule_nodes"] = rep.rule_nodes;
  }

  json errors = json::object();
  std::vector<std::pair<std::string, cxd>> vals;
  if (rep.star_value) vals.emplace_back("star", *rep.star_value);
  if (rep.oracle_value) vals.emplace_back("oracle", *rep.oracle_value);
  if (rep.sliced_value) vals.emplace_back("sliced", *rep.sliced_value);
  if (rep.optical_value) vals.emplace_back("optical", *rep.optical_value);
  double worst = 0.0;
  for (std::size_t i = 0; i < vals.size(); ++i)
    for (std::size_t k = i + 1; k < vals.size(); ++k) {
      const double e =
          pathint::AmplitudeReport::relative_error(vals[i].second, vals[k].second);
      errors[vals[i].first + "_vs_" + vals[k].first] = e;
      worst = std::max(worst, e);
    }

  json report;
  report["config"] = cfg.echo();
  report["routes"] = routes;
  report["errors"] = errors;
  report["max_relative_error"] = worst;
  report["within_tolerance"] = worst <= cfg.tolerance;
  report["timing_ms"] = elapsed_ms(t0);
  return report.dump(2) + "\n";
}

double fit_loglog_slope(const std::vector<double>& eps,
                        const std::vector<double>& err) {
  const std::size_t n = eps.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(eps[i]);
    const double y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ConvergenceOutput run_convergence(const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  if (cfg.slice_list.size() < 3)
    raise(ErrorCode::InvalidArgument,
          "convergence: N_list needs at least 3 entries");

  const int dim = cfg.fock_dim > 0
                      ? cfg.fock_dim
                      : pathint::auto_fock_dim(
                            {1, cfg.total_time, cfg.alpha_i, cfg.alpha_f},
                            cfg.hamiltonian);
  const fock::Matrix hm = fock::from_symbol(cfg.hamiltonian, dim);
  const fock::Matrix u = fock::evolve(hm, cfg.total_time);
  const cxd ref = fock::matrix_element(cfg.alpha_f, u, cfg.alpha_i);

  const int needed = int(cfg.hamiltonian.degree_alpha() +
                         cfg.hamiltonian.degree_alpha_star()) /
                         2 +
                     4;
  const ComplexPlaneRule rule =
      gauss_hermite_rule(std::max(cfg.rule_nodes, needed), 1.0);

  std::string csv = "N,epsilon,abs_error,rel_error\n";
  std::vector<double> eps_list, err_list;
  json points = json::array();
  for (int n : cfg.slice_list) {
    pathint::SliceConfig sc{n, cfg.total_time, cfg.alpha_i, cfg.alpha_f};
    const cxd val = pathint::sliced_amplitude(sc, cfg.hamiltonian, rule);
    const double abs_err = std::abs(val - ref);
    const double rel_err = abs_err / std::max(std::abs(ref), 1e-300);
    eps_list.push_back(sc.epsilon());
    err_list.push_back(abs_err);
    csv += std::to_string(n) + "," + format_double(sc.epsilon()) + "," +
           format_double(abs_err) + "," + format_double(rel_err) + "\n";
    points.push_back({n, sc.epsilon(), abs_err, rel_err});
  }

  // At the rounding floor the slope carries no information; flag and skip.
  const double floor_scale = 1e-12 * std::max(std::abs(ref), 1.0);
  const bool exact = *std::max_element(err_list.begin(), err_list.end()) <=
                     floor_scale;
  json sidecar;
  sidecar["config"] = cfg.echo();
  sidecar["reference"] = dump_complex(ref);
  sidecar["points"] = points;
  sidecar["exact"] = exact;
  if (exact) {
    sidecar["slope"] = nullptr;
    sidecar["slope_ok"] = true;
  } else {
    const double slope = fit_loglog_slope(eps_list, err_list);
    sidecar["slope"] = slope;
    sidecar["slope_ok"] = slope >= 0.9 && slope <= 1.1;
  }
  sidecar["timing_ms"] = elapsed_ms(t0);
  return {csv, sidecar.dump(2) + "\n"};
}

QdistOutput run_qdist(const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();

  if (cfg.symbolic) {
    // Symbolic normal-order weight of |alpha_i><alpha_f|.
    const auto pair = quasi::p_nondiagonal(cfg.alpha_i, cfg.alpha_f);
    json sidecar;
    sidecar["config"] = cfg.echo();
    sidecar["delta_pair"] = json::parse(pair.to_json());
    sidecar["timing_ms"] = elapsed_ms(t0);
    return {"", sidecar.dump(2) + "\n"};
  }

  const int dim = cfg.fock_dim > 0 ? cfg.fock_dim
                                   : fock::default_dim(std::abs(cfg.gamma));
  const fock::Vector v = fock::coherent_vector(cfg.gamma, dim);
  const fock::Matrix rho = v * v.adjoint();

  const quasi::QuasiTransform transform(rho, quasi::SOrder(cfg.s_order),
                                        cfg.rule_nodes, cfg.rule_scale);

  std::string csv = "re_alpha,im_alpha,value,imag_residual\n";
  double max_imag = 0.0;
  const int np = cfg.grid_points;
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < np; ++j) {
      const double re = -cfg.window + 2.0 * cfg.window * i / (np - 1);
      const double im = -cfg.window + 2.0 * cfg.window * j / (np - 1);
      const cxd f = transform(cxd(re, im));
      max_imag = std::max(max_imag, std::abs(f.imag()));
      csv += format_double(re) + "," + format_double(im) + "," +
             format_double(f.real()) + "," + format_double(f.imag()) + "\n";
    }

  const cxd norm = transform.normalization(cfg.rule_nodes);
  json sidecar;
  sidecar["config"] = cfg.echo();
  sidecar["fock_dim"] = dim;
  sidecar["normalization"] = dump_complex(norm);
  sidecar["normalization_residual"] = std::abs(norm - cxd(1.0, 0.0));
  sidecar["max_imag_residual"] = max_imag;
  sidecar["timing_ms"] = elapsed_ms(t0);
  return {csv, sidecar.dump(2) + "\n"};
}

std::string strip_timing(const std::string& report_json) {
  json j = json::parse(report_json);
  j.erase("timing_ms");
  return j.dump(2) + "\n";
}

}  // namespace phasestar::experiment
