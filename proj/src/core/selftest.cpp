#include "core/selftest.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "core/complex_plane.hpp"
#include "core/experiment.hpp"
#include "core/fock.hpp"
#include "core/normal_symbol.hpp"
#include "core/path_integral.hpp"
#include "core/quasiprob.hpp"

namespace phasestar::selftest {

namespace {

const cxd kI(0.0, 1.0);

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

cxd random_coef(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mag(0.1, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
  const double r = mag(rng), p = phase(rng);
  return {r * std::cos(p), r * std::sin(p)};
}

NormalSymbol random_symbol(std::mt19937_64& rng, unsigned max_degree) {
  std::uniform_int_distribution<int> coin(0, 1);
  NormalSymbol s;
  for (unsigned m = 0; m <= max_degree; ++m)
    for (unsigned n = 0; m + n <= max_degree; ++n)
      if (coin(rng)) s.add_term(m, n, random_coef(rng));
  if (s.is_zero()) s.add_term(0, 0, random_coef(rng));
  return s;
}

cxd random_point(std::mt19937_64& rng, double max_abs) {
  std::uniform_real_distribution<double> mag(0.0, max_abs);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
  const double r = mag(rng), p = phase(rng);
  return {r * std::cos(p), r * std::sin(p)};
}

// Transition amplitude of e^{-iT a+a} between coherent labels, summed
// directly in the number basis.
cxd golden_ho_amplitude(cxd alpha_i, cxd alpha_f, double omega_t) {
  const cxd w = std::conj(alpha_f) * alpha_i * std::exp(-kI * omega_t);
  cxd acc(0.0, 0.0), term(1.0, 0.0);
  for (int n = 1; n <= 200; ++n) {
    acc += term;
    term *= w / double(n);
    if (std::abs(term) < 1e-20 * (std::abs(acc) + 1.0)) break;
  }
  acc += term;
  return std::exp(cxd(-0.5 * (std::norm(alpha_i) + std::norm(alpha_f)), 0.0)) *
         acc;
}

double rel_err(cxd a, cxd b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

const std::vector<cxd> kLabelsI = {cxd(0.5, 0.0), cxd(0.3, 0.4)};
const std::vector<cxd> kLabelsF = {cxd(0.0, 0.2), cxd(-0.5, 0.0)};

CriterionResult criterion_1() {
  CriterionResult r;
  r.id = 1;
  r.name = "star-amplitude-quadratic";
  const NormalSymbol h = NormalSymbol::number();
  StarSeriesOptions opt;
  opt.max_order = 40;
  opt.tol = 1e-10;
  double worst = 0.0;
  for (double t : {0.1, 1.0, M_PI})
    for (cxd ai : kLabelsI)
      for (cxd af : kLabelsF) {
        pathint::SliceConfig cfg{1, t, ai, af};
        const auto res = pathint::star_amplitude(cfg, h, opt);
        worst = std::max(worst, rel_err(res.value, golden_ho_amplitude(ai, af, t)));
      }
  r.passed = worst <= 1e-8;
  r.detail = "max_rel_err=" + fmt(worst) + " (tol 1e-08)";
  r.metrics = {{"max_rel_err", worst}, {"tolerance", 1e-8}};
  return r;
}

CriterionResult criterion_2() {
  CriterionResult r;
  r.id = 2;
  r.name = "star-amplitude-anharmonic";
  NormalSymbol h = NormalSymbol::number();
  h.add_term(2, 2, 0.1);
  StarSeriesOptions opt;
  opt.max_order = 64;
  opt.tol = 1e-10;
  const int dim = 40;
  const fock::Matrix hm = fock::from_symbol(h, dim);
  double worst = 0.0, worst_consistency = 0.0, max_tail = 0.0;
  for (cxd ai : kLabelsI)
    for (cxd af : kLabelsF) {
      const double t = 1.0;
      pathint::SliceConfig cfg{1, t, ai, af};
      const auto res = pathint::star_amplitude(cfg, h, opt);
      const cxd oracle =
          fock::matrix_element(af, fock::evolve(hm, t), ai);
      const double err = rel_err(res.value, oracle);
      const double oracle_bound = std::sqrt(fock::coherent_tail(ai, dim)) +
                                  std::sqrt(fock::coherent_tail(af, dim));
      const double budget = 10.0 * res.series.tail_estimate + oracle_bound;
      worst = std::max(worst, err);
      max_tail = std::max(max_tail, res.series.tail_estimate);
      const double abs_err = std::abs(res.value - oracle);
      worst_consistency = std::max(worst_consistency,
                                   budget > 0.0 ? abs_err / budget : 0.0);
    }
  r.passed = worst <= 1e-4 && worst_consistency <= 1.0;
  r.detail = "max_rel_err=" + fmt(worst) + " (tol 1e-04), tail_estimate=" +
             fmt(max_tail) + ", err/budget=" + fmt(worst_consistency);
  r.metrics = {{"max_rel_err", worst},
               {"tolerance", 1e-4},
               {"tail_estimate", max_tail},
               {"error_over_budget", worst_consistency}};
  return r;
}

CriterionResult criterion_3() {
  CriterionResult r;
  r.id = 3;
  r.name = "star-algebra";

  // Canonical commutation, coefficient-exact.
  const NormalSymbol comm =
      star_commutator(NormalSymbol::annihilator(), NormalSymbol::creator());
  const bool comm_ok =
      comm.term_count() == 1 && comm.coefficient(0, 0) == cxd(1.0, 0.0);

  // Associativity on random triples.
  std::mt19937_64 rng(0x5eed0003);
  double worst_assoc = 0.0;
  for (int it = 0; it < 100; ++it) {
    const NormalSymbol a = random_symbol(rng, 4);
    const NormalSymbol b = random_symbol(rng, 4);
    const NormalSymbol c = random_symbol(rng, 4);
    const NormalSymbol left = star_multiply(star_multiply(a, b), c);
    const NormalSymbol right = star_multiply(a, star_multiply(b, c));
    double maxdiff = 0.0, maxcoef = 1.0;
    const NormalSymbol diff = left - right;
    for (const auto& [e, v] : diff.terms())
      maxdiff = std::max(maxdiff, std::abs(v));
    for (const auto& [e, v] : left.terms())
      maxcoef = std::max(maxcoef, std::abs(v));
    worst_assoc = std::max(worst_assoc, maxdiff / maxcoef);
  }

  // Integral against differential form.
  const ComplexPlaneRule rule = gauss_hermite_rule(64, 1.0);
  double worst_int = 0.0;
  for (int it = 0; it < 50; ++it) {
    const NormalSymbol b = random_symbol(rng, 4);
    const NormalSymbol c = random_symbol(rng, 4);
    const NormalSymbol prod = star_multiply(b, c);
    for (int p = 0; p < 20; ++p) {
      const cxd alpha = random_point(rng, 1.5);
      const cxd direct = prod.evaluate(alpha, std::conj(alpha));
      const cxd integral =
          star_multiply_integral(b, c, alpha, std::conj(alpha), rule);
      worst_int = std::max(worst_int, std::abs(direct - integral) /
                                          std::max(1.0, std::abs(direct)));
    }
  }

  r.passed = comm_ok && worst_assoc <= 1e-12 && worst_int <= 1e-8;
  r.detail = std::string("commutator_exact=") + (comm_ok ? "yes" : "no") +
             ", assoc_rel=" + fmt(worst_assoc) +
             " (tol 1e-12), integral_vs_diff=" + fmt(worst_int) +
             " (tol 1e-08)";
  r.metrics = {{"commutator_exact", comm_ok},
               {"associativity_rel", worst_assoc},
               {"integral_vs_differential", worst_int}};
  return r;
}

CriterionResult criterion_4() {
  CriterionResult r;
  r.id = 4;
  r.name = "sliced-identity";
  const NormalSymbol h = NormalSymbol::number();
  const int dim = 40;
  const fock::Matrix hm = fock::from_symbol(h, dim);
  const cxd ai(0.5, 0.0), af(0.0, 0.2);
  const double t = 1.0;
  const ComplexPlaneRule rule = gauss_hermite_rule(64, 1.0);
  double worst = 0.0;
  for (int n : {1, 2, 4, 8}) {
    pathint::SliceConfig cfg{n, t, ai, af};
    const double eps = cfg.epsilon();
    const fock::Matrix step =
        fock::Matrix::Identity(dim, dim) - kI * eps * hm;
    fock::Matrix pw = fock::Matrix::Identity(dim, dim);
    for (int k = 0; k < n; ++k) pw = step * pw;
    const cxd oracle = fock::matrix_element(af, pw, ai);
    const cxd sliced = pathint::sliced_amplitude(cfg, h, rule);
    worst = std::max(worst, rel_err(sliced, oracle));
  }
  r.passed = worst <= 1e-10;
  r.detail = "max_rel_err=" + fmt(worst) + " (tol 1e-10)";
  r.metrics = {{"max_rel_err", worst}, {"tolerance", 1e-10}};
  return r;
}

CriterionResult criterion_5() {
  CriterionResult r;
  r.id = 5;
  r.name = "continuum-convergence";
  experiment::ExperimentConfig cfg;
  cfg.hamiltonian = NormalSymbol::number();
  cfg.alpha_i = cxd(0.5, 0.0);
  cfg.alpha_f = cxd(0.0, 0.2);
  cfg.total_time = 1.0;
  cfg.rule_nodes = 32;
  cfg.slice_list = {10, 20, 40, 80};
  const auto out = experiment::run_convergence(cfg);
  const auto sidecar = nlohmann::json::parse(out.sidecar);
  const double slope =
      sidecar["slope"].is_null() ? 1.0 : sidecar["slope"].get<double>();
  r.passed = sidecar["slope_ok"].get<bool>();
  r.detail = "fitted_slope=" + fmt(slope) + " (want 1.0 +/- 0.1)";
  r.metrics = {{"slope", slope}, {"lower", 0.9}, {"upper", 1.1}};
  return r;
}

CriterionResult criterion_6() {
  CriterionResult r;
  r.id = 6;
  r.name = "kinetic-rearrangement";
  std::mt19937_64 rng(0x5eed0006);
  std::uniform_int_distribution<int> nslices(2, 64);
  std::uniform_real_distribution<double> re(-2.0, 2.0);
  double worst = 0.0;
  for (int it = 0; it < 1000; ++it) {
    const int n = nslices(rng);
    std::vector<cxd> path(n + 1);
    for (auto& p : path) p = cxd(re(rng), re(rng));
    const double eps = 1.0 / n;
    const double resid = pathint::novikov_identity_residual(path, eps);
    worst = std::max(worst, resid / pathint::novikov_term_scale(path));
  }
  r.passed = worst <= 1e-12;
  r.detail = "max_residual_over_scale=" + fmt(worst) + " (tol 1e-12)";
  r.metrics = {{"max_residual_over_scale", worst}, {"tolerance", 1e-12}};
  return r;
}

CriterionResult criterion_7() {
  CriterionResult r;
  r.id = 7;
  r.name = "vacuum-quasi-distributions";
  const int dim = 16;
  fock::Matrix rho = fock::Matrix::Zero(dim, dim);
  rho(0, 0) = 1.0;

  double worst_point = 0.0, worst_norm = 0.0;
  for (double s : {-1.0, 0.0}) {
    const quasi::QuasiTransform transform(rho, quasi::SOrder(s), 64);
    for (int i = 0; i <= 12; ++i)
      for (int j = 0; j <= 12; ++j) {
        const cxd alpha(-3.0 + 0.5 * i, -3.0 + 0.5 * j);
        if (std::abs(alpha) > 3.0) continue;
        const cxd got = transform(alpha);
        const double want = s == -1.0
                                ? std::exp(-std::norm(alpha)) / M_PI
                                : 2.0 / M_PI * std::exp(-2.0 * std::norm(alpha));
        worst_point = std::max(worst_point, std::abs(got - want));
      }
    worst_norm = std::max(
        worst_norm, std::abs(transform.normalization(64) - cxd(1.0, 0.0)));
  }
  r.passed = worst_point <= 1e-8 && worst_norm <= 1e-6;
  r.detail = "max_pointwise_err=" + fmt(worst_point) +
             " (tol 1e-08), max_norm_residual=" + fmt(worst_norm) +
             " (tol 1e-06)";
  r.metrics = {{"max_pointwise_err", worst_point},
               {"max_normalization_residual", worst_norm}};
  return r;
}

CriterionResult criterion_8() {
  CriterionResult r;
  r.id = 8;
  r.name = "optical-equivalence";
  std::mt19937_64 rng(0x5eed0008);

  // Diagonal case: point-mass weight against the number-basis trace.
  const cxd gamma(0.4, 0.3);
  const int dim = 32;
  double worst_diag = 0.0;
  const auto pm = quasi::QuasiDistribution::point_mass(gamma);
  for (int it = 0; it < 50; ++it) {
    const NormalSymbol b = random_symbol(rng, 4);
    const cxd via_p = quasi::optical_expectation(pm, b);
    const cxd via_fock =
        fock::matrix_element(gamma, fock::from_symbol(b, dim), gamma);
    worst_diag = std::max(worst_diag, std::abs(via_p - via_fock) /
                                          std::max(1.0, std::abs(via_fock)));
  }

  // Non-diagonal case: delta-pair pairing against matrix elements.  Random
  // symbols are generically asymmetric, so this pins the evaluation-point
  // convention and the prefactor.
  double worst_nondiag = 0.0;
  for (int it = 0; it < 50; ++it) {
    const cxd ai = random_point(rng, 1.0);
    const cxd af = random_point(rng, 1.0);
    const NormalSymbol b = random_symbol(rng, 3);
    const auto pair = quasi::p_nondiagonal(ai, af);
    const cxd via_pair = pair.pair_with_symbol(b);
    const cxd via_fock =
        fock::matrix_element(af, fock::from_symbol(b, dim), ai);
    worst_nondiag =
        std::max(worst_nondiag, std::abs(via_pair - via_fock) /
                                    std::max(1.0, std::abs(via_fock)));
  }

  r.passed = worst_diag <= 1e-8 && worst_nondiag <= 1e-8;
  r.detail = "diag_rel=" + fmt(worst_diag) + ", nondiag_rel=" +
             fmt(worst_nondiag) + " (tol 1e-08)";
  r.metrics = {{"diagonal_rel", worst_diag},
               {"nondiagonal_rel", worst_nondiag},
               {"tolerance", 1e-8}};
  return r;
}

CriterionResult criterion_9() {
  CriterionResult r;
  r.id = 9;
  r.name = "completeness-relation";
  // base rule spans radius 6; the refined rule doubles nodes at fixed scale
  const double scale = 6.0 / gauss_hermite_max_abscissa(64);
  const double res64 =
      fock::completeness_residual(16, gauss_hermite_rule(64, scale));
  const double res128 =
      fock::completeness_residual(16, gauss_hermite_rule(128, scale));
  r.passed = res64 <= 1e-6 && res128 < res64;
  r.detail = "residual_64=" + fmt(res64) + " (tol 1e-06), residual_128=" +
             fmt(res128) + " (must decrease)";
  r.metrics = {{"residual_64", res64},
               {"residual_128", res128},
               {"tolerance", 1e-6}};
  return r;
}

}  // namespace

std::vector<CriterionResult> run_all() {
  return {criterion_1(), criterion_2(), criterion_3(),
          criterion_4(), criterion_5(), criterion_6(),
          criterion_7(), criterion_8(), criterion_9()};
}

nlohmann::json report_json(const std::vector<CriterionResult>& results,
                           double timing_ms) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : results)
    arr.push_back({{"id", r.id},
                   {"name", r.name},
                   {"passed", r.passed},
                   {"detail", r.detail},
                   {"metrics", r.metrics}});
  nlohmann::json j;
  j["criteria"] = arr;
  j["all_passed"] = all_passed(results);
  j["timing_ms"] = timing_ms;
  return j;
}

std::string summary_text(const std::vector<CriterionResult>& results) {
  std::string out;
  for (const auto& r : results)
    out += std::string(r.passed ? "[PASS] " : "[FAIL] ") +
           std::to_string(r.id) + " " + r.name + "  " + r.detail + "\n";
  return out;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (!r.passed) return false;
  return true;
}

}  // namespace phasestar::selftest
