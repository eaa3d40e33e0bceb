#include "core/path_integral.hpp"

#include <algorithm>
#include <cmath>

namespace phasestar::pathint {

namespace {
const cxd kI(0.0, 1.0);
}

cxd discrete_exponent(std::span<const cxd> path, const NormalSymbol& h,
                      double epsilon) {
  if (path.size() < 2)
    raise(ErrorCode::InvalidArgument, "discrete_exponent: need N >= 1");
  const std::size_t n = path.size() - 1;
  cxd e(-0.5 * (std::norm(path[0]) + std::norm(path[n])), 0.0);
  for (std::size_t j = 1; j < n; ++j) e -= std::norm(path[j]);
  for (std::size_t j = 1; j <= n; ++j) e += std::conj(path[j]) * path[j - 1];
  cxd hsum(0.0, 0.0);
  for (std::size_t j = 1; j <= n; ++j)
    hsum += h.evaluate(path[j - 1], std::conj(path[j]));
  return e - kI * epsilon * hsum;
}

double novikov_identity_residual(std::span<const cxd> path, double epsilon) {
  if (path.size() < 3)
    raise(ErrorCode::InvalidArgument, "novikov_identity_residual: need N >= 2");
  const std::size_t n = path.size() - 1;
  cxd lhs(0.0, 0.0);
  for (std::size_t j = 1; j <= n; ++j) lhs += std::conj(path[j]) * path[j - 1];
  for (std::size_t j = 1; j < n; ++j) lhs -= std::norm(path[j]);

  cxd rhs = 0.5 * (std::conj(path[n]) * path[n - 1] +
                   std::conj(path[1]) * path[0]);
  for (std::size_t j = 1; j < n; ++j) {
    rhs += 0.5 * epsilon *
           (path[j] * (std::conj(path[j + 1]) - std::conj(path[j])) / epsilon -
            std::conj(path[j]) * (path[j] - path[j - 1]) / epsilon);
  }
  return std::abs(lhs - rhs);
}

double novikov_term_scale(std::span<const cxd> path) {
  const std::size_t n = path.size() - 1;
  double scale = 0.0;
  for (std::size_t j = 1; j <= n; ++j)
    scale += std::abs(path[j]) * std::abs(path[j - 1]);
  for (std::size_t j = 1; j < n; ++j) scale += std::norm(path[j]);
  return std::max(scale, 1.0);
}

cxd sliced_amplitude(const SliceConfig& cfg, const NormalSymbol& h,
                     const ComplexPlaneRule& rule) {
  if (cfg.slices < 1)
    raise(ErrorCode::InvalidArgument, "sliced_amplitude: slices < 1");
  const double eps = cfg.epsilon();
  const cxd overlap = fock::coherent_overlap(cfg.alpha_f, cfg.alpha_i);

  auto slice_factor = [&](cxd prev, cxd next_conj) {
    return cxd(1.0, 0.0) - kI * eps * h.evaluate(prev, next_conj);
  };

  if (cfg.slices == 1)
    return overlap * slice_factor(cfg.alpha_i, std::conj(cfg.alpha_f));

  if (!rule.gaussian_factored || rule.scale != 1.0)
    raise(ErrorCode::InvalidArgument,
          "sliced_amplitude: rule must be gaussian-factored, scale 1");

  // Tensor structure of the rule: node(a, b) = x[a] + i x[b].
  std::vector<double> x1, w1;
  const int n1 = int(std::lround(std::sqrt(double(rule.size()))));
  if (std::size_t(n1) * n1 != rule.size())
    raise(ErrorCode::InvalidArgument, "sliced_amplitude: rule is not a tensor grid");
  gauss_hermite_nodes(n1, x1, w1);

  const std::size_t nn = rule.size();
  auto node_of = [&](int a, int b) { return cxd(x1[a], x1[b]); };

  // Kernel exp(conj(node_i) node_k) factors over the four axis pairs.
  std::vector<double> er(std::size_t(n1) * n1);          // exp(x_c x_a)
  std::vector<cxd> ep(std::size_t(n1) * n1);             // exp(i x_c x_b)
  for (int c = 0; c < n1; ++c)
    for (int a = 0; a < n1; ++a) {
      er[std::size_t(c) * n1 + a] = std::exp(x1[c] * x1[a]);
      ep[std::size_t(c) * n1 + a] = std::exp(kI * (x1[c] * x1[a]));
    }

  // Per-node inner sums S_m[k] = sum_n h_mn node_k^n for each alpha*-power m
  // carried by h; the slice factor at (node_k, conj(node_i)) is then a short
  // dot product against powers of conj(node_i).
  std::vector<unsigned> mvals;
  for (const auto& [e, c] : h.terms())
    if (std::find(mvals.begin(), mvals.end(), e.m) == mvals.end())
      mvals.push_back(e.m);
  std::sort(mvals.begin(), mvals.end());
  const unsigned max_m = mvals.empty() ? 0 : mvals.back();
  std::vector<std::vector<cxd>> srow(mvals.size(), std::vector<cxd>(nn));
  for (std::size_t k = 0; k < nn; ++k) {
    const cxd node = rule.nodes[k];
    for (std::size_t mi = 0; mi < mvals.size(); ++mi) {
      cxd acc(0.0, 0.0);
      for (const auto& [e, c] : h.terms())
        if (e.m == mvals[mi]) acc += c * std::pow(node, double(e.n));
      srow[mi][k] = acc;
    }
  }
  auto h_eval_fast = [&](std::size_t k, const std::vector<cxd>& conj_pows) {
    cxd acc(0.0, 0.0);
    for (std::size_t mi = 0; mi < mvals.size(); ++mi)
      acc += conj_pows[mvals[mi]] * srow[mi][k];
    return acc;
  };

  // First intermediate label: chain value against alpha_i.
  std::vector<cxd> u(nn);
  for (std::size_t k = 0; k < nn; ++k) {
    const cxd nc = std::conj(rule.nodes[k]);
    u[k] = std::exp(nc * cfg.alpha_i) * slice_factor(cfg.alpha_i, nc);
  }

  std::vector<cxd> conj_pows(max_m + 1);
  std::vector<cxd> wu(nn), v(nn);
  for (int j = 2; j <= cfg.slices - 1; ++j) {
    for (std::size_t k = 0; k < nn; ++k) u[k] *= rule.weights[k] / M_PI;
    std::swap(u, wu);
    for (int c = 0; c < n1; ++c)
      for (int d = 0; d < n1; ++d) {
        const cxd node_i_conj = std::conj(node_of(c, d));
        conj_pows[0] = 1.0;
        for (unsigned m = 1; m <= max_m; ++m)
          conj_pows[m] = conj_pows[m - 1] * node_i_conj;
        cxd acc(0.0, 0.0);
        for (int a = 0; a < n1; ++a) {
          const double ra = er[std::size_t(c) * n1 + a];
          const cxd pda = std::conj(ep[std::size_t(d) * n1 + a]);
          const cxd fa = ra * pda;
          for (int b = 0; b < n1; ++b) {
            const std::size_t k = std::size_t(a) * n1 + b;
            const cxd kernel =
                fa * (er[std::size_t(d) * n1 + b] * ep[std::size_t(c) * n1 + b]);
            const cxd factor = cxd(1.0, 0.0) - kI * eps * h_eval_fast(k, conj_pows);
            acc += kernel * factor * wu[k];
          }
        }
        v[std::size_t(c) * n1 + d] = acc;
      }
    std::swap(u, v);
  }

  // Close the chain on alpha_f.
  const cxd afc = std::conj(cfg.alpha_f);
  std::vector<cxd> buf(nn);
  for (std::size_t k = 0; k < nn; ++k) {
    buf[k] = rule.weights[k] * std::exp(afc * rule.nodes[k]) *
             slice_factor(rule.nodes[k], afc) * u[k];
  }
  const cxd tail = pairwise_sum(buf) / M_PI;
  return std::exp(cxd(-0.5 * (std::norm(cfg.alpha_i) + std::norm(cfg.alpha_f)),
                      0.0)) *
         tail;
}

StarAmplitudeResult star_amplitude(const SliceConfig& cfg,
                                   const NormalSymbol& h,
                                   const StarSeriesOptions& opt) {
  StarAmplitudeResult out;
  out.series = star_exponential(h, -kI * cfg.total_time, opt);
  out.value = fock::coherent_overlap(cfg.alpha_f, cfg.alpha_i) *
              out.series.value.evaluate(cfg.alpha_i, std::conj(cfg.alpha_f));
  return out;
}

double AmplitudeReport::relative_error(cxd a, cxd b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale == 0.0) return 0.0;
  return std::abs(a - b) / scale;
}

double AmplitudeReport::max_pairwise_error() const {
  std::vector<cxd> vals;
  for (const auto& v : {star_value, oracle_value, sliced_value, optical_value})
    if (v) vals.push_back(*v);
  double worst = 0.0;
  for (std::size_t i = 0; i < vals.size(); ++i)
    for (std::size_t j = i + 1; j < vals.size(); ++j)
      worst = std::max(worst, relative_error(vals[i], vals[j]));
  return worst;
}

int auto_fock_dim(const SliceConfig& cfg, const NormalSymbol& h) {
  const double amax = std::max(std::abs(cfg.alpha_i), std::abs(cfg.alpha_f));
  return std::max(fock::default_dim(amax), int(h.degree()) + 2);
}

AmplitudeReport compare_all(const SliceConfig& cfg, const NormalSymbol& h,
                            const CompareParams& params) {
  AmplitudeReport report;
  report.slices = cfg.slices;
  report.rule_nodes = params.rule_nodes;

  if (params.want_star || params.want_optical) {
    const StarAmplitudeResult sr = star_amplitude(cfg, h, params.series);
    report.series_order = sr.series.order;
    report.tail_estimate = sr.series.tail_estimate;
    report.series_converged = sr.series.converged;
    report.series_splits = sr.series.splits;
    if (params.want_star) report.star_value = sr.value;
    if (params.want_optical) {
      // Same amplitude recomputed through the symbolic normal-order weight
      // of |alpha_i><alpha_f| paired with the Q-symbol of the evolution.
      const auto pair = quasi::p_nondiagonal(cfg.alpha_i, cfg.alpha_f);
      report.optical_value = pair.pair_with_symbol(sr.series.value);
    }
  }

  if (params.want_oracle) {
    const int dim =
        params.fock_dim > 0 ? params.fock_dim : auto_fock_dim(cfg, h);
    report.fock_dim = dim;
    const fock::Matrix hm = fock::from_symbol(h, dim);
    const fock::Matrix u = fock::evolve(hm, cfg.total_time);
    report.oracle_value = fock::matrix_element(cfg.alpha_f, u, cfg.alpha_i);
  }

  if (params.want_sliced) {
    // enough nodes for the per-slice polynomial degree, however low the
    // configured count
    const int needed =
        int(h.degree_alpha() + h.degree_alpha_star()) / 2 + 4;
    const ComplexPlaneRule rule =
        gauss_hermite_rule(std::max(params.rule_nodes, needed), 1.0);
    report.rule_nodes = int(std::lround(std::sqrt(double(rule.size()))));
    report.sliced_value = sliced_amplitude(cfg, h, rule);
  }

  return report;
}

}  // namespace phasestar::pathint
