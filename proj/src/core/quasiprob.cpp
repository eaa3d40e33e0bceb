#include "core/quasiprob.hpp"

#include <cmath>

#include <json.hpp>

namespace phasestar::quasi {

namespace {

// tr{D(beta) rho} with the e^{-|beta|^2/2} envelope removed, i.e.
// tr{D(beta) rho} e^{+|beta|^2/2}.  Polynomial-sized for truncated rho.
cxd displaced_trace_scaled(const Matrix& rho, cxd beta) {
  const int dim = int(rho.rows());
  const double x = std::norm(beta);

  cxd acc(0.0, 0.0);
  // Diagonal offset a = m - n >= 0; the lower triangle mirrors with
  // (-conj(beta))^a and the same Laguerre values.
  cxd beta_pow(1.0, 0.0);
  cxd mbconj_pow(1.0, 0.0);
  for (int a = 0; a < dim; ++a) {
    double ratio = 1.0;  // sqrt(n!/(n+a)!)
    for (int t = 1; t <= a; ++t) ratio /= std::sqrt(double(t));
    double lkm1 = 0.0, lk = 1.0;  // L_n^{(a)}(x) recurrence
    for (int n = 0; n + a < dim; ++n) {
      const int m = n + a;
      const double common = ratio * lk;
      if (a == 0) {
        acc += common * rho(n, n);
      } else {
        acc += (beta_pow * common) * rho(n, m);      // row m, col n of D
        acc += (mbconj_pow * common) * rho(m, n);    // row n, col m of D
      }
      const double lnext =
          ((2.0 * n + 1.0 + a - x) * lk - (n + a) * lkm1) / double(n + 1);
      lkm1 = lk;
      lk = lnext;
      ratio *= std::sqrt(double(n + 1) / double(n + 1 + a));
    }
    beta_pow *= beta;
    mbconj_pow *= -std::conj(beta);
  }
  return acc;
}

}  // namespace

Matrix displacement_elements(cxd beta, int dim) {
  if (dim < 1)
    raise(ErrorCode::DimensionTooSmall, "displacement_elements: dim < 1");
  const double x = std::norm(beta);
  const double env = std::exp(-0.5 * x);
  Matrix d = Matrix::Zero(dim, dim);
  cxd beta_pow(1.0, 0.0);
  cxd mbconj_pow(1.0, 0.0);
  for (int a = 0; a < dim; ++a) {
    double ratio = 1.0;
    for (int t = 1; t <= a; ++t) ratio /= std::sqrt(double(t));
    double lkm1 = 0.0, lk = 1.0;
    for (int n = 0; n + a < dim; ++n) {
      const int m = n + a;
      const double common = env * ratio * lk;
      d(m, n) = beta_pow * common;
      d(n, m) = mbconj_pow * common;
      const double lnext =
          ((2.0 * n + 1.0 + a - x) * lk - (n + a) * lkm1) / double(n + 1);
      lkm1 = lk;
      lk = lnext;
      ratio *= std::sqrt(double(n + 1) / double(n + 1 + a));
    }
    beta_pow *= beta;
    mbconj_pow *= -std::conj(beta);
  }
  return d;
}

cxd characteristic_function(const Matrix& rho, cxd beta, SOrder s) {
  if (rho.rows() != rho.cols())
    raise(ErrorCode::InvalidArgument, "characteristic_function: rho not square");
  return displaced_trace_scaled(rho, beta) *
         std::exp(0.5 * (s.s - 1.0) * std::norm(beta));
}

QuasiTransform::QuasiTransform(const Matrix& rho, SOrder s, int nodes_per_axis,
                               double scale)
    : s_(s), rho_(rho) {
  if (s.s > 0.0)
    raise(ErrorCode::DivergentTransform,
          "quasi_distribution: s > 0 transforms are singular; only symbolic "
          "results are supported");
  if (rho.rows() != rho.cols())
    raise(ErrorCode::InvalidArgument, "QuasiTransform: rho not square");
  // Factor exp(-(1-s)|beta|^2/2) into the rule; the remaining integrand is
  // polynomial times a pure phase.  Narrower scales are allowed (the gap
  // factor below keeps the integrand right), wider ones would grow.
  const double matched = std::sqrt(2.0 / (1.0 - s.s));
  if (scale == 0.0) scale = matched;
  if (scale > matched * (1.0 + 1e-12))
    raise(ErrorCode::InvalidArgument,
          "QuasiTransform: rule scale too wide for this s");
  rule_ = gauss_hermite_rule(nodes_per_axis, scale);
  const double decay_gap = (1.0 - s.s) / 2.0 - 1.0 / (scale * scale);
  node_values_.resize(rule_.size());
  for (std::size_t k = 0; k < rule_.size(); ++k)
    node_values_[k] = displaced_trace_scaled(rho, rule_.nodes[k]) *
                      std::exp(-decay_gap * std::norm(rule_.nodes[k]));
}

cxd QuasiTransform::operator()(cxd alpha) const {
  const cxd ac = std::conj(alpha);
  std::vector<cxd> buf(rule_.size());
  for (std::size_t k = 0; k < rule_.size(); ++k) {
    const cxd n = rule_.nodes[k];
    buf[k] = rule_.weights[k] * node_values_[k] *
             std::exp(alpha * std::conj(n) - ac * n);
  }
  return pairwise_sum(buf) / (M_PI * M_PI);
}

cxd QuasiTransform::normalization(int nodes_per_axis) const {
  // F decays like exp(-2|alpha|^2/(1-s)); match the covering rule to it and
  // keep only alpha-nodes within a few widths, where the mass lives.
  const double sigma = std::sqrt((1.0 - s_.s) / 2.0);
  const double cut = 5.5 * sigma;
  // A denser beta table keeps the phase factor resolved out to the cut.
  const QuasiTransform fine(rho_, s_, std::max(96, nodes_per_axis));
  const ComplexPlaneRule cover = gauss_hermite_rule(nodes_per_axis, sigma);
  std::vector<cxd> buf;
  buf.reserve(cover.size());
  for (std::size_t k = 0; k < cover.size(); ++k)
    if (std::abs(cover.nodes[k]) <= cut)
      buf.push_back(cover.plain_weight(k) * fine(cover.nodes[k]));
  return pairwise_sum(buf);
}

cxd quasi_distribution(const Matrix& rho, cxd alpha, SOrder s,
                       const ComplexPlaneRule& rule) {
  if (s.s > 0.0)
    raise(ErrorCode::DivergentTransform,
          "quasi_distribution: s > 0 transforms are singular; only symbolic "
          "results are supported");
  if (!rule.gaussian_factored)
    raise(ErrorCode::InvalidArgument,
          "quasi_distribution: rule must be gaussian-factored");
  if (rule.scale * rule.scale > 2.0 / (1.0 - s.s) * (1.0 + 1e-12))
    raise(ErrorCode::InvalidArgument,
          "quasi_distribution: rule scale too wide for this s");
  const double decay_gap = (1.0 - s.s) / 2.0 - 1.0 / (rule.scale * rule.scale);
  const cxd ac = std::conj(alpha);
  std::vector<cxd> buf(rule.size());
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const cxd n = rule.nodes[k];
    buf[k] = rule.weights[k] * displaced_trace_scaled(rho, n) *
             std::exp(alpha * std::conj(n) - ac * n - decay_gap * std::norm(n));
  }
  return pairwise_sum(buf) / (M_PI * M_PI);
}

cxd q_representation(const NormalSymbol& b, cxd alpha) {
  return b.evaluate(alpha, std::conj(alpha));
}

cxd TestFunction1D::eval(cxd x) const {
  cxd p(0.0, 0.0);
  cxd xp(1.0, 0.0);
  for (const cxd& c : poly) {
    p += c * xp;
    xp *= x;
  }
  return p * std::exp(c0 + c1 * x + c2 * x * x);
}

bool TestFunction1D::admissible() const {
  if (c2.real() < 0.0) return true;
  return c2 == cxd(0.0, 0.0) && c1 == cxd(0.0, 0.0);
}

cxd delta_sift(const TestFunction1D& f, cxd z) {
  if (!f.admissible())
    raise(ErrorCode::InadmissibleTestFunction,
          "delta_sift: test function grows along the real axis");
  return f.eval(z);
}

cxd ExpQuadratic::eval(cxd x, cxd y) const {
  return std::exp(c0 + cx * x + cy * y + cxx * x * x + cyy * y * y +
                  cxy * x * y);
}

bool ExpQuadratic::decays() const {
  if (cxx == cxd(0.0, 0.0) && cyy == cxd(0.0, 0.0) && cxy == cxd(0.0, 0.0) &&
      cx == cxd(0.0, 0.0) && cy == cxd(0.0, 0.0))
    return true;  // constant
  return cxx.real() < 0.0 && cyy.real() < 0.0;
}

cxd GeneralizedDeltaPair::pair_with_symbol(const NormalSymbol& b) const {
  return prefactor.eval(re_point, im_point) * b.evaluate(alpha(), alpha_star());
}

cxd GeneralizedDeltaPair::pair_with(const ExpQuadratic& f) const {
  if (!f.decays())
    raise(ErrorCode::InadmissibleTestFunction,
          "pair_with: test function grows along the real axes");
  return prefactor.eval(re_point, im_point) * f.eval(re_point, im_point);
}

std::string GeneralizedDeltaPair::to_json() const {
  nlohmann::json j;
  j["re_point"] = {re_point.real(), re_point.imag()};
  j["im_point"] = {im_point.real(), im_point.imag()};
  j["prefactor"] = {
      {"c0", {prefactor.c0.real(), prefactor.c0.imag()}},
      {"cx", {prefactor.cx.real(), prefactor.cx.imag()}},
      {"cy", {prefactor.cy.real(), prefactor.cy.imag()}},
      {"cxx", {prefactor.cxx.real(), prefactor.cxx.imag()}},
      {"cyy", {prefactor.cyy.real(), prefactor.cyy.imag()}},
      {"cxy", {prefactor.cxy.real(), prefactor.cxy.imag()}},
  };
  return j.dump();
}

GeneralizedDeltaPair p_nondiagonal(cxd alpha_i, cxd alpha_f) {
  // The beta-integral of the normal-order weight for |alpha_i><alpha_f| is
  // Gaussian: the growing e^{+|beta|^2} cancels against the two overlap
  // envelopes, and the remaining plane-wave integrals give deltas at
  //   Re(alpha) -> (alpha_i + conj(alpha_f))/2
  //   Im(alpha) -> i (conj(alpha_f) - alpha_i)/2.
  // The leftover exponential-quadratic e^{x^2+y^2} times the label
  // envelopes is kept explicitly as the prefactor.
  GeneralizedDeltaPair pair;
  const cxd afc = std::conj(alpha_f);
  pair.re_point = 0.5 * (alpha_i + afc);
  pair.im_point = cxd(0.0, 0.5) * (afc - alpha_i);
  pair.prefactor.c0 =
      cxd(-0.5 * (std::norm(alpha_i) + std::norm(alpha_f)), 0.0);
  pair.prefactor.cxx = cxd(1.0, 0.0);
  pair.prefactor.cyy = cxd(1.0, 0.0);
  return pair;
}

QuasiDistribution QuasiDistribution::point_mass(cxd gamma) {
  QuasiDistribution q;
  q.s = 1.0;
  q.kind = PointMass{gamma, cxd(1.0, 0.0)};
  return q;
}

QuasiDistribution QuasiDistribution::delta_pair(cxd alpha_i, cxd alpha_f) {
  QuasiDistribution q;
  q.s = 1.0;
  q.kind = p_nondiagonal(alpha_i, alpha_f);
  return q;
}

QuasiDistribution QuasiDistribution::sampled(double s, ComplexPlaneRule rule,
                                             std::vector<cxd> values) {
  if (rule.size() != values.size())
    raise(ErrorCode::InvalidArgument,
          "QuasiDistribution::sampled: node/value length mismatch");
  QuasiDistribution q;
  q.s = s;
  q.kind = SampledGrid{std::move(rule), std::move(values)};
  return q;
}

cxd optical_expectation(const QuasiDistribution& p, const NormalSymbol& b) {
  if (const auto* pm = std::get_if<PointMass>(&p.kind))
    return pm->weight * b.evaluate(pm->point, std::conj(pm->point));
  if (const auto* dp = std::get_if<GeneralizedDeltaPair>(&p.kind))
    return dp->pair_with_symbol(b);
  const auto& grid = std::get<SampledGrid>(p.kind);
  std::vector<cxd> buf(grid.rule.size());
  for (std::size_t k = 0; k < grid.rule.size(); ++k) {
    const cxd n = grid.rule.nodes[k];
    buf[k] = grid.rule.plain_weight(k) * grid.values[k] *
             b.evaluate(n, std::conj(n));
  }
  return pairwise_sum(buf);
}

}  // namespace phasestar::quasi
