#include "core/complex_plane.hpp"

#include <Eigen/Dense>

#include "core/normal_symbol.hpp"

namespace phasestar {

namespace {

// Orthonormal Hermite polynomials h_k for the weight e^{-x^2}:
// h_0 = pi^{-1/4}, h_{k+1} = x sqrt(2/(k+1)) h_k - sqrt(k/(k+1)) h_{k-1}.
// Returns (h_n(x), h_{n-1}(x)).
std::pair<double, double> hermite_pair(int n, double x) {
  double hm = 0.0;
  double h = std::pow(M_PI, -0.25);
  for (int k = 0; k < n; ++k) {
    double hn = x * std::sqrt(2.0 / (k + 1)) * h -
                std::sqrt(double(k) / (k + 1)) * hm;
    hm = h;
    h = hn;
  }
  return {h, hm};
}

}  // namespace

void gauss_hermite_nodes(int n, std::vector<double>& x,
                         std::vector<double>& w) {
  if (n < 1) raise(ErrorCode::InvalidArgument, "gauss_hermite_nodes: n < 1");

  // Golub-Welsch: eigenvalues of the Jacobi matrix, off-diagonal sqrt(k/2).
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    double b = std::sqrt(k / 2.0);
    jac(k - 1, k) = b;
    jac(k, k - 1) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  if (es.info() != Eigen::Success)
    raise(ErrorCode::Internal, "gauss_hermite_nodes: eigensolver failed");

  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    double xi = es.eigenvalues()(i);
    // Two Newton passes on h_n; h_n'(x) = sqrt(2n) h_{n-1}(x).
    for (int pass = 0; pass < 2; ++pass) {
      auto [hn, hnm1] = hermite_pair(n, xi);
      xi -= hn / (std::sqrt(2.0 * n) * hnm1);
    }
    auto [hn, hnm1] = hermite_pair(n, xi);
    (void)hn;
    x[i] = xi;
    w[i] = 1.0 / (n * hnm1 * hnm1);
  }

  // Enforce exact +/- symmetry of the rule.
  for (int i = 0; i < n / 2; ++i) {
    double xs = 0.5 * (x[i] - x[n - 1 - i]);
    x[i] = xs;
    x[n - 1 - i] = -xs;
    double ws = 0.5 * (w[i] + w[n - 1 - i]);
    w[i] = ws;
    w[n - 1 - i] = ws;
  }
  if (n % 2 == 1) x[n / 2] = 0.0;
}

double gauss_hermite_max_abscissa(int n) {
  std::vector<double> x, w;
  gauss_hermite_nodes(n, x, w);
  return std::abs(x.back());
}

ComplexPlaneRule gauss_hermite_rule(int n, double scale) {
  if (n < 2) raise(ErrorCode::InvalidArgument, "gauss_hermite_rule: n < 2");
  if (!(scale > 0.0))
    raise(ErrorCode::InvalidArgument, "gauss_hermite_rule: scale <= 0");

  std::vector<double> x, w;
  gauss_hermite_nodes(n, x, w);

  ComplexPlaneRule rule;
  rule.gaussian_factored = true;
  rule.scale = scale;
  rule.nodes.reserve(std::size_t(n) * n);
  rule.weights.reserve(std::size_t(n) * n);
  const double s2 = scale * scale;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      rule.nodes.emplace_back(scale * x[i], scale * x[j]);
      rule.weights.push_back(s2 * w[i] * w[j]);
    }
  return rule;
}

ComplexPlaneRule gauss_hermite_rule_covering(int n, double radius) {
  if (!(radius > 0.0))
    raise(ErrorCode::InvalidArgument, "gauss_hermite_rule_covering: radius <= 0");
  return gauss_hermite_rule(n, radius / gauss_hermite_max_abscissa(n));
}

cxd pairwise_sum(std::vector<cxd>& buf) {
  if (buf.empty()) return {0.0, 0.0};
  std::size_t n = buf.size();
  while (n > 1) {
    std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < n / 2; ++i) buf[i] = buf[2 * i] + buf[2 * i + 1];
    if (n % 2 == 1) buf[n / 2] = buf[n - 1];
    n = half;
  }
  return buf[0];
}

cxd star_multiply_integral(const NormalSymbol& b, const NormalSymbol& c,
                           cxd alpha, cxd alpha_star,
                           const ComplexPlaneRule& rule) {
  if (!rule.gaussian_factored || rule.scale != 1.0)
    raise(ErrorCode::InvalidArgument,
          "star_multiply_integral: rule must be gaussian-factored, scale 1");

  // With beta = alpha + u the overlap weight becomes
  // e^{-|u|^2} e^{u (alpha_star - conj(alpha))}; the first factor is the
  // rule's Gaussian, the second collapses to 1 at alpha_star = conj(alpha).
  const cxd shift = alpha_star - std::conj(alpha);
  const cxd alpha_conj = std::conj(alpha);
  std::vector<cxd> buf(rule.size());
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const cxd u = rule.nodes[k];
    cxd v = b.evaluate(alpha + u, alpha_star) *
            c.evaluate(alpha, alpha_conj + std::conj(u));
    if (shift != cxd(0.0, 0.0)) v *= std::exp(u * shift);
    buf[k] = rule.weights[k] * v;
  }
  return pairwise_sum(buf) / M_PI;
}

}  // namespace phasestar
