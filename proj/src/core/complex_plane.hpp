#ifndef PHASESTAR_CORE_COMPLEX_PLANE_HPP
#define PHASESTAR_CORE_COMPLEX_PLANE_HPP

#include <cmath>
#include <complex>
#include <vector>

#include "core/errors.hpp"

namespace phasestar {

using cxd = std::complex<double>;

// Quadrature rule for integrals d^2 beta = dRe(beta) dIm(beta) over the
// complex plane.  When gaussian_factored is set the weights integrate
// exp(-|beta|^2/scale^2) * f(beta), i.e. the Gaussian envelope is part of
// the rule and integrands supply only the remaining factor.
struct ComplexPlaneRule {
  std::vector<cxd> nodes;
  std::vector<double> weights;
  bool gaussian_factored = true;
  double scale = 1.0;

  std::size_t size() const { return nodes.size(); }

  // Weight with the Gaussian envelope written back in, usable against a
  // raw integrand.  Safe in double up to 128 nodes per axis.
  double plain_weight(std::size_t k) const {
    if (!gaussian_factored) return weights[k];
    return weights[k] * std::exp(std::norm(nodes[k]) / (scale * scale));
  }
};

// One-dimensional Gauss-Hermite nodes and weights for the weight e^{-x^2}.
void gauss_hermite_nodes(int n, std::vector<double>& x, std::vector<double>& w);

// Largest abscissa of the n-point Hermite rule.
double gauss_hermite_max_abscissa(int n);

// Tensor rule with n nodes per axis; exact for
// exp(-|beta|^2/scale^2) * (polynomials of per-axis degree <= 2n-1).
ComplexPlaneRule gauss_hermite_rule(int n, double scale = 1.0);

// Tensor rule whose per-axis nodes span exactly [-radius, radius].
ComplexPlaneRule gauss_hermite_rule_covering(int n, double radius);

// Deterministic pairwise reduction; fixed tree, no threading.
cxd pairwise_sum(std::vector<cxd>& buf);

template <class F>
cxd integrate(F&& f, const ComplexPlaneRule& rule) {
  std::vector<cxd> buf(rule.size());
  for (std::size_t k = 0; k < rule.size(); ++k)
    buf[k] = rule.weights[k] * f(rule.nodes[k]);
  return pairwise_sum(buf);
}

class NormalSymbol;

// Integral form of the normal star product evaluated at one point.
// Nodes are re-centred at alpha so the overlap Gaussian is absorbed by the
// rule; requires a gaussian-factored rule with scale 1.
cxd star_multiply_integral(const NormalSymbol& b, const NormalSymbol& c,
                           cxd alpha, cxd alpha_star,
                           const ComplexPlaneRule& rule);

}  // namespace phasestar

#endif
