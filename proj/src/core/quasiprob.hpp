#ifndef PHASESTAR_CORE_QUASIPROB_HPP
#define PHASESTAR_CORE_QUASIPROB_HPP

#include <variant>
#include <vector>

#include "core/complex_plane.hpp"
#include "core/fock.hpp"
#include "core/normal_symbol.hpp"

namespace phasestar::quasi {

using fock::Matrix;
using fock::Vector;

// Ordering parameter: s = 1 (normal / P), s = 0 (Wigner), s = -1 (Q).
struct SOrder {
  double s = -1.0;
  explicit SOrder(double value) : s(value) {
    if (!(s >= -1.0 && s <= 1.0))
      raise(ErrorCode::InvalidArgument, "SOrder: s outside [-1, 1]");
  }
};

// Matrix elements <m|exp(beta a+ - conj(beta) a)|n> of the untruncated
// displacement operator, restricted to the first dim number states.  Exact
// for operators supported on that block, unlike exponentiating the
// truncated generator.
Matrix displacement_elements(cxd beta, int dim);

// G(beta, s) = tr{D(beta) rho} e^{s |beta|^2 / 2}.  Callers should pass a
// unit-trace rho; the probability normalizations below assume it.
cxd characteristic_function(const Matrix& rho, cxd beta, SOrder s);

// F(alpha, s) = (1/pi^2) Int d^2beta G(beta, s) e^{alpha beta* - alpha* beta}.
// Direct quadrature needs a decaying integrand: s > 0 is refused with
// DivergentTransform.  Node tables are cached so grids of alpha are cheap.
class QuasiTransform {
 public:
  // scale = 0 matches the rule's Gaussian to the integrand decay,
  // exp(-(1-s)|beta|^2/2); explicit scales must not exceed that width.
  QuasiTransform(const Matrix& rho, SOrder s, int nodes_per_axis,
                 double scale = 0.0);

  cxd operator()(cxd alpha) const;
  double s() const { return s_.s; }
  const ComplexPlaneRule& rule() const { return rule_; }

  // Int d^2alpha F(alpha, s) by a plane-covering rule matched to the
  // transform's Gaussian decay.  The transform is re-tabulated on a denser
  // beta rule for this: the alpha-nodes reach where the phase
  // e^{alpha beta* - alpha* beta} oscillates too fast for the display rule.
  cxd normalization(int nodes_per_axis) const;

 private:
  SOrder s_;
  Matrix rho_;
  ComplexPlaneRule rule_;
  std::vector<cxd> node_values_;  // tr{D(node) rho} e^{+|node|^2/2}
};

// One-shot variant with an explicit rule; the rule's Gaussian scale must not
// exceed the integrand decay, scale^2 <= 2/(1 - s).
cxd quasi_distribution(const Matrix& rho, cxd alpha, SOrder s,
                       const ComplexPlaneRule& rule);

// Husimi-Kano symbol of a normally ordered operator: evaluate(b, a, conj a).
cxd q_representation(const NormalSymbol& b, cxd alpha);

// Test function for sifting against a generalized delta: polynomial times
// exponential-quadratic, f(x) = (sum_k p_k x^k) exp(c0 + c1 x + c2 x^2).
// Admissible when it decays along the real axis (Re c2 < 0) or is a bare
// polynomial (distributionally fine for the regularized kernel).
struct TestFunction1D {
  std::vector<cxd> poly = {cxd(1.0, 0.0)};
  cxd c0{0.0, 0.0}, c1{0.0, 0.0}, c2{0.0, 0.0};

  cxd eval(cxd x) const;
  bool admissible() const;
};

// Int dx f(x) delta~(x - z) = f(z) for analytic f; implemented as symbolic
// evaluation at the complex point.  Throws InadmissibleTestFunction.
cxd delta_sift(const TestFunction1D& f, cxd z);

// exp(c0 + cx x + cy y + cxx x^2 + cyy y^2 + cxy x y) on complex (x, y).
struct ExpQuadratic {
  cxd c0{0.0, 0.0}, cx{0.0, 0.0}, cy{0.0, 0.0};
  cxd cxx{0.0, 0.0}, cyy{0.0, 0.0}, cxy{0.0, 0.0};

  cxd eval(cxd x, cxd y) const;
  bool decays() const;  // Re cxx < 0 and Re cyy < 0
};

// Symbolic P-function of |alpha_i><alpha_f|: a product of generalized deltas
// in Re(alpha) and Im(alpha) at complex points, carrying the
// exponential-quadratic prefactor left over from the Gaussian beta-integral.
//
// Sifting both deltas reconstructs the complex pair
//   alpha  -> re_point + i im_point  = alpha_i
//   alpha* -> re_point - i im_point  = conj(alpha_f),
// and the prefactor evaluates to <alpha_f|alpha_i>.  The sign of im_point is
// fixed by the diagonal limit (alpha_i = alpha_f must give a point mass at
// that label) and is cross-checked against the number-basis oracle in the
// tests, which also rule out the swapped evaluation order
// (alpha, alpha*) -> (conj(alpha_f), alpha_i) for asymmetric operators.
struct GeneralizedDeltaPair {
  cxd re_point{0.0, 0.0};
  cxd im_point{0.0, 0.0};
  ExpQuadratic prefactor;

  cxd alpha() const { return re_point + cxd(0.0, 1.0) * im_point; }
  cxd alpha_star() const { return re_point - cxd(0.0, 1.0) * im_point; }

  // Pairing with the Q-symbol of a normally ordered operator.
  cxd pair_with_symbol(const NormalSymbol& b) const;
  // Pairing with an exponential-quadratic test function of (x, y); must
  // decay (or be constant) to be admissible.
  cxd pair_with(const ExpQuadratic& f) const;

  // JSON record: re_point, im_point, prefactor coefficients.
  std::string to_json() const;
};

GeneralizedDeltaPair p_nondiagonal(cxd alpha_i, cxd alpha_f);

// Point mass weight * delta^2(alpha - point).
struct PointMass {
  cxd point{0.0, 0.0};
  cxd weight{1.0, 0.0};
};

// Values of a distribution sampled on a rule's nodes.
struct SampledGrid {
  ComplexPlaneRule rule;
  std::vector<cxd> values;
};

struct QuasiDistribution {
  double s = 1.0;
  std::variant<PointMass, GeneralizedDeltaPair, SampledGrid> kind;

  static QuasiDistribution point_mass(cxd gamma);
  static QuasiDistribution delta_pair(cxd alpha_i, cxd alpha_f);
  static QuasiDistribution sampled(double s, ComplexPlaneRule rule,
                                   std::vector<cxd> values);
};

// Int d^2alpha P(alpha) B_Q(alpha, alpha*): quadrature for sampled grids,
// sifting for point masses and delta pairs.  Equals tr{B rho} when P is the
// normal-order weight of rho.
cxd optical_expectation(const QuasiDistribution& p, const NormalSymbol& b);

}  // namespace phasestar::quasi

#endif
