#ifndef PHASESTAR_CORE_FOCK_HPP
#define PHASESTAR_CORE_FOCK_HPP

#include <Eigen/Dense>
#include <complex>

#include "core/complex_plane.hpp"
#include "core/errors.hpp"
#include "core/normal_symbol.hpp"

// Ground-truth computations in a truncated number-state basis.  Ladder
// truncation corrupts the last rows/columns, so comparisons against these
// matrices are made on interior blocks (first dim/2 components).
namespace phasestar::fock {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// a[n-1, n] = sqrt(n).  Throws DimensionTooSmall for dim < 2.
Matrix annihilation(int dim);
Matrix creation(int dim);

// sum b_mn (a+)^m a^n from truncated ladder matrices; needs
// dim >= degree + 2.
Matrix from_symbol(const NormalSymbol& b, int dim);

// e^{-|a|^2} sum_{n >= dim} |a|^{2n}/n!  (probability mass beyond the basis).
double coherent_tail(cxd alpha, int dim);

// Truncation admissibility threshold used by the checked constructors.
inline constexpr double kAdmissibleTail = 1e-12;

// dim = max(32, ceil(8 (1 + |alpha|^2))).
int default_dim(double max_abs_alpha);

// entries[n] = e^{-|a|^2/2} a^n / sqrt(n!).  Throws TruncationTooCoarse when
// the tail test fails.
Vector coherent_vector(cxd alpha, int dim);

// Same amplitudes without the admissibility gate (quadrature internals).
Vector coherent_amplitudes_unchecked(cxd alpha, int dim);

// <beta|alpha> = exp(-|alpha|^2/2 - |beta|^2/2 + conj(beta) alpha).
cxd coherent_overlap(cxd beta, cxd alpha);

// exp(alpha a+ - conj(alpha) a) via the Hermitian eigendecomposition of the
// (i * generator).  Throws TruncationTooCoarse like coherent_vector.
Matrix displacement(cxd alpha, int dim);

// General dense matrix exponential, scaling-and-squaring with Pade
// approximants (degrees 3/5/7/9/13).
Matrix expm(const Matrix& a);

// e^{-i t h}; Hermitian h takes the eigendecomposition fast path.
Matrix evolve(const Matrix& h, double t);

// <alpha_f| op |alpha_i> in the truncated basis.
cxd matrix_element(cxd alpha_f, const Matrix& op, cxd alpha_i);

// Max-norm deviation of (1/pi) Int d^2a |a><a| from the identity on the
// leading floor(dim/2) block, under the given rule.
double completeness_residual(int dim, const ComplexPlaneRule& rule);

}  // namespace phasestar::fock

#endif
