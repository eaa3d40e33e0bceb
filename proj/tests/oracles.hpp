#ifndef PHASESTAR_TESTS_ORACLES_HPP
#define PHASESTAR_TESTS_ORACLES_HPP

// Test-side oracles, independent of the implementation paths they check:
// direct number-basis sums, closed forms and brute-force quadratures.

#include <complex>
#include <functional>
#include <random>

#include "core/normal_symbol.hpp"

namespace oracles {

using cxd = std::complex<double>;
using phasestar::NormalSymbol;

// <alpha_f| e^{-i omega_t a+a} |alpha_i> summed directly in the number basis:
// e^{-(|ai|^2+|af|^2)/2} sum_n (conj(af) ai e^{-i omega_t})^n / n!.
inline cxd ho_amplitude(cxd alpha_i, cxd alpha_f, double omega_t) {
  const cxd w = std::conj(alpha_f) * alpha_i * std::exp(cxd(0.0, -omega_t));
  cxd acc(0.0, 0.0), term(1.0, 0.0);
  for (int n = 1; n <= 300; ++n) {
    acc += term;
    term *= w / double(n);
    if (std::abs(term) < 1e-20 * (std::abs(acc) + 1.0)) break;
  }
  return std::exp(cxd(-0.5 * (std::norm(alpha_i) + std::norm(alpha_f)), 0.0)) *
         (acc + term);
}

// Plain midpoint rule over the square [-half, half]^2.
inline cxd midpoint_plane_integral(const std::function<cxd(cxd)>& f,
                                   double half, int cells) {
  const double h = 2.0 * half / cells;
  cxd acc(0.0, 0.0);
  for (int i = 0; i < cells; ++i)
    for (int j = 0; j < cells; ++j) {
      const cxd beta(-half + (i + 0.5) * h, -half + (j + 0.5) * h);
      acc += f(beta);
    }
  return acc * (h * h);
}

inline cxd random_coef(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mag(0.1, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
  const double r = mag(rng), p = phase(rng);
  return {r * std::cos(p), r * std::sin(p)};
}

inline cxd random_point(std::mt19937_64& rng, double max_abs) {
  std::uniform_real_distribution<double> mag(0.0, max_abs);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
  const double r = mag(rng), p = phase(rng);
  return {r * std::cos(p), r * std::sin(p)};
}

inline NormalSymbol random_symbol(std::mt19937_64& rng, unsigned max_degree) {
  std::uniform_int_distribution<int> coin(0, 1);
  NormalSymbol s;
  for (unsigned m = 0; m <= max_degree; ++m)
    for (unsigned n = 0; m + n <= max_degree; ++n)
      if (coin(rng)) s.add_term(m, n, random_coef(rng));
  if (s.is_zero()) s.add_term(0, 0, random_coef(rng));
  return s;
}

inline double rel_err(cxd a, cxd b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace oracles

#endif
