#ifndef PHASESTAR_CORE_NORMAL_SYMBOL_HPP
#define PHASESTAR_CORE_NORMAL_SYMBOL_HPP

#include <complex>
#include <compare>
#include <map>
#include <string>

#include "core/errors.hpp"

namespace phasestar {

using cxd = std::complex<double>;

// Exponents of one monomial coef * conj(alpha)^m * alpha^n.
struct ExponentPair {
  unsigned m = 0;  // power of alpha*
  unsigned n = 0;  // power of alpha
  auto operator<=>(const ExponentPair&) const = default;
};

// Sparse polynomial in the independent variables (alpha*, alpha); the
// phase-space face of a normally ordered operator sum_{mn} b_mn a+^m a^n.
//
// Canonical form: no stored zero coefficients, and after every arithmetic
// operation coefficients below 1e-15 times the largest magnitude are dropped.
class NormalSymbol {
 public:
  NormalSymbol() = default;

  static NormalSymbol constant(cxd c);
  static NormalSymbol monomial(unsigned m, unsigned n, cxd c = 1.0);
  static NormalSymbol annihilator();  // alpha
  static NormalSymbol creator();      // alpha*
  static NormalSymbol number();       // alpha* alpha

  const std::map<ExponentPair, cxd>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  cxd coefficient(unsigned m, unsigned n) const;

  unsigned degree() const;             // max(m + n), 0 for the zero symbol
  unsigned degree_alpha() const;       // max n
  unsigned degree_alpha_star() const;  // max m

  // Adds c on (m, n); duplicates accumulate.
  void add_term(unsigned m, unsigned n, cxd c);

  NormalSymbol& operator+=(const NormalSymbol& o);
  NormalSymbol& operator-=(const NormalSymbol& o);
  NormalSymbol& operator*=(cxd s);
  friend NormalSymbol operator+(NormalSymbol a, const NormalSymbol& b) {
    a += b;
    return a;
  }
  friend NormalSymbol operator-(NormalSymbol a, const NormalSymbol& b) {
    a -= b;
    return a;
  }
  friend NormalSymbol operator*(NormalSymbol a, cxd s) {
    a *= s;
    return a;
  }
  friend NormalSymbol operator*(cxd s, NormalSymbol a) {
    a *= s;
    return a;
  }

  // sum_{mn} b_mn a_star^m a^n with independent complex arguments; at
  // a_star = conj(a) this is the diagonal coherent-state expectation.
  cxd evaluate(cxd a, cxd a_star) const;

  // sum |b_mn| R^{m+n}; magnitude bound on the disk |alpha| <= R.
  double disk_bound(double radius) const;

  // Drops terms whose degree m + n exceeds cap; returns the disk-bound mass
  // of what was removed.
  double truncate_degree(unsigned cap, double radius);

  // Interchange format: JSON list of [m, n, re, im] records.  Loading is
  // order-insensitive and sums duplicates.
  std::string to_json() const;
  static NormalSymbol from_json(const std::string& text);

  void canonicalize();

 private:
  std::map<ExponentPair, cxd> terms_;

  friend NormalSymbol star_multiply(const NormalSymbol&, const NormalSymbol&);
};

// Differential form of the normal star product:
// B exp{<-d/d_alpha  ->d/d_alpha*} C
//   = sum_k (1/k!) (d^k B/d alpha^k)(d^k C/d alpha*^k).
// The sum terminates at k = min(deg_alpha B, deg_alpha* C).
NormalSymbol star_multiply(const NormalSymbol& b, const NormalSymbol& c);

NormalSymbol star_commutator(const NormalSymbol& b, const NormalSymbol& c);

NormalSymbol star_power(const NormalSymbol& b, unsigned k);

struct StarSeriesOptions {
  int max_order = 64;
  double tol = 1e-10;
  double ref_radius = 2.0;   // disk used for term-magnitude control
  unsigned degree_cap = 0;   // 0 = no cap
  bool allow_split = true;   // exact semigroup factorization for large args
  double split_threshold = 0.5;
};

struct StarSeries {
  NormalSymbol value;
  int order = 0;              // star order of the summed (factor) series
  double tail_estimate = 0.0; // disk bound of the last included term,
                              // propagated through the semigroup factors
  bool converged = true;      // false flags non-convergence at max_order
  int splits = 0;             // extra semigroup factors applied (0 = none)
  bool degree_capped = false;
};

// Star exponential sum_k z^k/k! H^{*k}.  Adaptive order: stops once the
// k-th term's bound on the reference disk falls below tol.  When
// |z| * disk_bound(H) exceeds split_threshold the argument is divided into
// p equal semigroup factors, exp*(zH) = exp*(zH/p)^{*p}, each factor summed
// by the same adaptive series and the product assembled with star products;
// this is exact and keeps every series in its fast-converging regime.
StarSeries star_exponential(const NormalSymbol& h, cxd z,
                            const StarSeriesOptions& opt = {});

}  // namespace phasestar

#endif
