#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "core/fock.hpp"
#include "core/normal_symbol.hpp"
#include "oracles.hpp"

using namespace phasestar;
using oracles::rel_err;

namespace {
const cxd kI(0.0, 1.0);

bool coef_equal(const NormalSymbol& a, const NormalSymbol& b, double tol) {
  NormalSymbol d = a - b;
  for (const auto& [e, c] : d.terms())
    if (std::abs(c) > tol) return false;
  return true;
}
}  // namespace

TEST_CASE("addition keeps canonical sparse form") {
  const NormalSymbol num = NormalSymbol::number();

  CHECK((num + NormalSymbol()).terms() == num.terms());

  NormalSymbol sum = NormalSymbol::annihilator() + NormalSymbol::creator();
  CHECK(sum.term_count() == 2);
  CHECK(sum.coefficient(0, 1) == cxd(1.0, 0.0));
  CHECK(sum.coefficient(1, 0) == cxd(1.0, 0.0));

  const NormalSymbol zero = 2.0 * num + (-2.0) * num;
  CHECK(zero.is_zero());
  CHECK(zero.term_count() == 0);
}

TEST_CASE("canonicalization drops relatively negligible coefficients") {
  NormalSymbol s;
  s.add_term(0, 0, 1.0);
  s.add_term(3, 3, 1e-31);
  CHECK(s.term_count() == 1);
}

TEST_CASE("star product, hand-checkable cases") {
  const NormalSymbol a = NormalSymbol::annihilator();
  const NormalSymbol ad = NormalSymbol::creator();
  const NormalSymbol num = NormalSymbol::number();

  // left factor has no alpha dependence: k = 0 only
  const NormalSymbol ada = star_multiply(ad, a);
  CHECK(ada.term_count() == 1);
  CHECK(ada.coefficient(1, 1) == cxd(1.0, 0.0));

  // a a+ = a+a + 1
  const NormalSymbol aad = star_multiply(a, ad);
  CHECK(aad.term_count() == 2);
  CHECK(aad.coefficient(1, 1) == cxd(1.0, 0.0));
  CHECK(aad.coefficient(0, 0) == cxd(1.0, 0.0));

  // (a+a)(a+a) = a+^2 a^2 + a+a
  const NormalSymbol numsq = star_multiply(num, num);
  CHECK(numsq.term_count() == 2);
  CHECK(numsq.coefficient(2, 2) == cxd(1.0, 0.0));
  CHECK(numsq.coefficient(1, 1) == cxd(1.0, 0.0));
}

TEST_CASE("star product against the number-basis oracle") {
  // evaluate(B * C, alpha, conj alpha) must equal <alpha|B C|alpha>.
  std::mt19937_64 rng(11);
  const int dim = 32;
  for (int it = 0; it < 25; ++it) {
    const NormalSymbol b = oracles::random_symbol(rng, 3);
    const NormalSymbol c = oracles::random_symbol(rng, 3);
    const NormalSymbol prod = star_multiply(b, c);
    const fock::Matrix bc =
        fock::from_symbol(b, dim) * fock::from_symbol(c, dim);
    for (int p = 0; p < 5; ++p) {
      const cxd alpha = oracles::random_point(rng, 1.0);
      const cxd lhs = prod.evaluate(alpha, std::conj(alpha));
      const cxd rhs = fock::matrix_element(alpha, bc, alpha);
      CHECK(std::abs(lhs - rhs) <= 1e-8 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("star commutators") {
  const NormalSymbol a = NormalSymbol::annihilator();
  const NormalSymbol ad = NormalSymbol::creator();
  const NormalSymbol num = NormalSymbol::number();

  const NormalSymbol canonical = star_commutator(a, ad);
  CHECK(canonical.term_count() == 1);
  CHECK(canonical.coefficient(0, 0) == cxd(1.0, 0.0));

  std::mt19937_64 rng(7);
  for (int it = 0; it < 10; ++it) {
    const NormalSymbol b = oracles::random_symbol(rng, 4);
    CHECK(star_commutator(b, b).is_zero());
  }

  // [a+a, a] = -a
  const NormalSymbol na = star_commutator(num, a);
  CHECK(na.term_count() == 1);
  CHECK(na.coefficient(0, 1) == cxd(-1.0, 0.0));
}

TEST_CASE("star powers") {
  const NormalSymbol num = NormalSymbol::number();
  CHECK(star_power(num, 0).coefficient(0, 0) == cxd(1.0, 0.0));
  CHECK(star_power(num, 1).terms() == num.terms());
  CHECK(star_power(num, 2).terms() == star_multiply(num, num).terms());

  // <alpha| (a+a)^3 |alpha> against the number basis
  const cxd alpha(0.7, -0.4);
  const fock::Matrix n3 =
      fock::from_symbol(num, 24) * fock::from_symbol(num, 24) *
      fock::from_symbol(num, 24);
  CHECK(std::abs(star_power(num, 3).evaluate(alpha, std::conj(alpha)) -
                 fock::matrix_element(alpha, n3, alpha)) < 1e-9);
}

TEST_CASE("unit and degree bounds") {
  const NormalSymbol one = NormalSymbol::constant(1.0);
  std::mt19937_64 rng(13);
  for (int it = 0; it < 10; ++it) {
    const NormalSymbol b = oracles::random_symbol(rng, 4);
    CHECK(star_multiply(one, b).terms() == b.terms());
    CHECK(star_multiply(b, one).terms() == b.terms());

    const NormalSymbol c = oracles::random_symbol(rng, 4);
    const NormalSymbol prod = star_multiply(b, c);
    CHECK(prod.degree() <= b.degree() + c.degree());
  }
}

TEST_CASE("associativity on random symbols") {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 30; ++it) {
    const NormalSymbol a = oracles::random_symbol(rng, 4);
    const NormalSymbol b = oracles::random_symbol(rng, 4);
    const NormalSymbol c = oracles::random_symbol(rng, 4);
    const NormalSymbol left = star_multiply(star_multiply(a, b), c);
    const NormalSymbol right = star_multiply(a, star_multiply(b, c));
    double maxcoef = 1.0;
    for (const auto& [e, v] : left.terms())
      maxcoef = std::max(maxcoef, std::abs(v));
    CHECK(coef_equal(left, right, 1e-12 * maxcoef));
  }
}

TEST_CASE("evaluate with independent arguments") {
  const NormalSymbol num = NormalSymbol::number();
  CHECK(num.evaluate(cxd(2.0, 0.0), std::conj(cxd(2.0, 0.0))) ==
        cxd(4.0, 0.0));
  CHECK(num.evaluate(cxd(1.0, 0.0), cxd(0.0, 3.0)) == cxd(0.0, 3.0));

  // <alpha| a a+ |alpha> = |alpha|^2 + 1, checked against the number basis
  const NormalSymbol aad =
      star_multiply(NormalSymbol::annihilator(), NormalSymbol::creator());
  const cxd alpha(1.0, 1.0);
  CHECK(std::abs(aad.evaluate(alpha, std::conj(alpha)) - cxd(3.0, 0.0)) <
        1e-12);
  const fock::Matrix m =
      fock::annihilation(32) * fock::creation(32);
  CHECK(std::abs(fock::matrix_element(alpha, m, alpha) - cxd(3.0, 0.0)) <
        1e-9);
}

TEST_CASE("star exponential of zero") {
  const auto series = star_exponential(NormalSymbol(), -kI);
  CHECK(series.order == 0);
  CHECK(series.converged);
  CHECK(series.value.term_count() == 1);
  CHECK(series.value.coefficient(0, 0) == cxd(1.0, 0.0));
}

TEST_CASE("star exponential of the number symbol, closed form") {
  // value(alpha, conj alpha) = exp(|alpha|^2 (e^{-i w T} - 1))
  const NormalSymbol num = NormalSymbol::number();
  StarSeriesOptions opt;
  opt.max_order = 40;
  for (double wt : {0.5, 1.0, 2.0, 2.0 * M_PI}) {
    const auto series = star_exponential(num, -kI * wt, opt);
    CHECK(series.converged);
    for (double r : {0.2, 0.6, 1.0})
      for (double phi : {0.3, 2.1}) {
        const cxd alpha = r * std::exp(kI * phi);
        const cxd got = series.value.evaluate(alpha, std::conj(alpha));
        const cxd want =
            std::exp(std::norm(alpha) * (std::exp(-kI * wt) - cxd(1.0, 0.0)));
        CHECK(rel_err(got, want) <= 1e-8);
      }
  }
}

TEST_CASE("star exponential coefficients match the normal-order expansion") {
  // exp*(z a+a) carries (e^z - 1)^n / n! on the (n, n) pair.
  const cxd z = -kI * 1.0;
  const auto series = star_exponential(NormalSymbol::number(), z);
  const cxd base = std::exp(z) - cxd(1.0, 0.0);
  cxd want(1.0, 0.0);
  for (unsigned n = 0; n <= 8; ++n) {
    CHECK(std::abs(series.value.coefficient(n, n) - want) <= 1e-10);
    want *= base / double(n + 1);
  }
}

TEST_CASE("star exponential frozen spot value") {
  // z = -i pi at alpha = alpha* = 0.5: exp(0.25 (e^{-i pi} - 1)) = e^{-1/2}
  const auto series = star_exponential(NormalSymbol::number(), -kI * M_PI);
  const cxd got = series.value.evaluate(cxd(0.5, 0.0), cxd(0.5, 0.0));
  CHECK(std::abs(got - cxd(0.60653065971263342, 0.0)) < 1e-9);
  CHECK(std::abs(got - std::exp(cxd(0.25, 0.0) *
                                (std::exp(-kI * M_PI) - cxd(1.0, 0.0)))) <
        1e-10);
}

TEST_CASE("non-convergence is flagged, result still returned") {
  StarSeriesOptions opt;
  opt.max_order = 3;
  opt.tol = 1e-10;
  opt.allow_split = false;
  const auto series = star_exponential(NormalSymbol::number(), -kI, opt);
  CHECK_FALSE(series.converged);
  CHECK(series.order == 3);
  CHECK(series.tail_estimate > 1e-10);
  CHECK_FALSE(series.value.is_zero());
}

TEST_CASE("degree cap is flagged, not silent") {
  StarSeriesOptions opt;
  opt.degree_cap = 4;
  const auto series = star_exponential(NormalSymbol::number(), -kI * 2.0, opt);
  CHECK(series.degree_capped);
  CHECK(series.value.degree() <= 4);
}

TEST_CASE("interchange format round trip") {
  std::mt19937_64 rng(23);
  const NormalSymbol s = oracles::random_symbol(rng, 4);
  const NormalSymbol back = NormalSymbol::from_json(s.to_json());
  CHECK(coef_equal(s, back, 0.0));

  // order-insensitive, duplicates summed
  const NormalSymbol dup = NormalSymbol::from_json(
      "[[1,1,1.0,0.0],[0,2,0.5,-0.25],[1,1,2.0,0.0]]");
  CHECK(dup.coefficient(1, 1) == cxd(3.0, 0.0));
  CHECK(dup.coefficient(0, 2) == cxd(0.5, -0.25));

  CHECK_THROWS_AS(NormalSymbol::from_json("{"), Error);
  CHECK_THROWS_AS(NormalSymbol::from_json("[[1,1,1]]"), Error);
  CHECK_THROWS_AS(NormalSymbol::from_json("[[-1,0,1,0]]"), Error);
  try {
    NormalSymbol::from_json("not json");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
  }
}
