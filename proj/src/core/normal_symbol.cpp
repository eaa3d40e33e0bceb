#include "core/normal_symbol.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <json.hpp>

namespace phasestar {

namespace {
constexpr double kDropRelative = 1e-15;
}

NormalSymbol NormalSymbol::constant(cxd c) { return monomial(0, 0, c); }

NormalSymbol NormalSymbol::monomial(unsigned m, unsigned n, cxd c) {
  NormalSymbol s;
  s.add_term(m, n, c);
  return s;
}

NormalSymbol NormalSymbol::annihilator() { return monomial(0, 1); }
NormalSymbol NormalSymbol::creator() { return monomial(1, 0); }
NormalSymbol NormalSymbol::number() { return monomial(1, 1); }

cxd NormalSymbol::coefficient(unsigned m, unsigned n) const {
  auto it = terms_.find({m, n});
  return it == terms_.end() ? cxd(0.0, 0.0) : it->second;
}

unsigned NormalSymbol::degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.m + e.n);
  return d;
}

unsigned NormalSymbol::degree_alpha() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.n);
  return d;
}

unsigned NormalSymbol::degree_alpha_star() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.m);
  return d;
}

void NormalSymbol::add_term(unsigned m, unsigned n, cxd c) {
  terms_[{m, n}] += c;
  canonicalize();
}

void NormalSymbol::canonicalize() {
  double maxmag = 0.0;
  for (const auto& [e, c] : terms_) maxmag = std::max(maxmag, std::abs(c));
  const double thr = kDropRelative * maxmag;
  for (auto it = terms_.begin(); it != terms_.end();) {
    const double mag = std::abs(it->second);
    if (mag == 0.0 || mag < thr)
      it = terms_.erase(it);
    else
      ++it;
  }
}

NormalSymbol& NormalSymbol::operator+=(const NormalSymbol& o) {
  for (const auto& [e, c] : o.terms_) terms_[e] += c;
  canonicalize();
  return *this;
}

NormalSymbol& NormalSymbol::operator-=(const NormalSymbol& o) {
  for (const auto& [e, c] : o.terms_) terms_[e] -= c;
  canonicalize();
  return *this;
}

NormalSymbol& NormalSymbol::operator*=(cxd s) {
  for (auto& [e, c] : terms_) c *= s;
  canonicalize();
  return *this;
}

cxd NormalSymbol::evaluate(cxd a, cxd a_star) const {
  if (terms_.empty()) return {0.0, 0.0};
  const unsigned dm = degree_alpha_star();
  const unsigned dn = degree_alpha();

  thread_local std::vector<cxd> pa, ps;
  pa.resize(dn + 1);
  ps.resize(dm + 1);
  pa[0] = 1.0;
  for (unsigned k = 1; k <= dn; ++k) pa[k] = pa[k - 1] * a;
  ps[0] = 1.0;
  for (unsigned k = 1; k <= dm; ++k) ps[k] = ps[k - 1] * a_star;

  cxd acc(0.0, 0.0);
  for (const auto& [e, c] : terms_) acc += c * ps[e.m] * pa[e.n];
  return acc;
}

double NormalSymbol::disk_bound(double radius) const {
  double acc = 0.0;
  for (const auto& [e, c] : terms_)
    acc += std::abs(c) * std::pow(radius, double(e.m + e.n));
  return acc;
}

double NormalSymbol::truncate_degree(unsigned cap, double radius) {
  double removed = 0.0;
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->first.m + it->first.n > cap) {
      removed += std::abs(it->second) *
                 std::pow(radius, double(it->first.m + it->first.n));
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  return removed;
}

std::string NormalSymbol::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [e, c] : terms_)
    arr.push_back({e.m, e.n, c.real(), c.imag()});
  return arr.dump();
}

NormalSymbol NormalSymbol::from_json(const std::string& text) {
  nlohmann::json arr;
  try {
    arr = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorCode::ParseError, std::string("symbol: bad JSON: ") + e.what());
  }
  if (!arr.is_array())
    raise(ErrorCode::ParseError, "symbol: expected a list of [m,n,re,im]");
  NormalSymbol s;
  for (const auto& rec : arr) {
    if (!rec.is_array() || rec.size() != 4 || !rec[0].is_number() ||
        !rec[1].is_number() || !rec[2].is_number() || !rec[3].is_number())
      raise(ErrorCode::ParseError, "symbol: record is not [m,n,re,im]");
    const double md = rec[0].get<double>();
    const double nd = rec[1].get<double>();
    if (md < 0 || nd < 0 || md != std::floor(md) || nd != std::floor(nd))
      raise(ErrorCode::ParseError, "symbol: exponents must be nonneg integers");
    s.terms_[{unsigned(md), unsigned(nd)}] +=
        cxd(rec[2].get<double>(), rec[3].get<double>());
  }
  s.canonicalize();
  return s;
}

NormalSymbol star_multiply(const NormalSymbol& b, const NormalSymbol& c) {
  NormalSymbol out;
  for (const auto& [eb, cb] : b.terms())
    for (const auto& [ec, cc] : c.terms()) {
      const unsigned kmax = std::min(eb.n, ec.m);
      cxd f = cb * cc;
      out.terms_[{eb.m + ec.m, eb.n + ec.n}] += f;
      for (unsigned k = 1; k <= kmax; ++k) {
        f *= double(eb.n - k + 1) * double(ec.m - k + 1) / double(k);
        out.terms_[{eb.m + ec.m - k, eb.n + ec.n - k}] += f;
      }
    }
  out.canonicalize();
  return out;
}

NormalSymbol star_commutator(const NormalSymbol& b, const NormalSymbol& c) {
  return star_multiply(b, c) - star_multiply(c, b);
}

NormalSymbol star_power(const NormalSymbol& b, unsigned k) {
  NormalSymbol acc = NormalSymbol::constant(1.0);
  for (unsigned i = 0; i < k; ++i) acc = star_multiply(acc, b);
  return acc;
}

StarSeries star_exponential(const NormalSymbol& h, cxd z,
                            const StarSeriesOptions& opt) {
  if (opt.max_order < 1)
    raise(ErrorCode::InvalidArgument, "star_exponential: max_order < 1");
  if (!(opt.tol > 0.0))
    raise(ErrorCode::InvalidArgument, "star_exponential: tol <= 0");

  StarSeries out;
  if (h.is_zero() || z == cxd(0.0, 0.0)) {
    out.value = NormalSymbol::constant(1.0);
    return out;
  }

  const double R = opt.ref_radius;

  // Exact semigroup factorization exp*(zH) = exp*(zH/p)^{*p}, chosen so the
  // factor's series stays in its fast-converging regime.  The factors are
  // applied one at a time: multiplying by the low-degree, near-identity
  // factor is well conditioned, unlike repeated squaring, where high-degree
  // term pairs contract through factorially large coefficients that must
  // cancel.
  int n_factors = 1;
  if (opt.allow_split) {
    const double load = std::abs(z) * h.disk_bound(R);
    if (load > opt.split_threshold)
      n_factors = std::min(4096, int(std::ceil(load / opt.split_threshold)));
  }
  const cxd zs = z / double(n_factors);
  const double sub_tol =
      n_factors == 1
          ? opt.tol
          : std::max(opt.tol / double(n_factors) / double(n_factors), 1e-300);

  NormalSymbol factor = NormalSymbol::constant(1.0);
  NormalSymbol term = NormalSymbol::constant(1.0);
  double tail = 0.0;
  bool converged = false;
  int order = 0;
  for (int k = 1; k <= opt.max_order; ++k) {
    term = star_multiply(term, h);
    term *= zs / double(k);
    if (opt.degree_cap > 0 && term.degree() > opt.degree_cap) {
      const double removed = term.truncate_degree(opt.degree_cap, R);
      if (removed > 0.0) out.degree_capped = true;
    }
    factor += term;
    tail = term.disk_bound(R);
    order = k;
    if (tail < sub_tol) {
      converged = true;
      break;
    }
  }

  NormalSymbol acc = factor;
  double err_bound = tail;
  if (n_factors > 1) {
    const double b_factor = std::max(factor.disk_bound(R), 1.0);
    for (int j = 1; j < n_factors; ++j) {
      acc = star_multiply(acc, factor);
      if (opt.degree_cap > 0 && acc.degree() > opt.degree_cap) {
        const double removed = acc.truncate_degree(opt.degree_cap, R);
        if (removed > 0.0) out.degree_capped = true;
      }
      err_bound =
          err_bound * b_factor + std::max(acc.disk_bound(R), 1.0) * tail;
    }
  }

  out.value = std::move(acc);
  out.order = order;
  out.tail_estimate = err_bound;
  out.converged = converged;
  out.splits = n_factors - 1;
  return out;
}

}  // namespace phasestar
