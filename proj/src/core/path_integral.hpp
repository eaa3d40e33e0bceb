#ifndef PHASESTAR_CORE_PATH_INTEGRAL_HPP
#define PHASESTAR_CORE_PATH_INTEGRAL_HPP

#include <optional>
#include <span>
#include <vector>

#include "core/complex_plane.hpp"
#include "core/fock.hpp"
#include "core/normal_symbol.hpp"
#include "core/quasiprob.hpp"

namespace phasestar::pathint {

struct SliceConfig {
  int slices = 1;           // N
  double total_time = 1.0;  // T, units 1/energy
  cxd alpha_i{0.0, 0.0};
  cxd alpha_f{0.0, 0.0};

  double epsilon() const { return total_time / slices; }
};

// Exponent of the time-sliced amplitude for a fixed path alpha_0..alpha_N:
// -|a0|^2/2 - |aN|^2/2 - sum_{1..N-1} |aj|^2 + sum_{1..N} conj(aj) a_{j-1}
// - i eps sum_{1..N} H(a_{j-1}, conj(aj)).
cxd discrete_exponent(std::span<const cxd> path, const NormalSymbol& h,
                      double epsilon);

// |LHS - RHS| of the symmetric-difference rearrangement of the kinetic part;
// exact algebra, so the residual is rounding noise.  Needs N >= 2.
double novikov_identity_residual(std::span<const cxd> path, double epsilon);

// Scale of the terms entering the identity, for relative residual checks.
double novikov_term_scale(std::span<const cxd> path);

// <alpha_f| (1 - i eps H)^N |alpha_i> as N-1 chained two-dimensional
// quadratures over the intermediate labels (transfer-kernel contraction).
// The per-slice factor is the exact sandwich (1 - i eps H(a_{j-1}, conj aj)),
// so for polynomial H this equals the operator product at every finite N, up
// to quadrature and truncation tolerances.  Requires a gaussian-factored
// rule with scale 1.
cxd sliced_amplitude(const SliceConfig& cfg, const NormalSymbol& h,
                     const ComplexPlaneRule& rule);

struct StarAmplitudeResult {
  cxd value{0.0, 0.0};
  StarSeries series;
};

// <alpha_f|alpha_i> times the star exponential of -iT H evaluated at
// (alpha, alpha*) = (alpha_i, conj(alpha_f)).
StarAmplitudeResult star_amplitude(const SliceConfig& cfg,
                                   const NormalSymbol& h,
                                   const StarSeriesOptions& opt = {});

struct CompareParams {
  bool want_star = true;
  bool want_oracle = true;
  bool want_sliced = false;
  bool want_optical = false;
  int fock_dim = 0;  // 0 = auto from the labels and the symbol degree
  StarSeriesOptions series;
  int rule_nodes = 64;
};

// One transition amplitude computed by up to four routes.  Pairwise errors
// are recomputed from the stored values on demand, never stored.
struct AmplitudeReport {
  std::optional<cxd> star_value;
  std::optional<cxd> oracle_value;
  std::optional<cxd> sliced_value;
  std::optional<cxd> optical_value;

  int fock_dim = 0;
  int series_order = 0;
  double tail_estimate = 0.0;
  bool series_converged = true;
  int series_splits = 0;
  int slices = 0;
  int rule_nodes = 0;

  static double relative_error(cxd a, cxd b);
  double max_pairwise_error() const;
};

int auto_fock_dim(const SliceConfig& cfg, const NormalSymbol& h);

AmplitudeReport compare_all(const SliceConfig& cfg, const NormalSymbol& h,
                            const CompareParams& params);

}  // namespace phasestar::pathint

#endif
