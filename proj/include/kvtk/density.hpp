#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "kvtk/eye.hpp"
#include "kvtk/lie_algebra.hpp"
#include "kvtk/polynomial.hpp"
#include "kvtk/weight_cache.hpp"
#include "kvtk/weights.hpp"
#include "kvtk/wheels.hpp"

namespace kvtk {

enum class DensitySource { oracle, wheels };

/**
 * Truncated expansion of the density function D(x, y) on a concrete algebra,
 * as a polynomial in the 2*dim coordinates (x block first, then y block).
 *
 * The oracle carries exact rational coefficients in `exact` and `log_exact`;
 * the wheel expansion carries measured coefficients with first-order error
 * propagation from the per-wheel Monte Carlo estimates. `terms` is the
 * numeric view of either source, so comparisons read one layout. Both
 * sources have constant term exactly 1 and reduce to 1 at y = 0.
 */
struct DensityExpansion {
  std::string algebra;
  int max_total_degree = 0;
  DensitySource source = DensitySource::oracle;
  EyePoint xi;  // meaningful for wheels

  Polynomial exact;      // oracle only
  Polynomial log_exact;  // oracle only

  std::map<Monomial, double> terms;
  std::map<Monomial, double> coeff_stderr;  // all zero for the oracle
  std::map<Monomial, double> log_terms;     // log D in the same layout
  std::map<Monomial, double> log_stderr;

  long samples_per_wheel = 0;
  std::uint64_t seed = 0;
};

/**
 * Exact density expansion D = j^{1/2}(x) j^{1/2}(y) / j^{1/2}(Z(x, y)) via
 * log j(u) = tr log((1 - e^{-ad u}) / ad u) and the Hausdorff series for Z.
 * With use_q the determinant factor is built from sinh(s/2)/(s/2) instead;
 * the two agree identically because brackets have traceless ad.
 * pre: 0 <= degree <= 6.
 */
DensityExpansion density_oracle(const LieAlgebraSpec& alg, int degree,
                                bool use_q = false);

struct WheelMcParams {
  long samples = 200000;
  std::uint64_t seed = 1;
  int workers = 0;
  WeightCache* cache = nullptr;  // optional, shared with the weights cache
};

/**
 * Importance-sampled estimate of one wheel weight at the given chart point.
 * Computes the same integral as deformed_weight on w.to_kgraph() but draws
 * every aerial point from a mixture of the global heavy-tailed map and
 * radial shells around all candidate singular centers: both pinned points,
 * every point already placed, and their mirror images. The shells cover the
 * strata where points collapse onto a pin or onto each other, which keeps
 * the integrand-to-density ratio bounded and cuts the standard error about
 * an order of magnitude at the corners.
 */
WeightEstimate wheel_weight(const WheelGraph& w, const EyePoint& xi,
                            long samples, std::uint64_t seed, int workers = 0);

/**
 * Wheel expansion of the density at xi: exp of the weighted sum
 * sum_Gamma w_Gamma(xi) / cyc(Gamma) * tr-symbol(Gamma) over simple wheels
 * with up to min(degree, 3) aerial vertices. Per-wheel seeds derive from the
 * base seed and the canonical graph hash; estimates go through mc.cache when
 * given. Coefficient error bars propagate through the exponential to first
 * order.
 * pre: 0 <= degree <= 4. Note the degree-4 part only carries products of
 * smaller wheels; four-vertex wheels are outside the default enumeration.
 */
DensityExpansion density_from_wheels(const LieAlgebraSpec& alg,
                                     const EyePoint& xi, int degree,
                                     const WheelMcParams& mc);

}  // namespace kvtk
