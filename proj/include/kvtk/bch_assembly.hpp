#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "kvtk/eye.hpp"
#include "kvtk/lie_series.hpp"
#include "kvtk/weight_cache.hpp"

namespace kvtk {

/**
 * Z_xi(x,y) = x + y + sum_Gamma w_Gamma(xi) Gamma(x,y), summed over Lie
 * trees with up to order-1 aerial vertices. Coefficients live in the Lyndon
 * basis; the degree-1 part is exact, every higher coefficient carries a
 * Monte Carlo error bar (quadrature over the contributing graphs).
 */
struct DeformedBch {
  EyePoint xi;
  int order = 0;
  LieSeries<double> series;
  std::map<Word, double> coeff_stderr;
  long samples_per_graph = 0;
  std::uint64_t seed = 0;
};

/// Truncation ceiling of assemble (three aerial vertices).
constexpr int kAssembleOrderCeiling = 4;

/**
 * Assembles the deformed series through the given truncation order. Each
 * graph integrates under its own seed derived from `seed` and the canonical
 * graph hash, so a graph keeps its estimate no matter how the enumeration
 * is ordered or which other graphs run alongside. With a cache, finished
 * integrals are reused across calls and path points.
 * pre: 1 <= order <= kAssembleOrderCeiling.
 */
DeformedBch assemble(const EyePoint& xi, int order, long samples,
                     std::uint64_t seed, WeightCache* cache = nullptr,
                     int workers = 0);

/**
 * Truncated difference Z_xi(Z_xi(x,y),w) - Z_xi(x,Z_xi(y,w)) through total
 * degree 3 in the three-letter Lyndon basis (letters x, y, w). Only two
 * coefficients survive at this order; writing c1 for the [x,y] coefficient
 * of Z_xi, c2 for [x,[x,y]] and c2' for [y,[y,x]], they are
 *
 *   coefficient of [x,[y,w]]:   c2 - c2'
 *   coefficient of [[x,w],y]:   c2 + 2 c2' - c1^2
 *
 * Corner and iris points use exact rational inputs and return exact zeros;
 * lid points take c1, c2 from the closed-form lid weights and only c2' from
 * Monte Carlo; interior points measure all three. Error bars are first
 * order in the input errors.
 */
struct AssociativityDefect {
  EyePoint xi;
  LieSeries<double> series;
  std::map<Word, double> coeff_stderr;
};

AssociativityDefect associativity_defect(const EyePoint& xi, int order = 3,
                                         long samples = 200000,
                                         std::uint64_t seed = 1,
                                         int workers = 0);

/**
 * Coefficient table of assemble along a path of eye points, plus centered
 * finite differences with respect to the chart parameter. Lid paths (with
 * corner endpoints allowed) differentiate in theta; interior or iris paths
 * fall back to the point index as parameter. Rows with no two neighbours
 * keep an empty derivative map, and a repeated parameter with identical
 * coefficients differentiates to zero.
 * errors: std::invalid_argument on chart mixing beyond lid-corner overlap
 * or on coincident parameters with differing coefficients.
 */
struct PathTrace {
  std::vector<EyePoint> points;
  std::vector<double> params;
  std::vector<std::map<Word, double>> coeffs;
  std::vector<std::map<Word, double>> errors;
  std::vector<std::map<Word, double>> fd;
};

PathTrace path_trace(const std::vector<EyePoint>& path, int order,
                     long samples, std::uint64_t seed,
                     WeightCache* cache = nullptr, int workers = 0);

}  // namespace kvtk
