#pragma once

#include <string>
#include <utility>
#include <vector>

#include "kvtk/lie_algebra.hpp"
#include "kvtk/lie_series.hpp"
#include "kvtk/polynomial.hpp"
#include "kvtk/rational.hpp"

namespace kvtk {

/**
 * Sign placement in the defining equation. kv_original reads
 *
 *   x + y - log(exp(y) exp(x)) = (1 - exp(-ad x)) F + (exp(ad y) - 1) G
 *
 * and is the convention under which the classical leading terms F1 = y/4,
 * G1 = -x/4 solve the symmetric system. paper_transcribed reads
 *
 *   x + y - log(exp(x) exp(y)) = (exp(ad x) - 1) F + (1 - exp(ad y)) G
 *
 * and its symmetric system already fails at degree 2, which solve_FG
 * reports rather than papers over.
 */
enum class KVConvention { kv_original, paper_transcribed };

/**
 * Solution of the defining equation through `order`: F and G are Lie series
 * without constant term, exact rationals in the Lyndon basis, degrees up to
 * order - 1. The solution space is affine; `kernel` holds (dF, dG) basis
 * directions along which the equation stays satisfied, `free_parameters`
 * describes them in words. The particular solution has minimal support:
 * every kernel coordinate is set to zero.
 */
struct KVSolution {
  int order = 0;
  KVConvention convention = KVConvention::kv_original;
  bool symmetric = true;
  LieSeries<Rational> F;
  LieSeries<Rational> G;
  std::vector<std::pair<LieSeries<Rational>, LieSeries<Rational>>> kernel;
  std::string free_parameters;
};

/**
 * Exact degree-by-degree linear solve of the defining equation in the
 * Lyndon basis. With `symmetric`, G is tied to F by G(x,y) = F(-y,-x) and
 * only F carries unknowns.
 * pre: 2 <= order <= 6.
 * errors: std::runtime_error naming the first infeasible degree.
 */
KVSolution solve_FG(int order,
                    KVConvention convention = KVConvention::kv_original,
                    bool symmetric = true);

/// The involution F(x,y) -> F(-y,-x) used by the symmetric ansatz.
LieSeries<Rational> kv_symmetry(const LieSeries<Rational>& f);

/**
 * Both sides of the trace condition on a concrete algebra,
 *
 *   tr(ad x dF/dx + ad y dG/dy) = T(x,y),
 *   T = (1/2) tr( h(ad x) + h(ad y) - h(ad Z) - 1 ),  h(s) = s/(e^s - 1),
 *
 * as exact polynomials in the 2*dim coordinates through degree order - 1.
 * The trace of h(ad Z) does not depend on the product order inside Z: the
 * two Hausdorff products are conjugate, so their ad-traces agree.
 */
struct TraceReport {
  std::string algebra;
  int order = 0;
  Polynomial lhs;
  Polynomial rhs;
  Polynomial residual;  // lhs - rhs, term by term
};

TraceReport verify_trace(const KVSolution& sol, const LieAlgebraSpec& alg,
                         int order);

/**
 * Solves the defining equation and the trace condition on `alg` jointly:
 * the kernel of solve_FG is the search space, the trace residual the
 * constraint. Returns the adjusted solution with the surviving kernel.
 * errors: std::runtime_error when no kernel direction can cancel the trace
 * residual.
 */
KVSolution solve_joint(const LieAlgebraSpec& alg, int order,
                       KVConvention convention = KVConvention::kv_original,
                       bool symmetric = true);

/**
 * Residual of the scaling differential equation
 *
 *   d/dt Z_t = [x, F_t] . dZ_t/dx + [y, G_t] . dZ_t/dy,
 *
 * with Z_t(x,y) = Z(tx,ty)/t and F_t(x,y) = F(tx,ty)/t. Every term of Lie
 * degree n carries the same power t^{n-2}, so the returned series stores
 * the coefficient of t^{n-2} in its degree-n component; the residual is
 * identically zero in t exactly when the series is zero.
 */
LieSeries<Rational> verify_eqdiff(const KVSolution& sol, int order);

/**
 * d_n = (n+1) b_{n+1} - b_n / 4 with b_n the single-y Hausdorff
 * coefficients; these are the constants the scaling equation produces in
 * its single-y sector. pre: 0 <= n <= 6.
 */
Rational bernoulli_d(int n);

/**
 * Residual of the Jacobian-factor identity
 *
 *   j^{-1/2}(tx) d/dt j^{1/2}(tx) = (1/2) tr( ad x / (e^{t ad x} - 1) - 1/t )
 *
 * on a concrete algebra. Both sides live on the t-graded ring where the
 * coordinate-degree-k component is the coefficient of t^{k-1}; the left
 * side expands log j through the Mercator series of (1 - e^{-s})/s, the
 * right through Bernoulli numbers, and the two must cancel through
 * coordinate degree `order` (t powers 0 .. order-1).
 * pre: 1 <= order <= 8. The result uses the x half of the coordinate ring.
 */
Polynomial j_series_check(const LieAlgebraSpec& alg, int order);

/**
 * Residual of the density transport equation, divided by the density:
 *
 *   d/dt log D_t = tr(ad x dF_t/dx + ad y dG_t/dy)
 *                  + [x, F_t] . d(log D_t)/dx + [y, G_t] . d(log D_t)/dy,
 *
 * with D the quotient j^{1/2}(x) j^{1/2}(y) / j^{1/2}(Z). Again every
 * coordinate-degree-k term carries t^{k-1}, so the residual is returned on
 * the plain coordinate ring. Zero through `order` for a solution of the
 * joint system on `alg`.
 * pre: sol from solve_joint on the same algebra, order <= sol.order - 1.
 */
Polynomial density_transport_check(const KVSolution& sol,
                                   const LieAlgebraSpec& alg, int order);

}  // namespace kvtk
