#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "kvtk/eye.hpp"
#include "kvtk/kgraph.hpp"
#include "kvtk/rational.hpp"

namespace kvtk {

struct WeightEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
  long samples = 0;
  std::uint64_t seed = 0;
  long bad_samples = 0;  // non-finite integrand evaluations, reported not hidden
};

/**
 * Angle at p between the vertical geodesic (p, infinity) and the geodesic
 * from p to q, measured as arg((q - p) / (q - conj p)). Vanishes when p sits
 * on the real axis, which is what makes the boundary faces degenerate.
 * errors: coincident points.
 */
double angle(std::complex<double> p, std::complex<double> q);

/// Partial derivatives of angle(p, q) in (Re p, Im p, Re q, Im q).
std::array<double, 4> angle_gradient(std::complex<double> p,
                                     std::complex<double> q);

/**
 * Monte Carlo estimate of the weight of an admissible graph with the two
 * ground points gauge-fixed at 0 and 1: (2 pi)^{-2n} times the integral of
 * the determinant of edge-angle differentials, rows in vertex-major edge
 * order, columns (x1, y1, ..., xn, yn). The overall orientation is the one
 * that makes the one-vertex two-ground graph come out +1/2.
 * errors: invalid graph, graph without ground points, samples < 1.
 */
WeightEstimate weight_mc(const KGraph& g, long samples, std::uint64_t seed,
                         int workers = 0);

/// Same integral with the ground markers moved to the two pinned points of
/// xi; at corner_01 this is weight_mc bit for bit.
WeightEstimate deformed_weight(const KGraph& g, const EyePoint& xi,
                               long samples, std::uint64_t seed,
                               int workers = 0);

/**
 * Reusable evaluator of the raw integrand of deformed_weight: the
 * (2 pi)^{-2n}-normalized determinant of edge-angle differentials at one
 * configuration of aerial points. The edge rows are fixed at construction;
 * evaluation is cheap, thread safe, and NaN at exact point collisions.
 * Custom samplers divide out their own density around this.
 */
class GraphIntegrand {
 public:
  GraphIntegrand(const KGraph& g, const EyePoint& xi);

  /// pre: pts.size() == n_aerial of the graph.
  double operator()(const std::vector<std::complex<double>>& pts) const;

  int n_aerial() const { return n_; }

 private:
  struct Row {
    int src = 0;             // 0-based aerial vertex
    int aerial_target = -1;  // 0-based aerial vertex, or -1 when pinned
    std::complex<double> pinned{};
  };
  std::vector<Row> rows_;
  int n_ = 0;
};

/**
 * Weight of the one-aerial-vertex graph with three ground edges, the middle
 * ground point integrated over (0, 1). This graph breaks the two-edge rule,
 * so it lives outside KGraph; it is exactly the extra face the ground-split
 * Stokes identity needs. Normalization (2 pi)^{-3}, orientation fixed by the
 * reference value +1/6.
 */
WeightEstimate weight_three_edge_ground(long samples, std::uint64_t seed,
                                        int workers = 0);

/// Exact lid weight ((-1)^n / n!) B_n(t) with t = theta / pi.
Rational bernoulli_lid_exact(int n, const Rational& t);
double bernoulli_lid(int n, double theta);

/**
 * Dimension-mismatched configurations whose boundary-face sums should
 * vanish. Exactly three kinds are supported:
 *
 *   ground_split    the fixed configuration whose faces carry the weights
 *                   1/6 (three-edge graph), 1/12 (two-step ladder) and
 *                   (1/2)^2 (split into two one-vertex graphs)
 *   aerial_tail     a graph with one single-edged vertex (2n-1 edges in
 *                   total); only inputs whose every two-vertex contraction
 *                   degenerates to a loop or double edge are accepted, and
 *                   their residual is exactly 0
 *   lid_difference  central finite difference of the ladder weight along
 *                   the upper lid against the exact transport term
 */
struct ExtendedGraph {
  enum class Kind { ground_split, aerial_tail, lid_difference };

  Kind kind = Kind::ground_split;
  // aerial_tail: (source vertex 1-based, target) in row order.
  int n_aerial = 0;
  std::vector<std::pair<int, Target>> tail_edges;
  // lid_difference
  int ladder_n = 2;
  double theta = 0.0;

  static ExtendedGraph ground_split();
  static ExtendedGraph aerial_tail(int n_aerial,
                                   std::vector<std::pair<int, Target>> edges);
  static ExtendedGraph lid_difference(int ladder_n, double theta);
};

/// Step used by the lid finite difference.
constexpr double kLidDelta = 3.14159265358979323846 / 32.0;

/**
 * Signed sum of the boundary-face weights of the extended graph; close to 0
 * when the Stokes argument holds. errors: std::invalid_argument on an
 * unsupported face (a non-degenerate contraction) or a lid theta too close
 * to a corner for the finite difference.
 */
double stokes_residual(const ExtendedGraph& eg, long samples,
                       std::uint64_t seed, int workers = 0);

}  // namespace kvtk
