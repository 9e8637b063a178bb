#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "kvtk/kgraph.hpp"
#include "kvtk/lie_algebra.hpp"
#include "kvtk/polynomial.hpp"
#include "kvtk/weight_cache.hpp"

namespace kvtk {

/**
 * Linear Poisson structure on the dual of a Lie algebra:
 * alpha^{ij}(z) = scale * sum_k c^k_{ij} z_k, antisymmetric in (i, j).
 * The default scale 1/2 makes the bracket of coordinates half the Lie
 * bracket, the normalization under which the star commutator of two
 * coordinates reproduces the full bracket.
 */
struct LinearPoisson {
  LieAlgebraSpec alg;
  Rational scale = Rational(1, 2);

  /// alpha^{ij} as an exact polynomial in the z coordinates.
  Polynomial alpha(int i, int j, int max_degree) const;
};

/**
 * Relabeling of a graph's aerial vertices plus an optional swap of each
 * vertex's ordered edge pair. Applying a numbering with k swaps flips the
 * sign of both the weight integrand and the bidifferential operator, so
 * weighted contributions are numbering independent.
 */
struct Numbering {
  std::vector<int> vertex_order;  // new label of old aerial vertex v
  std::vector<bool> swap_edges;   // indexed by old aerial vertex

  static Numbering identity(int n_aerial);
  /// pre: sizes match g.n_aerial and vertex_order is a permutation.
  KGraph applied_to(const KGraph& g) const;
};

/**
 * The bidifferential operator of a graph: sum over all maps from edges to
 * coordinate indices of the product of alpha factors (one per aerial vertex,
 * derived along incoming edges) times the derivatives of f and h along the
 * edges into the two ground vertices. Exact rational output; bilinear in
 * (f, h), linear in alpha, degree deg f + deg h - n_aerial.
 * pre: g admissible with two ground markers.
 */
Polynomial apply_B(const KGraph& g, const Numbering& numbering,
                   const LinearPoisson& alpha, const Polynomial& f,
                   const Polynomial& h);

/// Numbered copies of the geometric class of g: n! 2^n / |Aut|, with the
/// automorphism group counted by brute force over relabelings and edge
/// swaps. Shared bookkeeping for every module that sums over graphs.
long star_multiplicity(const KGraph& g);

struct StarGraphClass {
  KGraph rep;  // stored edge order; weights and operators both consume it
  long count = 0;  // numbered graphs in the class, equals star_multiplicity
};

/// One representative per geometric class of admissible graphs with the
/// given number of aerial vertices, each with its numbered count.
/// pre: 1 <= n_aerial <= 3.
std::vector<StarGraphClass> enumerate_star_graphs(int n_aerial);

constexpr int kStarOrderCeiling = 3;

struct StarMcParams {
  long samples = 200000;
  std::uint64_t seed = 1;
  int workers = 0;
  WeightCache* cache = nullptr;
};

/// Truncated star product with Monte Carlo graph weights.
struct StarResult {
  int nvars = 0;
  int order = 0;
  std::map<Monomial, double> terms;
  std::map<Monomial, double> coeff_stderr;
  long samples_per_graph = 0;
  std::uint64_t seed = 0;
};

/**
 * f star h through the given order: the plain product plus, for each n up
 * to order, 1/n! times the sum over geometric classes of count * weight *
 * B. Weights are measured at the corner chart with per-graph seeds derived
 * from the base seed and the canonical hash, through mc.cache when given.
 * pre: 0 <= order <= kStarOrderCeiling.
 */
StarResult star(const Polynomial& f, const Polynomial& h, int order,
                const LinearPoisson& alpha, const StarMcParams& mc);

}  // namespace kvtk
