#pragma once

#include <string>
#include <vector>

#include "kvtk/kgraph.hpp"
#include "kvtk/lie_algebra.hpp"
#include "kvtk/lie_trees.hpp"
#include "kvtk/polynomial.hpp"

namespace kvtk {

/// A spoke hangs off one hub of a wheel: either a direct edge to a ground
/// point or a whole Lie tree.
struct WheelSpoke {
  bool is_ground = true;
  int ground = 0;  // 0 = G1 (x), 1 = G2 (y); meaningful when is_ground
  LieTree tree;    // meaningful when !is_ground

  static WheelSpoke ground_x() { return WheelSpoke{true, 0, {}}; }
  static WheelSpoke ground_y() { return WheelSpoke{true, 1, {}}; }
  static WheelSpoke of_tree(LieTree t) { return WheelSpoke{false, 0, std::move(t)}; }

  /// "x", "y", or the tree shape; canonical key for rotation comparisons.
  std::string key() const;
  /// "x", "y", or the tree's bracket string.
  std::string display() const;
  int n_aerial() const { return is_ground ? 0 : tree.n_aerial(); }
};

/**
 * Simple wheel: a directed cycle of k >= 2 hubs, hub i pointing to hub i+1
 * (mod k), each hub carrying exactly one spoke. Stored in canonical rotation
 * (lexicographically minimal spoke key tuple).
 */
struct WheelGraph {
  std::vector<WheelSpoke> spokes;  // one per hub, in cycle order

  int hubs() const { return static_cast<int>(spokes.size()); }
  int n_aerial_total() const;

  /// Throws std::invalid_argument when the cycle is shorter than 2 (a single
  /// hub would need a loop or a double edge) or a spoke tree is invalid.
  void validate() const;

  /// Number of cyclic rotations mapping the wheel to itself.
  int cyclic_symmetry() const;

  /// Hubs become vertices 1..k with edge pair (next hub, spoke); spoke tree
  /// vertices follow, block by block.
  KGraph to_kgraph() const;
};

/// Cyclic word of factor names under a trace; equal when one is a rotation
/// of the other.
struct TraceWord {
  std::vector<std::string> factors;

  bool operator==(const TraceWord& other) const;
  std::string str() const;  // "tr(ad x ad [x,y] ...)"
};

TraceWord trace_word(const WheelGraph& w);

/**
 * All simple wheels with the given total aerial count (hubs plus spoke tree
 * vertices), deduplicated under cyclic rotation, deterministic order.
 * Spoke trees larger than max_spoke_aerial vertices are not attached.
 * pre: n_aerial_total >= 2, max_spoke_aerial >= 0.
 */
std::vector<WheelGraph> enumerate_wheels(int n_aerial_total,
                                         int max_spoke_aerial);

/// Trace of the product of ad matrices of the spoke symbols, in cycle order,
/// as a polynomial in the 2*dim coordinates of the algebra. Invariant under
/// rotation of the wheel; zero on abelian algebras.
Polynomial wheel_symbol(const WheelGraph& w, const LieAlgebraSpec& alg);

}  // namespace kvtk
