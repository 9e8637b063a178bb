#pragma once

#include <array>
#include <string>
#include <vector>

#include "kvtk/kgraph.hpp"
#include "kvtk/lie_series.hpp"
#include "kvtk/rational.hpp"

namespace kvtk {

constexpr int kLeafX = -1;
constexpr int kLeafY = -2;

/**
 * Rooted binary tree whose internal nodes are aerial vertices and whose
 * leaves are the ground letters x and y. Node 0 is the root; a child entry
 * is either kLeafX, kLeafY, or the index of another node, always larger
 * than the parent's index. The child order (first, second) is meaningful:
 * the symbol reads a node as [first, second].
 */
struct LieTree {
  std::vector<std::array<int, 2>> nodes;

  int n_aerial() const { return static_cast<int>(nodes.size()); }

  /// Throws std::invalid_argument if the index discipline is broken or the
  /// tree is not connected with node 0 as the unique root.
  void validate() const;

  bool operator==(const LieTree& other) const = default;
};

/// Parenthesized shape string, e.g. "((xy)x)". Child order preserved. Trees
/// are isomorphic up to sign exactly when their shapes agree after sorting
/// children, which the enumerator guarantees by construction.
std::string tree_shape(const LieTree& t);

/// Bracket notation for display, e.g. "[[x,y],x]".
std::string bracket_string(const LieTree& t);

/**
 * All geometric Lie trees with n aerial vertices, no duplicates up to
 * isomorphism-with-sign, in a deterministic order. Trees whose symbol
 * vanishes identically (a vertex bracketing two copies of the same subtree)
 * are skipped: their contributions cancel in every weighted sum.
 * pre: n_aerial >= 1.
 */
std::vector<LieTree> enumerate_lie_trees(int n_aerial);

/// The bracket monomial of the tree in the Lyndon basis; a node with
/// children (A, B) reads as [A, B]. Homogeneous of degree n_aerial + 1.
LieSeries<Rational> symbol(const LieTree& t);

/// The chain x acting n times on y: symbol ad(x)^n y, the unique Lie word
/// with a single y. pre: n >= 1.
LieTree lie_ladder(int n);

/// Aerial vertex i becomes graph vertex i+1; leaf x becomes an edge to G1,
/// leaf y an edge to G2. Child order becomes edge order.
KGraph to_kgraph(const LieTree& t);

}  // namespace kvtk
