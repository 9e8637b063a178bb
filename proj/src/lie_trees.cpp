#include "kvtk/lie_trees.hpp"

#include <map>
#include <stdexcept>

namespace kvtk {

void LieTree::validate() const {
  const int n = n_aerial();
  if (n < 1) throw std::invalid_argument("LieTree: needs at least one vertex");
  std::vector<int> indegree(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    for (int child : nodes[static_cast<std::size_t>(i)]) {
      if (child == kLeafX || child == kLeafY) continue;
      if (child <= i || child >= n)
        throw std::invalid_argument(
            "LieTree: child indices must point to later nodes");
      ++indegree[static_cast<std::size_t>(child)];
    }
  }
  // Index discipline already forbids cycles; a unique root plus full
  // coverage pins the shape down.
  if (indegree[0] != 0)
    throw std::invalid_argument("LieTree: node 0 must be the root");
  for (int i = 1; i < n; ++i)
    if (indegree[static_cast<std::size_t>(i)] != 1)
      throw std::invalid_argument("LieTree: every non-root needs one parent");
}

namespace {

std::string shape_of(const LieTree& t, int node) {
  if (node == kLeafX) return "x";
  if (node == kLeafY) return "y";
  const auto& [a, b] = t.nodes[static_cast<std::size_t>(node)];
  return "(" + shape_of(t, a) + shape_of(t, b) + ")";
}

std::string bracket_of(const LieTree& t, int node) {
  if (node == kLeafX) return "x";
  if (node == kLeafY) return "y";
  const auto& [a, b] = t.nodes[static_cast<std::size_t>(node)];
  return "[" + bracket_of(t, a) + "," + bracket_of(t, b) + "]";
}

}  // namespace

std::string tree_shape(const LieTree& t) { return shape_of(t, 0); }

std::string bracket_string(const LieTree& t) { return bracket_of(t, 0); }

namespace {

/// Canonical trees with exactly k aerial vertices, memoized per call chain.
/// Children are generated child-shape-sorted (shape(first) < shape(second)),
/// which both fixes one representative per isomorphism class and drops the
/// self-paired trees whose symbol is zero.
class TreeEnumerator {
 public:
  const std::vector<LieTree>& trees(int k) {
    auto it = cache_.find(k);
    if (it != cache_.end()) return it->second;
    std::vector<LieTree> out;
    // A slot is a leaf or a subtree; sizes (ka, kb) with ka + kb = k - 1.
    for (int ka = 0; ka <= k - 1; ++ka) {
      const int kb = k - 1 - ka;
      for (const auto& [sa, ta] : slots(ka)) {
        for (const auto& [sb, tb] : slots(kb)) {
          if (sa >= sb) continue;
          out.push_back(graft(ta, tb));
        }
      }
    }
    return cache_.emplace(k, std::move(out)).first->second;
  }

 private:
  // (shape, tree) pairs for a slot of the given aerial size; size 0 gives
  // the two leaves, encoded as trees with a negative sentinel.
  using Slot = std::pair<std::string, LieTree>;

  std::vector<Slot> slots(int k) {
    std::vector<Slot> out;
    if (k == 0) {
      out.push_back({"x", leaf_marker(kLeafX)});
      out.push_back({"y", leaf_marker(kLeafY)});
      return out;
    }
    for (const auto& t : trees(k)) out.push_back({tree_shape(t), t});
    return out;
  }

  static LieTree leaf_marker(int leaf) {
    LieTree t;
    t.nodes.push_back({leaf, leaf});  // placeholder, consumed by graft()
    return t;
  }

  static bool is_leaf_marker(const LieTree& t) {
    return t.nodes.size() == 1 && t.nodes[0][0] < 0 && t.nodes[0][0] == t.nodes[0][1];
  }

  /// New tree with a fresh root over the two slots, shifting subtree indices.
  static LieTree graft(const LieTree& a, const LieTree& b) {
    LieTree t;
    t.nodes.push_back({0, 0});
    auto append = [&t](const LieTree& sub) -> int {
      if (is_leaf_marker(sub)) return sub.nodes[0][0];
      const int offset = t.n_aerial();
      for (const auto& [ca, cb] : sub.nodes)
        t.nodes.push_back({ca >= 0 ? ca + offset : ca, cb >= 0 ? cb + offset : cb});
      return offset;
    };
    const int ra = append(a);
    const int rb = append(b);
    t.nodes[0] = {ra, rb};
    return t;
  }

  std::map<int, std::vector<LieTree>> cache_;
};

}  // namespace

std::vector<LieTree> enumerate_lie_trees(int n_aerial) {
  if (n_aerial < 1)
    throw std::invalid_argument("enumerate_lie_trees: n_aerial >= 1 required");
  TreeEnumerator e;
  std::vector<LieTree> out = e.trees(n_aerial);
  for (const auto& t : out) t.validate();
  return out;
}

namespace {

LieSeries<Rational> symbol_of(const LieTree& t, int node, int max_degree) {
  if (node == kLeafX)
    return LieSeries<Rational>::generator(0, 2, max_degree);
  if (node == kLeafY)
    return LieSeries<Rational>::generator(1, 2, max_degree);
  const auto& [a, b] = t.nodes[static_cast<std::size_t>(node)];
  return bracket(symbol_of(t, a, max_degree), symbol_of(t, b, max_degree),
                 max_degree);
}

}  // namespace

LieSeries<Rational> symbol(const LieTree& t) {
  t.validate();
  return symbol_of(t, 0, t.n_aerial() + 1);
}

LieTree lie_ladder(int n) {
  if (n < 1) throw std::invalid_argument("lie_ladder: n >= 1 required");
  LieTree t;
  for (int i = 0; i + 1 < n; ++i) t.nodes.push_back({kLeafX, i + 1});
  t.nodes.push_back({kLeafX, kLeafY});
  return t;
}

KGraph to_kgraph(const LieTree& t) {
  t.validate();
  KGraph g;
  g.n_aerial = t.n_aerial();
  g.n_ground = 2;
  auto target = [](int child) -> Target {
    if (child == kLeafX) return kGround1;
    if (child == kLeafY) return kGround2;
    return child + 1;
  };
  for (const auto& [a, b] : t.nodes) g.edges.push_back({target(a), target(b)});
  g.validate();
  return g;
}

}  // namespace kvtk
