#include "kvtk/wheels.hpp"

#include <algorithm>
#include <stdexcept>

namespace kvtk {

std::string WheelSpoke::key() const {
  if (is_ground) return ground == 0 ? "x" : "y";
  return tree_shape(tree);
}

std::string WheelSpoke::display() const {
  if (is_ground) return ground == 0 ? "x" : "y";
  return bracket_string(tree);
}

int WheelGraph::n_aerial_total() const {
  int n = hubs();
  for (const auto& s : spokes) n += s.n_aerial();
  return n;
}

void WheelGraph::validate() const {
  if (hubs() < 2)
    throw std::invalid_argument(
        "WheelGraph: a single hub would need a loop or a double edge");
  for (const auto& s : spokes) {
    if (s.is_ground) {
      if (s.ground != 0 && s.ground != 1)
        throw std::invalid_argument("WheelGraph: ground spoke must be 0 or 1");
    } else {
      s.tree.validate();
    }
  }
}

int WheelGraph::cyclic_symmetry() const {
  std::vector<std::string> keys;
  for (const auto& s : spokes) keys.push_back(s.key());
  const int k = hubs();
  int count = 0;
  for (int r = 0; r < k; ++r) {
    bool same = true;
    for (int i = 0; i < k && same; ++i)
      same = keys[static_cast<std::size_t>(i)] ==
             keys[static_cast<std::size_t>((i + r) % k)];
    if (same) ++count;
  }
  return count;
}

KGraph WheelGraph::to_kgraph() const {
  validate();
  const int k = hubs();
  KGraph g;
  g.n_ground = 2;
  g.n_aerial = n_aerial_total();
  g.edges.resize(static_cast<std::size_t>(g.n_aerial));
  int next_free = k + 1;  // first vertex label after the hubs
  for (int i = 0; i < k; ++i) {
    const auto& s = spokes[static_cast<std::size_t>(i)];
    Target spoke_target;
    if (s.is_ground) {
      spoke_target = s.ground == 0 ? kGround1 : kGround2;
    } else {
      const int base = next_free;
      for (const auto& [a, b] : s.tree.nodes) {
        auto tgt = [&](int child) -> Target {
          if (child == kLeafX) return kGround1;
          if (child == kLeafY) return kGround2;
          return base + child;
        };
        g.edges[static_cast<std::size_t>(next_free - 1)] = {tgt(a), tgt(b)};
        ++next_free;
      }
      spoke_target = base;
    }
    // Hub edge order is (cycle, spoke); the weight integrand and the trace
    // symbol rely on the same choice.
    g.edges[static_cast<std::size_t>(i)] = {i + 1 < k ? i + 2 : 1, spoke_target};
  }
  g.validate();
  return g;
}

bool TraceWord::operator==(const TraceWord& other) const {
  const std::size_t k = factors.size();
  if (k != other.factors.size()) return false;
  if (k == 0) return true;
  for (std::size_t r = 0; r < k; ++r) {
    bool same = true;
    for (std::size_t i = 0; i < k && same; ++i)
      same = factors[i] == other.factors[(i + r) % k];
    if (same) return true;
  }
  return false;
}

std::string TraceWord::str() const {
  std::string s = "tr(";
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) s += " ";
    s += "ad " + factors[i];
  }
  return s + ")";
}

TraceWord trace_word(const WheelGraph& w) {
  TraceWord t;
  for (const auto& s : w.spokes) t.factors.push_back(s.display());
  return t;
}

namespace {

/// Lexicographically minimal rotation of the spoke list by key.
void canonical_rotation(std::vector<WheelSpoke>& spokes) {
  const int k = static_cast<int>(spokes.size());
  std::vector<std::string> keys;
  for (const auto& s : spokes) keys.push_back(s.key());
  int best = 0;
  for (int r = 1; r < k; ++r) {
    for (int i = 0; i < k; ++i) {
      const auto& a = keys[static_cast<std::size_t>((r + i) % k)];
      const auto& b = keys[static_cast<std::size_t>((best + i) % k)];
      if (a != b) {
        if (a < b) best = r;
        break;
      }
    }
  }
  std::rotate(spokes.begin(), spokes.begin() + best, spokes.end());
}

/// All spoke choices with exactly the given aerial size, deterministic order.
std::vector<WheelSpoke> spoke_choices(int size) {
  std::vector<WheelSpoke> out;
  if (size == 0) {
    out.push_back(WheelSpoke::ground_x());
    out.push_back(WheelSpoke::ground_y());
    return out;
  }
  for (const auto& t : enumerate_lie_trees(size))
    out.push_back(WheelSpoke::of_tree(t));
  return out;
}

}  // namespace

std::vector<WheelGraph> enumerate_wheels(int n_aerial_total,
                                         int max_spoke_aerial) {
  if (n_aerial_total < 2)
    throw std::invalid_argument("enumerate_wheels: n_aerial_total >= 2");
  if (max_spoke_aerial < 0)
    throw std::invalid_argument("enumerate_wheels: max_spoke_aerial >= 0");

  std::vector<WheelGraph> out;
  std::vector<std::string> seen;
  for (int k = 2; k <= n_aerial_total; ++k) {
    const int budget = n_aerial_total - k;
    // Spoke sizes per hub, then concrete spokes, depth-first.
    std::vector<WheelSpoke> current(static_cast<std::size_t>(k));
    auto rec = [&](auto&& self, int hub, int remaining) -> void {
      if (hub == k) {
        if (remaining != 0) return;
        WheelGraph w{current};
        canonical_rotation(w.spokes);
        std::string sig;
        for (const auto& s : w.spokes) sig += s.key() + "|";
        if (std::find(seen.begin(), seen.end(), sig) != seen.end()) return;
        seen.push_back(sig);
        out.push_back(std::move(w));
        return;
      }
      const int cap = std::min(remaining, max_spoke_aerial);
      for (int size = 0; size <= cap; ++size) {
        for (const auto& s : spoke_choices(size)) {
          current[static_cast<std::size_t>(hub)] = s;
          self(self, hub + 1, remaining - size);
        }
      }
    };
    rec(rec, 0, budget);
  }
  for (const auto& w : out) w.validate();
  return out;
}

Polynomial wheel_symbol(const WheelGraph& w, const LieAlgebraSpec& alg) {
  w.validate();
  const int nvars = 2 * alg.dim();
  const int max_degree = w.n_aerial_total() + 2;
  auto spoke_vector = [&](const WheelSpoke& s) -> VectorPoly {
    if (s.is_ground) return generic_element(alg, s.ground, max_degree);
    return eval_on_algebra(symbol(s.tree), alg);
  };
  PolyMatrix prod = poly_matrix_identity(alg.dim(), nvars, max_degree);
  for (const auto& s : w.spokes)
    prod = mat_mul(prod, alg.ad_poly(spoke_vector(s), nvars, max_degree),
                   max_degree);
  return mat_trace(prod);
}

}  // namespace kvtk
