#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace kvtk {

/// Edge target: 0 is the first ground point (G1, the x slot), -1 the second
/// (G2, the y slot), and 1..n are aerial vertices.
using Target = int;

constexpr Target kGround1 = 0;
constexpr Target kGround2 = -1;

inline bool is_ground(Target t) { return t <= 0; }

/**
 * Admissible graph of Poisson type: every aerial vertex carries an ordered
 * pair of outgoing edges (target_a, target_b). Ground vertices (0 or 2 of
 * them) have no outgoing edges. The edge order at a vertex is part of the
 * data; swapping a pair flips the sign of everything built from the graph.
 */
struct KGraph {
  int n_aerial = 0;
  int n_ground = 2;
  std::vector<std::array<Target, 2>> edges;  // edges[i] belongs to vertex i+1

  /// Throws std::invalid_argument on loops, double edges, bad target ranges,
  /// ground targets in a ground-free graph, or an edge-list size mismatch.
  void validate() const;

  std::string to_json_text() const;
  static KGraph from_json_text(const std::string& text);

  bool operator==(const KGraph& other) const = default;
};

/// Serialization that is invariant under relabeling of aerial vertices:
/// the minimum of the plain serialization over all relabelings. Edge pairs
/// keep their order, so two graphs with equal canonical strings have equal
/// weights, not just weights equal up to sign. Cache keys are built on this.
std::string canonical_string(const KGraph& g);

/// Stable 64-bit FNV-1a hash of canonical_string, safe to persist on disk.
std::uint64_t canonical_hash(const KGraph& g);

}  // namespace kvtk
