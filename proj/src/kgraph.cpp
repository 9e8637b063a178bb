#include "kvtk/kgraph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

namespace kvtk {

void KGraph::validate() const {
  if (n_ground != 0 && n_ground != 2)
    throw std::invalid_argument("KGraph: n_ground must be 0 or 2");
  if (n_aerial < 0)
    throw std::invalid_argument("KGraph: negative aerial count");
  if (static_cast<int>(edges.size()) != n_aerial)
    throw std::invalid_argument(
        "KGraph: need exactly one edge pair per aerial vertex");
  for (int i = 0; i < n_aerial; ++i) {
    const auto& [a, b] = edges[static_cast<std::size_t>(i)];
    for (Target t : {a, b}) {
      if (t < kGround2 || t > n_aerial)
        throw std::invalid_argument("KGraph: edge target out of range");
      if (is_ground(t) && n_ground == 0)
        throw std::invalid_argument(
            "KGraph: ground target in a graph without ground points");
      if (t == i + 1)
        throw std::invalid_argument("KGraph: edge loop at vertex " +
                                    std::to_string(i + 1));
    }
    if (a == b)
      throw std::invalid_argument("KGraph: double edge at vertex " +
                                  std::to_string(i + 1));
  }
}

namespace {

nlohmann::json target_to_json(Target t) {
  if (t == kGround1) return "G1";
  if (t == kGround2) return "G2";
  return t;
}

Target target_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "G1") return kGround1;
    if (s == "G2") return kGround2;
    throw std::invalid_argument("KGraph: unknown ground marker '" + s + "'");
  }
  if (j.is_number_integer()) {
    const int t = j.get<int>();
    if (t < 1) throw std::invalid_argument("KGraph: aerial targets are 1-based");
    return t;
  }
  throw std::invalid_argument("KGraph: edge target must be an int or G1/G2");
}

}  // namespace

std::string KGraph::to_json_text() const {
  nlohmann::json j;
  j["n"] = n_aerial;
  j["ground"] = n_ground;
  auto& e = j["edges"] = nlohmann::json::array();
  for (const auto& [a, b] : edges)
    e.push_back({target_to_json(a), target_to_json(b)});
  return j.dump();
}

KGraph KGraph::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("KGraph: bad JSON: ") + e.what());
  }
  KGraph g;
  try {
    g.n_aerial = j.at("n").get<int>();
    g.n_ground = j.at("ground").get<int>();
    for (const auto& pair : j.at("edges")) {
      if (!pair.is_array() || pair.size() != 2)
        throw std::invalid_argument("KGraph: each edge entry is a pair");
      g.edges.push_back({target_from_json(pair[0]), target_from_json(pair[1])});
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("KGraph: bad JSON shape: ") +
                                e.what());
  }
  g.validate();
  return g;
}

namespace {

/// Plain serialization under a relabeling: perm[i] is the new 1-based label
/// of vertex i+1. Ground markers and edge order are untouched.
std::string serialize_relabeled(const KGraph& g, const std::vector<int>& perm) {
  std::string s = "n" + std::to_string(g.n_aerial) + "g" +
                  std::to_string(g.n_ground) + ":";
  std::vector<std::string> rows(static_cast<std::size_t>(g.n_aerial));
  auto fmt = [&](Target t) {
    if (t == kGround1) return std::string("A");
    if (t == kGround2) return std::string("B");
    return std::to_string(perm[static_cast<std::size_t>(t - 1)]);
  };
  for (int i = 0; i < g.n_aerial; ++i) {
    const auto& [a, b] = g.edges[static_cast<std::size_t>(i)];
    rows[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)] - 1)] =
        fmt(a) + "," + fmt(b) + ";";
  }
  for (const auto& r : rows) s += r;
  return s;
}

}  // namespace

std::string canonical_string(const KGraph& g) {
  g.validate();
  std::vector<int> perm(static_cast<std::size_t>(g.n_aerial));
  std::iota(perm.begin(), perm.end(), 1);
  // Minimal serialization over all relabelings; n stays small enough here
  // that the factorial cost is irrelevant.
  if (g.n_aerial > 8)
    throw std::invalid_argument("canonical_string: aerial count above 8");
  std::string best = serialize_relabeled(g, perm);
  while (std::next_permutation(perm.begin(), perm.end())) {
    std::string s = serialize_relabeled(g, perm);
    if (s < best) best = std::move(s);
  }
  return best;
}

std::uint64_t canonical_hash(const KGraph& g) {
  const std::string s = canonical_string(g);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace kvtk
