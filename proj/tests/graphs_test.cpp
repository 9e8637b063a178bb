#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "kvtk/kgraph.hpp"
#include "kvtk/lie_algebra.hpp"
#include "kvtk/lie_series.hpp"
#include "kvtk/lie_trees.hpp"
#include "kvtk/wheels.hpp"

using namespace kvtk;

namespace {

LieSeries<Rational> gen(int letter, int deg) {
  return LieSeries<Rational>::generator(letter, 2, deg);
}

/// Independent oracle: canonical shapes of all bracket words of total degree
/// d, built degree-by-degree on strings. A pair with equal factors is zero
/// and disappears; otherwise the factors are sorted, which mods out the sign.
std::set<std::string> bracket_shapes(int degree) {
  if (degree == 1) return {"x", "y"};
  std::set<std::string> out;
  for (int a = 1; a < degree; ++a) {
    for (const auto& ca : bracket_shapes(a)) {
      for (const auto& cb : bracket_shapes(degree - a)) {
        if (ca == cb) continue;
        out.insert("(" + std::min(ca, cb) + std::max(ca, cb) + ")");
      }
    }
  }
  return out;
}

bool series_equal(const LieSeries<Rational>& a, const LieSeries<Rational>& b) {
  return a.coeffs == b.coeffs;
}

LieSeries<Rational> negate(const LieSeries<Rational>& s) {
  LieSeries<Rational> r = s;
  for (auto& [w, c] : r.coeffs) c = -c;
  return r;
}

}  // namespace

TEST_CASE("lie tree enumeration matches the bracket-shape oracle") {
  const std::vector<std::size_t> expected = {1, 2, 4, 10};
  for (int n = 1; n <= 4; ++n) {
    const auto trees = enumerate_lie_trees(n);
    CHECK(trees.size() == expected[static_cast<std::size_t>(n - 1)]);
    std::set<std::string> shapes;
    for (const auto& t : trees) {
      t.validate();
      shapes.insert(tree_shape(t));
    }
    CHECK(shapes.size() == trees.size());
    CHECK(shapes == bracket_shapes(n + 1));
  }
  CHECK_THROWS_AS(enumerate_lie_trees(0), std::invalid_argument);
}

TEST_CASE("small tree symbols are the expected brackets") {
  const int deg = 5;
  const auto x = gen(0, deg), y = gen(1, deg);

  const auto t1 = enumerate_lie_trees(1);
  REQUIRE(t1.size() == 1);
  CHECK(tree_shape(t1[0]) == "(xy)");
  CHECK(bracket_string(t1[0]) == "[x,y]");
  CHECK(series_equal(symbol(t1[0]), bracket(x, y, 2)));

  const auto t2 = enumerate_lie_trees(2);
  REQUIRE(t2.size() == 2);
  const auto xxy = bracket(x, bracket(x, y, 3), 3);
  const auto yxy = bracket(y, bracket(x, y, 3), 3);
  for (const auto& t : t2) {
    const auto s = symbol(t);
    const bool matches = series_equal(s, xxy) || series_equal(s, negate(xxy)) ||
                         series_equal(s, yxy) || series_equal(s, negate(yxy));
    CHECK(matches);
  }
  CHECK(!series_equal(symbol(t2[0]), symbol(t2[1])));
  CHECK(!series_equal(symbol(t2[0]), negate(symbol(t2[1]))));

  // [[x,[x,y]],y] shows up among the four trees with three vertices. Two of
  // them carry it: [[[x,y],x],y] and [[[x,y],y],x] agree up to sign by
  // Jacobi, so the symbols are redundant even at this size.
  const auto target = bracket(bracket(x, bracket(x, y, 4), 4), y, 4);
  int hits = 0;
  for (const auto& t : enumerate_lie_trees(3)) {
    const auto s = symbol(t);
    if (series_equal(s, target) || series_equal(s, negate(target))) ++hits;
  }
  CHECK(hits == 2);
}

TEST_CASE("symbols are homogeneous, nonzero, and flip sign under edge swap") {
  for (int n = 1; n <= 4; ++n) {
    for (const auto& t : enumerate_lie_trees(n)) {
      const auto s = symbol(t);
      CHECK(!s.coeffs.empty());
      for (const auto& [w, c] : s.coeffs) {
        CHECK(static_cast<int>(w.size()) == n + 1);
        CHECK(c != 0);
      }
    }
  }
  for (const auto& t : enumerate_lie_trees(3)) {
    for (int i = 0; i < t.n_aerial(); ++i) {
      LieTree swapped = t;
      std::swap(swapped.nodes[static_cast<std::size_t>(i)][0],
                swapped.nodes[static_cast<std::size_t>(i)][1]);
      CHECK(series_equal(symbol(swapped), negate(symbol(t))));
    }
  }
}

TEST_CASE("ladders give the single-y words") {
  const auto x = gen(0, 6), y = gen(1, 6);
  for (int n = 1; n <= 4; ++n) {
    auto expected = y;
    for (int i = 0; i < n; ++i) expected = bracket(x, expected, n + 1);
    const auto t = lie_ladder(n);
    CHECK(t.n_aerial() == n);
    CHECK(series_equal(symbol(t), expected));
    for (const auto& [w, c] : symbol(t).coeffs)
      CHECK(std::count(w.begin(), w.end(), 1) == 1);
  }
  CHECK(bracket_string(lie_ladder(3)) == "[x,[x,[x,y]]]");
  CHECK_THROWS_AS(lie_ladder(0), std::invalid_argument);
}

TEST_CASE("tree to graph conversion and JSON round trip") {
  const auto g = to_kgraph(lie_ladder(2));
  REQUIRE(g.n_aerial == 2);
  CHECK(g.n_ground == 2);
  CHECK(g.edges[0] == std::array<Target, 2>{kGround1, 2});
  CHECK(g.edges[1] == std::array<Target, 2>{kGround1, kGround2});

  const auto j = nlohmann::json::parse(g.to_json_text());
  CHECK(j["n"] == 2);
  CHECK(j["ground"] == 2);
  CHECK(j["edges"][0][0] == "G1");
  CHECK(j["edges"][0][1] == 2);
  CHECK(j["edges"][1][1] == "G2");
  CHECK(KGraph::from_json_text(g.to_json_text()) == g);

  for (const auto& t : enumerate_lie_trees(3)) {
    const auto k = to_kgraph(t);
    CHECK(KGraph::from_json_text(k.to_json_text()) == k);
  }
}

TEST_CASE("graph validation rejects malformed input") {
  KGraph loop{1, 2, {{1, kGround1}}};
  CHECK_THROWS_WITH_AS(loop.validate(), doctest::Contains("loop"),
                       std::invalid_argument);
  KGraph dbl{2, 2, {{2, 2}, {kGround1, kGround2}}};
  CHECK_THROWS_WITH_AS(dbl.validate(), doctest::Contains("double"),
                       std::invalid_argument);
  KGraph range{1, 2, {{3, kGround1}}};
  CHECK_THROWS_AS(range.validate(), std::invalid_argument);
  KGraph count{2, 2, {{kGround1, kGround2}}};
  CHECK_THROWS_AS(count.validate(), std::invalid_argument);
  KGraph no_ground{2, 0, {{2, kGround1}, {1, kGround2}}};
  CHECK_THROWS_AS(no_ground.validate(), std::invalid_argument);
  KGraph bad_g{1, 1, {{kGround1, kGround2}}};
  CHECK_THROWS_AS(bad_g.validate(), std::invalid_argument);

  CHECK_THROWS_AS(KGraph::from_json_text("{"), std::invalid_argument);
  CHECK_THROWS_AS(KGraph::from_json_text(R"({"n":1,"ground":2})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      KGraph::from_json_text(R"({"n":1,"ground":2,"edges":[["G3","G1"]]})"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      KGraph::from_json_text(R"({"n":1,"ground":2,"edges":[[0,"G1"]]})"),
      std::invalid_argument);
}

TEST_CASE("canonical strings are relabeling invariants") {
  // The two 3-vertex chains below are the same geometric graph with vertex
  // labels 1 and 3 exchanged.
  const KGraph a{3, 2, {{kGround1, 2}, {kGround1, 3}, {kGround1, kGround2}}};
  const KGraph b{3, 2, {{kGround1, kGround2}, {kGround1, 1}, {kGround1, 2}}};
  CHECK(canonical_string(a) == canonical_string(b));
  CHECK(canonical_hash(a) == canonical_hash(b));

  const auto t2 = enumerate_lie_trees(2);
  CHECK(canonical_string(to_kgraph(t2[0])) != canonical_string(to_kgraph(t2[1])));

  // Edge order is not modded out: the swapped graph has the opposite weight.
  KGraph c = a;
  std::swap(c.edges[2][0], c.edges[2][1]);
  CHECK(canonical_string(a) != canonical_string(c));
}

TEST_CASE("wheel enumeration counts") {
  CHECK(enumerate_wheels(2, 0).size() == 3);
  CHECK(enumerate_wheels(2, 2).size() == 3);
  {
    std::set<std::string> keys;
    for (const auto& w : enumerate_wheels(2, 0)) {
      REQUIRE(w.hubs() == 2);
      keys.insert(w.spokes[0].key() + w.spokes[1].key());
    }
    CHECK(keys == std::set<std::string>{"xx", "xy", "yy"});
  }

  // Ground-only wheels are binary necklaces; count with Burnside directly.
  auto necklaces = [](int k) {
    int total = 0;
    for (int r = 0; r < k; ++r) {
      int cycles = 0;
      std::vector<bool> seen(static_cast<std::size_t>(k), false);
      for (int i = 0; i < k; ++i) {
        if (seen[static_cast<std::size_t>(i)]) continue;
        ++cycles;
        for (int j = i; !seen[static_cast<std::size_t>(j)]; j = (j + r) % k)
          seen[static_cast<std::size_t>(j)] = true;
      }
      total += 1 << cycles;
    }
    return total / k;
  };
  for (int n = 2; n <= 6; ++n) {
    std::size_t pure = 0;
    for (const auto& w : enumerate_wheels(n, 0)) {
      CHECK(w.hubs() == n);
      ++pure;
    }
    CHECK(pure == static_cast<std::size_t>(necklaces(n)));
  }

  // Three aerial vertices: four pure 3-wheels plus the two 2-wheels that
  // hang a [x,y] tree next to a ground spoke.
  CHECK(enumerate_wheels(3, 2).size() == 6);
  CHECK(enumerate_wheels(3, 0).size() == 4);

  // No duplicates under rotation: trace words are pairwise distinct.
  const auto all4 = enumerate_wheels(4, 2);
  for (std::size_t i = 0; i < all4.size(); ++i)
    for (std::size_t j = i + 1; j < all4.size(); ++j)
      CHECK(!(trace_word(all4[i]) == trace_word(all4[j])));

  CHECK_THROWS_AS(enumerate_wheels(1, 0), std::invalid_argument);
  WheelGraph single{{WheelSpoke::ground_x()}};
  CHECK_THROWS_WITH_AS(single.validate(), doctest::Contains("single hub"),
                       std::invalid_argument);
}

TEST_CASE("the tentacled four-hub wheel needs five aerial vertices") {
  const TraceWord expected{{"x", "[x,y]", "y", "y"}};
  int hits5 = 0;
  for (const auto& w : enumerate_wheels(5, 2))
    if (trace_word(w) == expected) ++hits5;
  CHECK(hits5 == 1);
  for (const auto& w : enumerate_wheels(4, 2))
    CHECK(!(trace_word(w) == expected));
}

TEST_CASE("trace words compare cyclically") {
  const TraceWord a{{"x", "[x,y]", "y", "y"}};
  const TraceWord b{{"y", "y", "x", "[x,y]"}};
  const TraceWord c{{"y", "x", "y", "[x,y]"}};
  CHECK(a == b);
  CHECK(!(a == c));
  CHECK(!(a == TraceWord{{"x", "[x,y]", "y"}}));
  CHECK(a.str() == "tr(ad x ad [x,y] ad y ad y)");
}

TEST_CASE("cyclic symmetry orders") {
  auto find_keys = [](int n, std::vector<std::string> keys) {
    for (const auto& w : enumerate_wheels(n, 2)) {
      std::vector<std::string> k;
      for (const auto& s : w.spokes) k.push_back(s.key());
      if (k == keys) return w;
    }
    throw std::runtime_error("wheel not found");
  };
  CHECK(find_keys(2, {"x", "x"}).cyclic_symmetry() == 2);
  CHECK(find_keys(2, {"x", "y"}).cyclic_symmetry() == 1);
  CHECK(find_keys(4, {"x", "y", "x", "y"}).cyclic_symmetry() == 2);
  CHECK(find_keys(4, {"x", "x", "x", "x"}).cyclic_symmetry() == 4);
}

TEST_CASE("wheels convert to admissible graphs") {
  for (const auto& w : enumerate_wheels(4, 2)) {
    const auto g = w.to_kgraph();
    CHECK(g.n_aerial == w.n_aerial_total());
    g.validate();
    CHECK(KGraph::from_json_text(g.to_json_text()) == g);
  }
  // 2-wheel (x, y): hubs point at each other, spokes to the grounds.
  WheelGraph w{{WheelSpoke::ground_x(), WheelSpoke::ground_y()}};
  const auto g = w.to_kgraph();
  CHECK(g.edges[0] == std::array<Target, 2>{2, kGround1});
  CHECK(g.edges[1] == std::array<Target, 2>{1, kGround2});
}

TEST_CASE("wheel symbols: abelian vanishing, sl2 Killing values, rotation") {
  LieAlgebraSpec abelian(2, "abelian2");
  const auto sl2 = LieAlgebraSpec::builtin("sl2");

  WheelGraph wxy{{WheelSpoke::ground_x(), WheelSpoke::ground_y()}};
  CHECK(wheel_symbol(wxy, abelian).is_zero());

  // On sl2 with basis (h, e, f) the 2-wheel gives the Killing form:
  // tr(ad x ad y) = 8 x0 y0 + 4 x1 y2 + 4 x2 y1.
  const auto p = wheel_symbol(wxy, sl2);
  auto mono = [](int i, int j) {
    Monomial m(6, 0);
    m[static_cast<std::size_t>(i)] = 1;
    m[static_cast<std::size_t>(j)] = 1;
    return m;
  };
  CHECK(p.coefficient(mono(0, 3)) == Rational(8));
  CHECK(p.coefficient(mono(1, 5)) == Rational(4));
  CHECK(p.coefficient(mono(2, 4)) == Rational(4));
  Polynomial expected(6, p.max_degree);
  expected.add_term(mono(0, 3), Rational(8));
  expected.add_term(mono(1, 5), Rational(4));
  expected.add_term(mono(2, 4), Rational(4));
  CHECK((p - expected).is_zero());

  for (const auto& w : enumerate_wheels(3, 2)) {
    WheelGraph rotated = w;
    std::rotate(rotated.spokes.begin(), rotated.spokes.begin() + 1,
                rotated.spokes.end());
    CHECK((wheel_symbol(w, sl2) - wheel_symbol(rotated, sl2)).is_zero());
    CHECK(wheel_symbol(w, abelian).is_zero());
  }
}
