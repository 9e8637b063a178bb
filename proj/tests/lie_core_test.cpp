#include <complex>
#include <map>
#include <vector>

#include "doctest.h"
#include "kvtk/bch_series.hpp"
#include "kvtk/lie_algebra.hpp"
#include "kvtk/lie_series.hpp"
#include "kvtk/lyndon.hpp"
#include "kvtk/rational_series.hpp"

using namespace kvtk;

namespace {

Word W(const std::string& s) { return word_from_string(s); }

LieSeries<Rational> gen(int letter, int deg) {
  return LieSeries<Rational>::generator(letter, 2, deg);
}

}  // namespace

TEST_CASE("Lyndon word predicates and string form") {
  CHECK(is_lyndon(W("x")));
  CHECK(is_lyndon(W("y")));
  CHECK(is_lyndon(W("xy")));
  CHECK(is_lyndon(W("xxy")));
  CHECK(is_lyndon(W("xyy")));
  CHECK(is_lyndon(W("xxyxy")));
  CHECK_FALSE(is_lyndon(W("yx")));
  CHECK_FALSE(is_lyndon(W("xx")));
  CHECK_FALSE(is_lyndon(W("xyx")));
  CHECK_FALSE(is_lyndon(W("xyxy")));
  CHECK_FALSE(is_lyndon(Word{}));

  CHECK(word_to_string(W("xywx")) == "xywx");
  CHECK_THROWS_AS(word_from_string("xqz"), std::invalid_argument);
}

TEST_CASE("Lyndon words by degree match the Witt dimensions") {
  const std::vector<std::vector<std::string>> expected = {
      {"x", "y"},
      {"xy"},
      {"xxy", "xyy"},
      {"xxxy", "xxyy", "xyyy"},
      {"xxxxy", "xxxyy", "xxyxy", "xxyyy", "xyxyy", "xyyyy"},
  };
  for (int d = 1; d <= 5; ++d) {
    const auto words = lyndon_words(2, d);
    REQUIRE(words.size() == expected[d - 1].size());
    for (std::size_t i = 0; i < words.size(); ++i)
      CHECK(word_to_string(words[i]) == expected[d - 1][i]);
  }

  const long witt2[] = {2, 1, 2, 3, 6, 9};
  const long witt3[] = {3, 3, 8, 18, 48, 116};
  for (int d = 1; d <= 6; ++d) {
    CHECK(witt_dimension(2, d) == witt2[d - 1]);
    CHECK(witt_dimension(3, d) == witt3[d - 1]);
    CHECK(static_cast<long>(lyndon_words(2, d).size()) == witt2[d - 1]);
    CHECK(static_cast<long>(lyndon_words(3, d).size()) == witt3[d - 1]);
  }
}

TEST_CASE("standard factorization picks the smallest proper suffix") {
  auto f = [](const std::string& s) {
    auto [u, v] = standard_factorization(W(s));
    return word_to_string(u) + "|" + word_to_string(v);
  };
  CHECK(f("xy") == "x|y");
  CHECK(f("xxy") == "x|xy");
  CHECK(f("xyy") == "xy|y");
  CHECK(f("xxyy") == "x|xyy");
  CHECK(f("xxyxy") == "xxy|xy");
  CHECK(f("xyxyy") == "xy|xyy");
  CHECK_THROWS_AS(standard_factorization(W("x")), std::invalid_argument);
}

TEST_CASE("basis expansions are triangular with unit leading coefficient") {
  for (int d = 1; d <= 5; ++d)
    for (const Word& w : lyndon_words(2, d)) {
      const auto& e = LieBasis::expansion(w);
      REQUIRE(e.terms.count(w) == 1);
      CHECK(e.terms.at(w) == 1);
      // Every other word is homogeneous of the same degree and lex larger.
      for (const auto& [word, c] : e.terms) {
        CHECK(word.size() == w.size());
        CHECK(word >= w);
      }
    }
  // b(xy) = xy - yx.
  const auto& exy = LieBasis::expansion(W("xy"));
  REQUIRE(exy.terms.size() == 2);
  CHECK(exy.terms.at(W("xy")) == 1);
  CHECK(exy.terms.at(W("yx")) == -1);
}

TEST_CASE("free Lie bracket: base cases, antisymmetry, Jacobi") {
  const int deg = 6;
  const auto x = gen(0, deg);
  const auto y = gen(1, deg);

  auto xy = bracket(x, y, deg);
  REQUIRE(xy.coeffs.size() == 1);
  CHECK(xy.coefficient(W("xy")) == 1);
  CHECK(bracket(y, x, deg).coefficient(W("xy")) == -1);

  // [b(xy), x] = -b(xxy), [b(xy), y] = b(xyy).
  CHECK(bracket(xy, x, deg).coefficient(W("xxy")) == -1);
  CHECK(bracket(xy, y, deg).coefficient(W("xyy")) == 1);

  LieSeries<Rational> a = x + scale(xy, rat(2));
  LieSeries<Rational> b = y - bracket(x, xy, deg);
  LieSeries<Rational> c = xy + scale(y, rat(1, 3));

  CHECK((bracket(a, b, deg) + bracket(b, a, deg)).empty());
  auto jac = bracket(a, bracket(b, c, deg), deg) +
             bracket(b, bracket(c, a, deg), deg) +
             bracket(c, bracket(a, b, deg), deg);
  CHECK(jac.empty());
}

TEST_CASE("tensor conversion round trips and rejects non-Lie input") {
  const int deg = 5;
  LieSeries<Rational> s(2, deg);
  s.add_term(W("x"), rat(1));
  s.add_term(W("xy"), rat(-3, 7));
  s.add_term(W("xxyy"), rat(5, 2));
  auto back = from_tensor(to_tensor(s), 2, deg);
  CHECK(back.coeffs == s.coeffs);

  TensorPoly<Rational> bad(3);
  bad.add(W("xx"), rat(1));
  CHECK_THROWS_AS(from_tensor(bad, 2, 3), std::invalid_argument);

  TensorPoly<Rational> constant(3);
  constant.add(Word{}, rat(1));
  CHECK_THROWS_AS(from_tensor(constant, 2, 3), std::invalid_argument);
}

TEST_CASE("Hausdorff series through degree 5: frozen coefficients") {
  const auto z = bch_oracle(5);
  const std::map<std::string, Rational> expected = {
      {"x", rat(1)},          {"y", rat(1)},         {"xy", rat(1, 2)},
      {"xxy", rat(1, 12)},    {"xyy", rat(1, 12)},   {"xxyy", rat(1, 24)},
      {"xxxxy", rat(-1, 720)}, {"xxxyy", rat(1, 180)}, {"xxyxy", rat(1, 360)},
      {"xxyyy", rat(1, 180)}, {"xyxyy", rat(1, 120)}, {"xyyyy", rat(-1, 720)},
  };
  CHECK(z.coeffs.size() == expected.size());
  for (const auto& [ws, c] : expected) CHECK(z.coefficient(W(ws)) == c);
  // Words absent from the table have coefficient zero, e.g. all of degree 4
  // except xxyy.
  CHECK(z.coefficient(W("xxxy")) == 0);
  CHECK(z.coefficient(W("xyyy")) == 0);
}

TEST_CASE("Hausdorff series degree 6 and the two construction routes") {
  const auto za = bch_via_assoc_log(6);
  const auto zd = bch_via_dynkin(6);
  CHECK(za.coeffs == zd.coeffs);

  const auto z = bch_oracle(6);
  CHECK(z.coefficient(W("xxxxyy")) == rat(-1, 1440));
  CHECK(z.coefficient(W("xxxyxy")) == rat(1, 720));
  CHECK(z.coefficient(W("xxxyyy")) == rat(1, 360));
  CHECK(z.coefficient(W("xxyxyy")) == rat(1, 240));
  CHECK(z.coefficient(W("xxyyyy")) == rat(-1, 1440));
  CHECK(z.coefficient(W("xxxxxy")) == 0);
  CHECK(z.coefficient(W("xyyyyy")) == 0);
}

TEST_CASE("coefficients of iterated ad x on y") {
  const auto z = bch_oracle(7);
  const Rational expected[] = {rat(1),       rat(1, 2), rat(1, 12), rat(0),
                               rat(-1, 720), rat(0),    rat(1, 30240)};
  for (int n = 0; n <= 6; ++n) CHECK(bch_single_y_coefficient(z, n) == expected[n]);
}

TEST_CASE("exchange symmetry Z(x, y) = -Z(-y, -x)") {
  const int deg = 6;
  const auto z = bch_oracle(deg);
  std::vector<LieSeries<Rational>> images = {scale(gen(1, deg), rat(-1)),
                                             scale(gen(0, deg), rat(-1))};
  const auto swapped = substitute(z, images, deg);
  CHECK(swapped.coeffs == scale(z, rat(-1)).coeffs);
}

TEST_CASE("directional derivative: exact Leibniz cases") {
  const int deg = 5;
  LieSeries<Rational> s(2, deg);
  s.add_term(W("xxy"), rat(1));
  // Replacing one x at a time by y in [x,[x,y]] leaves [y,[x,y]] = -b(xyy).
  auto d = directional_derivative(s, 0, gen(1, deg), deg);
  REQUIRE(d.coeffs.size() == 1);
  CHECK(d.coefficient(W("xyy")) == -1);

  // Derivative along the variable itself is multiplication by the x-count.
  auto dx = directional_derivative(s, 0, gen(0, deg), deg);
  CHECK(dx.coefficient(W("xxy")) == 2);
  auto dy = directional_derivative(s, 1, gen(1, deg), deg);
  CHECK(dy.coefficient(W("xxy")) == 1);
}

namespace {

using C2 = std::array<std::array<std::complex<double>, 2>, 2>;

C2 mat_mul2(const C2& a, const C2& b) {
  C2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return r;
}

// sl2 coordinates (h, e, f) -> 2x2 matrix.
C2 sl2_matrix(const std::vector<double>& v) {
  return C2{{{std::complex<double>(v[0]), std::complex<double>(v[1])},
             {std::complex<double>(v[2]), std::complex<double>(-v[0])}}};
}

// exp of a traceless 2x2 matrix: X^2 = theta^2 I with theta^2 = -det X.
C2 sl2_exp(const C2& x) {
  const std::complex<double> t2 = x[0][0] * x[0][0] + x[0][1] * x[1][0];
  const std::complex<double> t = std::sqrt(t2);
  const std::complex<double> ch = std::cosh(t);
  const std::complex<double> sh = std::abs(t) < 1e-8
                                      ? std::complex<double>(1.0)
                                      : std::sinh(t) / t;
  C2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = sh * x[i][j];
  r[0][0] += ch;
  r[1][1] += ch;
  return r;
}

// Traceless log of a unimodular 2x2 matrix; the even factor phi/sinh(phi)
// makes the acosh branch irrelevant.
std::vector<double> sl2_log(const C2& m) {
  const std::complex<double> c = (m[0][0] + m[1][1]) / 2.0;
  const std::complex<double> phi = std::acosh(c);
  const std::complex<double> factor =
      std::abs(phi) < 1e-8 ? std::complex<double>(1.0) : phi / std::sinh(phi);
  C2 z = m;
  z[0][0] -= c;
  z[1][1] -= c;
  std::vector<double> out(3);
  const std::complex<double> zh = factor * z[0][0];
  const std::complex<double> ze = factor * z[0][1];
  const std::complex<double> zf = factor * z[1][0];
  REQUIRE(std::abs(zh.imag()) < 1e-10);
  REQUIRE(std::abs(ze.imag()) < 1e-10);
  REQUIRE(std::abs(zf.imag()) < 1e-10);
  out[0] = zh.real();
  out[1] = ze.real();
  out[2] = zf.real();
  return out;
}

}  // namespace

TEST_CASE("Hausdorff series agrees with the matrix logarithm on sl2") {
  const auto alg = LieAlgebraSpec::builtin("sl2");
  const auto z = bch_oracle(8);
  const std::vector<double> x0 = {0.07, -0.04, 0.05};
  const std::vector<double> y0 = {-0.03, 0.06, 0.08};
  const auto series_val = eval_on_algebra_numeric(z, alg, x0, y0);
  const auto exact = sl2_log(mat_mul2(sl2_exp(sl2_matrix(x0)), sl2_exp(sl2_matrix(y0))));
  for (int k = 0; k < 3; ++k)
    CHECK(series_val[k] == doctest::Approx(exact[k]).epsilon(1e-6));
}

TEST_CASE("directional derivative agrees with finite differences on sl2") {
  const auto alg = LieAlgebraSpec::builtin("sl2");
  const int deg = 5;
  const auto s = bch_oracle(deg);
  const auto u = bracket(gen(0, deg), gen(1, deg), deg);  // u = [x, y]
  const auto ds = directional_derivative(s, 1, u, deg);

  const std::vector<double> x0 = {0.11, -0.07, 0.05};
  const std::vector<double> y0 = {-0.06, 0.09, 0.04};
  const auto u0 = eval_on_algebra_numeric(u, alg, x0, y0);
  const double h = 1e-5;
  std::vector<double> yp(3), ym(3);
  for (int k = 0; k < 3; ++k) {
    yp[k] = y0[k] + h * u0[k];
    ym[k] = y0[k] - h * u0[k];
  }
  const auto fp = eval_on_algebra_numeric(s, alg, x0, yp);
  const auto fm = eval_on_algebra_numeric(s, alg, x0, ym);
  const auto sym = eval_on_algebra_numeric(ds, alg, x0, y0);
  for (int k = 0; k < 3; ++k)
    CHECK(sym[k] == doctest::Approx((fp[k] - fm[k]) / (2 * h)).epsilon(1e-6));
}

TEST_CASE("evaluation on concrete algebras") {
  SUBCASE("abelian: Z collapses to x + y") {
    const auto alg = LieAlgebraSpec::builtin("abelian2");
    const auto v = eval_on_algebra(bch_oracle(6), alg);
    for (int k = 0; k < 2; ++k) {
      Polynomial expect = Polynomial::variable(k, 4, 6) + Polynomial::variable(2 + k, 4, 6);
      CHECK(v[k].terms == expect.terms);
    }
  }
  SUBCASE("Heisenberg: Z = x + y + [x,y]/2 exactly") {
    const auto alg = LieAlgebraSpec::builtin("heisenberg3");
    const auto v = eval_on_algebra(bch_oracle(6), alg);
    for (int k = 0; k < 2; ++k) {
      Polynomial expect = Polynomial::variable(k, 6, 6) + Polynomial::variable(3 + k, 6, 6);
      CHECK(v[k].terms == expect.terms);
    }
    Polynomial expect = Polynomial::variable(2, 6, 6) + Polynomial::variable(5, 6, 6);
    Polynomial cross =
        mul(Polynomial::variable(0, 6, 6), Polynomial::variable(4, 6, 6), 6) -
        mul(Polynomial::variable(1, 6, 6), Polynomial::variable(3, 6, 6), 6);
    expect = expect + scale(cross, rat(1, 2));
    CHECK(v[2].terms == expect.terms);
  }
  SUBCASE("numeric evaluation respects the bracket") {
    const auto alg = LieAlgebraSpec::builtin("so3");
    const int deg = 5;
    const auto a = gen(0, deg) + bracket(gen(0, deg), gen(1, deg), deg);
    const auto b = scale(gen(1, deg), rat(3, 2)) -
                   bracket(gen(0, deg), bracket(gen(0, deg), gen(1, deg), deg), deg);
    const std::vector<double> x0 = {0.3, -0.2, 0.5};
    const std::vector<double> y0 = {0.1, 0.4, -0.6};
    const auto lhs = eval_on_algebra_numeric(bracket(a, b, deg), alg, x0, y0);
    const auto rhs = alg.bracket_vec(eval_on_algebra_numeric(a, alg, x0, y0),
                                     eval_on_algebra_numeric(b, alg, x0, y0));
    for (int k = 0; k < 3; ++k) CHECK(lhs[k] == doctest::Approx(rhs[k]).epsilon(1e-12));
  }
}

TEST_CASE("structure constant specs: builtins, JSON, validation") {
  for (const char* name : {"abelian2", "aff1", "heisenberg3", "sl2", "so3"}) {
    const auto alg = LieAlgebraSpec::builtin(name);
    CHECK(alg.name() == name);
    CHECK_NOTHROW(alg.check_jacobi());
  }
  CHECK_THROWS_AS(LieAlgebraSpec::builtin("e8"), std::invalid_argument);

  const auto sl2 = LieAlgebraSpec::builtin("sl2");
  const auto round = LieAlgebraSpec::from_json_text(sl2.to_json_text());
  CHECK(round.sparse_brackets() == sl2.sparse_brackets());
  CHECK(round.dim() == 3);

  CHECK_THROWS_AS(LieAlgebraSpec::from_json_text("{not json"), std::invalid_argument);
  CHECK_THROWS_AS(LieAlgebraSpec::from_json_text(R"({"dim": "three"})"),
                  std::invalid_argument);

  // [e0,e1] = e2, [e0,e2] = e0 violates Jacobi on (e0, e1, e2).
  const std::string bad = R"({"dim": 3, "name": "bad", "brackets":
      [[0, 1, 2, "1"], [0, 2, 0, "1"]]})";
  CHECK_THROWS_WITH_AS(LieAlgebraSpec::from_json_text(bad),
                       doctest::Contains("Jacobi"), std::invalid_argument);

  LieAlgebraSpec manual(2, "m");
  CHECK_THROWS_AS(manual.set_bracket(1, 0, 0, rat(1)), std::invalid_argument);
  CHECK_THROWS_AS(manual.set_bracket(0, 2, 0, rat(1)), std::invalid_argument);
}

TEST_CASE("scalar series helpers: Bernoulli data") {
  const auto b = bernoulli_numbers(8);
  CHECK(b[0] == 1);
  CHECK(b[1] == rat(-1, 2));
  CHECK(b[2] == rat(1, 6));
  CHECK(b[3] == 0);
  CHECK(b[4] == rat(-1, 30));
  CHECK(b[6] == rat(1, 42));
  CHECK(b[8] == rat(-1, 30));

  // B_4(t) = t^4 - 2t^3 + t^2 - 1/30, ascending order.
  const auto p4 = bernoulli_polynomial(4);
  REQUIRE(p4.size() == 5);
  CHECK(p4[0] == rat(-1, 30));
  CHECK(p4[1] == 0);
  CHECK(p4[2] == 1);
  CHECK(p4[3] == rat(-2));
  CHECK(p4[4] == 1);
  CHECK(eval_poly(p4, rat(1, 2)) == rat(7, 240));

  const auto g = log_jfactor_coeffs(8);
  CHECK(g[0] == 0);
  CHECK(g[1] == rat(-1, 2));
  CHECK(g[2] == rat(1, 24));
  CHECK(g[3] == 0);
  CHECK(g[4] == rat(-1, 2880));
  CHECK(g[6] == rat(1, 181440));
  // k * gamma_k reproduces B_k / k!.
  Rational fact(1);
  for (int k = 1; k <= 8; ++k) {
    fact *= k;
    CHECK(Rational(k) * g[k] == b[k] / fact);
  }

  auto e = series_exp(series_log(one_minus_exp_neg_over_s(8), 8), 8);
  for (int k = 0; k <= 8; ++k) CHECK(e[k] == one_minus_exp_neg_over_s(8)[k]);
}
