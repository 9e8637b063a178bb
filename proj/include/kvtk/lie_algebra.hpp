#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "kvtk/lie_series.hpp"
#include "kvtk/polynomial.hpp"
#include "kvtk/rational.hpp"

namespace kvtk {

/// g-valued polynomial in the 2*dim coordinates (x_0..x_{d-1}, y_0..y_{d-1});
/// entry k is the coefficient polynomial of basis vector e_k.
using VectorPoly = std::vector<Polynomial>;

/**
 * Finite-dimensional Lie algebra given by structure constants
 * [e_i, e_j] = sum_k c[i][j][k] e_k. Antisymmetry is built in; the Jacobi
 * identity is checked on construction and on file load.
 */
class LieAlgebraSpec {
 public:
  LieAlgebraSpec(int dim, std::string name);

  int dim() const { return dim_; }
  const std::string& name() const { return name_; }

  /// Sets c[i][j][*] for i < j (the antisymmetric pair is implied).
  void set_bracket(int i, int j, int k, const Rational& value);

  const Rational& c(int i, int j, int k) const {
    return c_[static_cast<std::size_t>((i * dim_ + j) * dim_ + k)];
  }

  /// Throws std::invalid_argument naming the first Jacobi violation.
  void check_jacobi() const;

  /// [u, v] for coordinate vectors.
  std::vector<Rational> bracket_vec(const std::vector<Rational>& u,
                                    const std::vector<Rational>& v) const;
  std::vector<double> bracket_vec(const std::vector<double>& u,
                                  const std::vector<double>& v) const;

  /// [U, V] for g-valued polynomials.
  VectorPoly bracket_poly(const VectorPoly& u, const VectorPoly& v,
                          int max_degree) const;

  /// Matrix of ad(U) acting on coordinates, entries polynomial in the same
  /// variables as U.
  PolyMatrix ad_poly(const VectorPoly& u, int nvars, int max_degree) const;

  /// ad of a numeric vector (row k, column i = coefficient of e_k in [u,e_i]).
  std::vector<std::vector<double>> ad_numeric(const std::vector<double>& u) const;

  /// Sparse (i < j) structure constant entries as (i, j, k, value).
  std::vector<std::tuple<int, int, int, Rational>> sparse_brackets() const;

  static LieAlgebraSpec builtin(const std::string& name);
  static LieAlgebraSpec from_json_text(const std::string& text);
  static LieAlgebraSpec from_json_file(const std::string& path);
  std::string to_json_text() const;

 private:
  int dim_;
  std::string name_;
  std::vector<Rational> c_;  // dense dim^3, antisymmetric in (i, j)
};

/// Generic g-valued x with coordinates x_0..x_{d-1} (variables 0..d-1 of the
/// 2d coordinate ring), or y with variables d..2d-1.
VectorPoly generic_element(const LieAlgebraSpec& alg, int which, int max_degree);

/**
 * Evaluates a 2-letter Lie series on the algebra: letters map to the generic
 * x and y elements, brackets to algebra brackets. The result is a g-valued
 * polynomial of degree <= the series truncation.
 * errors: series over 3 letters.
 */
VectorPoly eval_on_algebra(const LieSeries<Rational>& s,
                           const LieAlgebraSpec& alg);

/// Same evaluation at concrete numeric coordinates (used by the
/// finite-difference and matrix oracles in the tests).
std::vector<double> eval_on_algebra_numeric(const LieSeries<Rational>& s,
                                            const LieAlgebraSpec& alg,
                                            const std::vector<double>& x0,
                                            const std::vector<double>& y0);

}  // namespace kvtk
