#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "kvtk/rational.hpp"

namespace kvtk {

/**
 * Dense truncated power series with exact rational coefficients.
 *
 * coeffs[k] is the coefficient of s^k; all series share the truncation order
 * of their longest operand. Enough for the scalar generating functions used
 * here (Bernoulli numbers, the log-determinant expansion, operator symbols).
 */
struct RationalSeries {
  std::vector<Rational> c;

  explicit RationalSeries(std::size_t order = 0) : c(order + 1, Rational(0)) {}

  std::size_t order() const { return c.empty() ? 0 : c.size() - 1; }
  const Rational& operator[](std::size_t k) const { return c[k]; }
  Rational& operator[](std::size_t k) { return c[k]; }
};

inline RationalSeries mul(const RationalSeries& a, const RationalSeries& b,
                          std::size_t order) {
  RationalSeries r(order);
  for (std::size_t i = 0; i < a.c.size() && i <= order; ++i) {
    if (a.c[i] == 0) continue;
    for (std::size_t j = 0; j < b.c.size() && i + j <= order; ++j)
      r.c[i + j] += a.c[i] * b.c[j];
  }
  return r;
}

/// Multiplicative inverse; requires a nonzero constant term.
inline RationalSeries inverse(const RationalSeries& a, std::size_t order) {
  if (a.c.empty() || a.c[0] == 0)
    throw std::invalid_argument("series inverse needs a unit constant term");
  RationalSeries r(order);
  r.c[0] = 1 / a.c[0];
  for (std::size_t k = 1; k <= order; ++k) {
    Rational acc(0);
    for (std::size_t j = 1; j <= k && j < a.c.size(); ++j)
      acc += a.c[j] * r.c[k - j];
    r.c[k] = -acc / a.c[0];
  }
  return r;
}

/// log(a) for a series with constant term 1.
inline RationalSeries series_log(const RationalSeries& a, std::size_t order) {
  if (a.c.empty() || a.c[0] != 1)
    throw std::invalid_argument("series log needs constant term 1");
  // log(a) = integral of a'/a; keeps the recursion linear in the order.
  RationalSeries da(order);
  for (std::size_t k = 0; k + 1 < a.c.size() && k <= order; ++k)
    da.c[k] = a.c[k + 1] * Rational(static_cast<long>(k + 1));
  RationalSeries q = mul(da, inverse(a, order), order);
  RationalSeries r(order);
  for (std::size_t k = 1; k <= order; ++k)
    r.c[k] = q.c[k - 1] / Rational(static_cast<long>(k));
  return r;
}

/// exp(a) for a series with zero constant term.
inline RationalSeries series_exp(const RationalSeries& a, std::size_t order) {
  if (!a.c.empty() && a.c[0] != 0)
    throw std::invalid_argument("series exp needs zero constant term");
  RationalSeries r(order);
  r.c[0] = 1;
  // r' = a' r  =>  k r_k = sum_{j>=1} j a_j r_{k-j}
  for (std::size_t k = 1; k <= order; ++k) {
    Rational acc(0);
    for (std::size_t j = 1; j <= k && j < a.c.size(); ++j)
      acc += Rational(static_cast<long>(j)) * a.c[j] * r.c[k - j];
    r.c[k] = acc / Rational(static_cast<long>(k));
  }
  return r;
}

/// Coefficients of s^k in (e^s - 1)/s, i.e. 1/(k+1)!.
inline RationalSeries expm1_over_s(std::size_t order) {
  RationalSeries r(order);
  Rational fact(1);
  for (std::size_t k = 0; k <= order; ++k) {
    fact /= Rational(static_cast<long>(k + 1));
    r.c[k] = fact;
  }
  // fact started at 1, divided by (k+1)! cumulatively: c[k] = 1/(k+1)!.
  return r;
}

/// Coefficients of s^k in (1 - e^{-s})/s, i.e. (-1)^k/(k+1)!.
inline RationalSeries one_minus_exp_neg_over_s(std::size_t order) {
  RationalSeries r = expm1_over_s(order);
  for (std::size_t k = 1; k <= order; k += 2) r.c[k] = -r.c[k];
  return r;
}

/// Bernoulli numbers B_n (B_1 = -1/2) from s/(e^s - 1).
inline std::vector<Rational> bernoulli_numbers(std::size_t order) {
  RationalSeries inv = inverse(expm1_over_s(order), order);
  std::vector<Rational> b(order + 1);
  Rational fact(1);
  for (std::size_t n = 0; n <= order; ++n) {
    if (n > 0) fact *= Rational(static_cast<long>(n));
    b[n] = inv.c[n] * fact;
  }
  return b;
}

/// Coefficient list of the Bernoulli polynomial B_n(t), index = power of t.
inline std::vector<Rational> bernoulli_polynomial(std::size_t n) {
  std::vector<Rational> bn = bernoulli_numbers(n);
  std::vector<Rational> coeff(n + 1, Rational(0));
  Rational binom(1);
  for (std::size_t k = 0; k <= n; ++k) {
    if (k > 0)
      binom = binom * Rational(static_cast<long>(n - k + 1)) /
              Rational(static_cast<long>(k));
    coeff[n - k] = binom * bn[k];
  }
  return coeff;
}

inline Rational eval_poly(const std::vector<Rational>& coeff, const Rational& t) {
  Rational acc(0);
  for (std::size_t k = coeff.size(); k-- > 0;) acc = acc * t + coeff[k];
  return acc;
}

/// Coefficients gamma_k of log((1 - e^{-s})/s) = sum_k gamma_k s^k.
inline std::vector<Rational> log_jfactor_coeffs(std::size_t order) {
  RationalSeries l = series_log(one_minus_exp_neg_over_s(order), order);
  return l.c;
}

}  // namespace kvtk
