#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "kvtk/rational.hpp"

namespace kvtk {

/// Exponent vector; index = variable, value = power.
using Monomial = std::vector<std::uint8_t>;

inline int monomial_degree(const Monomial& m) {
  int d = 0;
  for (auto e : m) d += e;
  return d;
}

/**
 * Sparse multivariate polynomial with exact rational coefficients and a hard
 * total-degree truncation. All symbolic checks on concrete Lie algebras
 * (trace conditions, densities, star products) run on this type.
 */
struct Polynomial {
  int nvars = 0;
  int max_degree = 0;
  std::map<Monomial, Rational> terms;

  Polynomial() = default;
  Polynomial(int vars, int max_deg) : nvars(vars), max_degree(max_deg) {}

  static Polynomial constant(const Rational& c, int vars, int max_deg) {
    Polynomial p(vars, max_deg);
    if (c != 0) p.terms.emplace(Monomial(vars, 0), c);
    return p;
  }

  static Polynomial variable(int index, int vars, int max_deg) {
    Polynomial p(vars, max_deg);
    if (max_deg >= 1) {
      Monomial m(vars, 0);
      m[index] = 1;
      p.terms.emplace(m, Rational(1));
    }
    return p;
  }

  void add_term(const Monomial& m, const Rational& c) {
    if (monomial_degree(m) > max_degree) return;
    auto it = terms.find(m);
    if (it == terms.end()) {
      if (c != 0) terms.emplace(m, c);
    } else {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }

  bool is_zero() const { return terms.empty(); }

  Rational coefficient(const Monomial& m) const {
    auto it = terms.find(m);
    return it == terms.end() ? Rational(0) : it->second;
  }

  /// Homogeneous component of the given total degree.
  Polynomial component(int degree) const {
    Polynomial p(nvars, max_degree);
    for (const auto& [m, c] : terms)
      if (monomial_degree(m) == degree) p.terms.emplace(m, c);
    return p;
  }

  int degree() const {
    int d = 0;
    for (const auto& [m, c] : terms) d = std::max(d, monomial_degree(m));
    return d;
  }

  Polynomial truncated(int deg) const {
    Polynomial p(nvars, deg);
    for (const auto& [m, c] : terms)
      if (monomial_degree(m) <= deg) p.terms.emplace(m, c);
    return p;
  }

  double eval(const std::vector<double>& point) const {
    double acc = 0;
    for (const auto& [m, c] : terms) {
      double t = to_double(c);
      for (int v = 0; v < nvars; ++v)
        for (int e = 0; e < m[v]; ++e) t *= point[v];
      acc += t;
    }
    return acc;
  }
};

inline Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  Polynomial r(std::max(a.nvars, b.nvars), std::max(a.max_degree, b.max_degree));
  r.terms = a.terms;
  for (const auto& [m, c] : b.terms) r.add_term(m, c);
  return r;
}

inline Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  Polynomial r(std::max(a.nvars, b.nvars), std::max(a.max_degree, b.max_degree));
  r.terms = a.terms;
  for (const auto& [m, c] : b.terms) r.add_term(m, -c);
  return r;
}

inline Polynomial scale(const Polynomial& a, const Rational& s) {
  Polynomial r(a.nvars, a.max_degree);
  if (s == 0) return r;
  for (const auto& [m, c] : a.terms) r.terms.emplace(m, c * s);
  return r;
}

inline Polynomial mul(const Polynomial& a, const Polynomial& b, int max_degree) {
  Polynomial r(std::max(a.nvars, b.nvars), max_degree);
  for (const auto& [ma, ca] : a.terms) {
    const int da = monomial_degree(ma);
    if (da > max_degree) continue;
    for (const auto& [mb, cb] : b.terms) {
      if (da + monomial_degree(mb) > max_degree) continue;
      Monomial m(r.nvars, 0);
      for (int v = 0; v < r.nvars; ++v) {
        const int ea = v < static_cast<int>(ma.size()) ? ma[v] : 0;
        const int eb = v < static_cast<int>(mb.size()) ? mb[v] : 0;
        m[v] = static_cast<std::uint8_t>(ea + eb);
      }
      r.add_term(m, ca * cb);
    }
  }
  return r;
}

inline Polynomial derivative(const Polynomial& a, int var) {
  Polynomial r(a.nvars, a.max_degree);
  for (const auto& [m, c] : a.terms) {
    if (m[var] == 0) continue;
    Monomial d = m;
    d[var] -= 1;
    r.add_term(d, c * Rational(static_cast<long>(m[var])));
  }
  return r;
}

// ----------------------------------------------------------- poly matrices

using PolyMatrix = std::vector<std::vector<Polynomial>>;

inline PolyMatrix poly_matrix_zero(int n, int nvars, int max_degree) {
  return PolyMatrix(n, std::vector<Polynomial>(n, Polynomial(nvars, max_degree)));
}

inline PolyMatrix poly_matrix_identity(int n, int nvars, int max_degree) {
  PolyMatrix m = poly_matrix_zero(n, nvars, max_degree);
  for (int i = 0; i < n; ++i)
    m[i][i] = Polynomial::constant(Rational(1), nvars, max_degree);
  return m;
}

inline PolyMatrix mat_mul(const PolyMatrix& a, const PolyMatrix& b,
                          int max_degree) {
  const int n = static_cast<int>(a.size());
  PolyMatrix r = poly_matrix_zero(n, a[0][0].nvars, max_degree);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (int j = 0; j < n; ++j) {
        if (b[k][j].is_zero()) continue;
        r[i][j] = r[i][j] + mul(a[i][k], b[k][j], max_degree);
      }
    }
  return r;
}

inline PolyMatrix mat_add(const PolyMatrix& a, const PolyMatrix& b) {
  const int n = static_cast<int>(a.size());
  PolyMatrix r = a;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r[i][j] = r[i][j] + b[i][j];
  return r;
}

inline PolyMatrix mat_scale(const PolyMatrix& a, const Rational& s) {
  PolyMatrix r = a;
  for (auto& row : r)
    for (auto& e : row) e = scale(e, s);
  return r;
}

inline Polynomial mat_trace(const PolyMatrix& a) {
  Polynomial t(a[0][0].nvars, a[0][0].max_degree);
  for (std::size_t i = 0; i < a.size(); ++i) t = t + a[i][i];
  return t;
}

}  // namespace kvtk
