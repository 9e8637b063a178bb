#pragma once

#include <map>
#include <stdexcept>

#include "kvtk/lyndon.hpp"
#include "kvtk/rational.hpp"

namespace kvtk {

/**
 * Truncated element of the free associative algebra: a finite map from words
 * to coefficients, with everything above max_degree discarded. Used as the
 * computational substrate for the free Lie algebra (Lie elements are the
 * primitive polynomials) and for the exp/log route to the Hausdorff series.
 */
template <typename T>
struct TensorPoly {
  int max_degree = 0;
  std::map<Word, T> terms;

  explicit TensorPoly(int max_deg = 0) : max_degree(max_deg) {}

  void add(const Word& w, const T& c) {
    if (static_cast<int>(w.size()) > max_degree) return;
    auto it = terms.find(w);
    if (it == terms.end()) {
      if (!(c == T(0))) terms.emplace(w, c);
    } else {
      it->second += c;
      if (it->second == T(0)) terms.erase(it);
    }
  }

  bool empty() const { return terms.empty(); }
};

template <typename T>
TensorPoly<T> operator+(const TensorPoly<T>& a, const TensorPoly<T>& b) {
  TensorPoly<T> r(std::max(a.max_degree, b.max_degree));
  r.terms = a.terms;
  TensorPoly<T>* rp = &r;
  for (const auto& [w, c] : b.terms) rp->add(w, c);
  return r;
}

template <typename T>
TensorPoly<T> scale(const TensorPoly<T>& a, const T& s) {
  TensorPoly<T> r(a.max_degree);
  if (s == T(0)) return r;
  for (const auto& [w, c] : a.terms) r.terms.emplace(w, c * s);
  return r;
}

template <typename T>
TensorPoly<T> mul(const TensorPoly<T>& a, const TensorPoly<T>& b,
                  int max_degree) {
  TensorPoly<T> r(max_degree);
  for (const auto& [wa, ca] : a.terms) {
    if (static_cast<int>(wa.size()) > max_degree) continue;
    for (const auto& [wb, cb] : b.terms) {
      if (static_cast<int>(wa.size() + wb.size()) > max_degree) continue;
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      r.add(w, ca * cb);
    }
  }
  return r;
}

/// exp of an element with no constant term.
template <typename T>
TensorPoly<T> tensor_exp(const TensorPoly<T>& a, int max_degree) {
  if (a.terms.count(Word{}))
    throw std::invalid_argument("tensor exp needs zero constant term");
  TensorPoly<T> r(max_degree);
  r.add(Word{}, T(1));
  TensorPoly<T> power(max_degree);
  power.add(Word{}, T(1));
  T inv_factorial(1);
  for (int k = 1; k <= max_degree; ++k) {
    power = mul(power, a, max_degree);
    if (power.empty()) break;
    inv_factorial = inv_factorial / T(k);
    const TensorPoly<T> term = scale(power, inv_factorial);
    for (const auto& [w, c] : term.terms) r.add(w, c);
  }
  return r;
}

/// log of an element with constant term 1.
template <typename T>
TensorPoly<T> tensor_log(const TensorPoly<T>& a, int max_degree) {
  auto it = a.terms.find(Word{});
  if (it == a.terms.end() || !(it->second == T(1)))
    throw std::invalid_argument("tensor log needs constant term 1");
  TensorPoly<T> u = a;
  u.terms.erase(Word{});
  TensorPoly<T> r(max_degree);
  TensorPoly<T> power(max_degree);
  power.add(Word{}, T(1));
  for (int k = 1; k <= max_degree; ++k) {
    power = mul(power, u, max_degree);
    if (power.empty()) break;
    T coeff = T(k % 2 == 1 ? 1 : -1) / T(k);
    const TensorPoly<T> term = scale(power, coeff);
    for (const auto& [w, c] : term.terms) r.add(w, c);
  }
  return r;
}

}  // namespace kvtk
