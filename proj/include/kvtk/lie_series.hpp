#pragma once

#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "kvtk/lyndon.hpp"
#include "kvtk/rational.hpp"
#include "kvtk/tensor_poly.hpp"

namespace kvtk {

template <typename T>
T convert_scalar(const Rational& r);
template <>
inline Rational convert_scalar<Rational>(const Rational& r) { return r; }
template <>
inline double convert_scalar<double>(const Rational& r) { return r.get_d(); }

inline double scalar_abs(const Rational& r) { return std::abs(r.get_d()); }
inline double scalar_abs(double r) { return std::abs(r); }

/// Memoized expansions of Lyndon bracketings inside the free associative
/// algebra. The expansion of b(w) is w plus lexicographically larger words of
/// the same multidegree, which is what makes the basis conversion triangular.
class LieBasis {
 public:
  static const TensorPoly<Rational>& expansion(const Word& lyndon_word);
};

/**
 * Element of the free Lie algebra in the Lyndon basis. Keys are Lyndon words;
 * b(w) for a letter is the generator, otherwise b(w) = [b(u), b(v)] with (u,v)
 * the standard factorization. Zero coefficients are never stored.
 */
template <typename T>
struct LieSeries {
  int alphabet_size = 2;
  int max_degree = 0;
  std::map<Word, T> coeffs;

  LieSeries() = default;
  LieSeries(int alphabet, int max_deg)
      : alphabet_size(alphabet), max_degree(max_deg) {}

  static LieSeries generator(int letter, int alphabet, int max_deg) {
    LieSeries s(alphabet, max_deg);
    if (max_deg >= 1) s.coeffs[Word{static_cast<std::uint8_t>(letter)}] = T(1);
    return s;
  }

  void add_term(const Word& w, const T& c) {
    if (static_cast<int>(w.size()) > max_degree) return;
    auto it = coeffs.find(w);
    if (it == coeffs.end()) {
      if (!(c == T(0))) coeffs.emplace(w, c);
    } else {
      it->second += c;
      if (it->second == T(0)) coeffs.erase(it);
    }
  }

  T coefficient(const Word& w) const {
    auto it = coeffs.find(w);
    return it == coeffs.end() ? T(0) : it->second;
  }

  LieSeries truncated(int deg) const {
    LieSeries r(alphabet_size, deg);
    for (const auto& [w, c] : coeffs)
      if (static_cast<int>(w.size()) <= deg) r.coeffs.emplace(w, c);
    return r;
  }

  bool empty() const { return coeffs.empty(); }
};

template <typename T>
LieSeries<T> operator+(const LieSeries<T>& a, const LieSeries<T>& b) {
  LieSeries<T> r(std::max(a.alphabet_size, b.alphabet_size),
                 std::max(a.max_degree, b.max_degree));
  r.coeffs = a.coeffs;
  for (const auto& [w, c] : b.coeffs) r.add_term(w, c);
  return r;
}

template <typename T>
LieSeries<T> operator-(const LieSeries<T>& a, const LieSeries<T>& b) {
  LieSeries<T> r(std::max(a.alphabet_size, b.alphabet_size),
                 std::max(a.max_degree, b.max_degree));
  r.coeffs = a.coeffs;
  for (const auto& [w, c] : b.coeffs) r.add_term(w, T(0) - c);
  return r;
}

template <typename T>
LieSeries<T> scale(const LieSeries<T>& a, const T& s) {
  LieSeries<T> r(a.alphabet_size, a.max_degree);
  if (s == T(0)) return r;
  for (const auto& [w, c] : a.coeffs) {
    T v = c * s;
    if (!(v == T(0))) r.coeffs.emplace(w, v);
  }
  return r;
}

template <typename T>
TensorPoly<T> to_tensor(const LieSeries<T>& s) {
  TensorPoly<T> r(s.max_degree);
  for (const auto& [w, c] : s.coeffs)
    for (const auto& [word, rc] : LieBasis::expansion(w).terms)
      r.add(word, c * convert_scalar<T>(rc));
  return r;
}

/// Converts a primitive tensor polynomial back to Lyndon coordinates by
/// triangular elimination. `drop_tol` is the relative threshold below which a
/// coefficient counts as zero (keep 0 for exact scalars). Throws if a leading
/// word is not Lyndon, i.e. the input was not a Lie element.
template <typename T>
LieSeries<T> from_tensor(TensorPoly<T> p, int alphabet_size, int max_degree,
                         double drop_tol = 0.0) {
  LieSeries<T> out(alphabet_size, max_degree);
  double scale_ref = 0.0;
  if (drop_tol > 0.0)
    for (const auto& [w, c] : p.terms)
      scale_ref = std::max(scale_ref, scalar_abs(c));
  const double floor = drop_tol * scale_ref;
  while (true) {
    // Leading term: lexicographically smallest word of the lowest degree.
    const Word* lead = nullptr;
    for (const auto& [w, c] : p.terms) {
      if (w.empty()) throw std::invalid_argument("not a Lie element (constant)");
      if (drop_tol > 0.0 && scalar_abs(c) <= floor) continue;
      if (!lead || w.size() < lead->size() ||
          (w.size() == lead->size() && w < *lead))
        lead = &w;
    }
    if (!lead) break;
    Word w = *lead;
    if (!is_lyndon(w))
      throw std::invalid_argument("not a Lie element (leading word " +
                                  word_to_string(w) + ")");
    T c = p.terms.at(w);
    out.add_term(w, c);
    for (const auto& [word, rc] : LieBasis::expansion(w).terms)
      p.add(word, T(0) - c * convert_scalar<T>(rc));
    if (p.terms.count(w)) p.terms.erase(w);  // guards against float residue
  }
  return out;
}

template <typename T>
LieSeries<T> bracket(const LieSeries<T>& a, const LieSeries<T>& b,
                     int max_degree) {
  const int alphabet = std::max(a.alphabet_size, b.alphabet_size);
  TensorPoly<T> ta = to_tensor(a);
  TensorPoly<T> tb = to_tensor(b);
  ta.max_degree = tb.max_degree = max_degree;
  TensorPoly<T> ab = mul(ta, tb, max_degree);
  const TensorPoly<T> ba = mul(tb, ta, max_degree);
  for (const auto& [w, c] : ba.terms) ab.add(w, T(0) - c);
  double tol = 0.0;
  if constexpr (!std::is_same_v<T, Rational>) tol = 1e-11;
  return from_tensor(ab, alphabet, max_degree, tol);
}

namespace detail {

/// Evaluates the Lyndon bracketing of `w` with leaves sent through `leaf`,
/// combining with `comb`; plain recursion over standard factorizations.
template <typename T, typename Leaf, typename Comb>
LieSeries<T> fold_bracketing(const Word& w, const Leaf& leaf, const Comb& comb,
                             std::map<Word, LieSeries<T>>& memo) {
  auto it = memo.find(w);
  if (it != memo.end()) return it->second;
  LieSeries<T> r;
  if (w.size() == 1) {
    r = leaf(w[0]);
  } else {
    auto [u, v] = standard_factorization(w);
    r = comb(fold_bracketing<T>(u, leaf, comb, memo),
             fold_bracketing<T>(v, leaf, comb, memo));
  }
  memo.emplace(w, r);
  return r;
}

}  // namespace detail

/// Simultaneous substitution of every generator; images[l] replaces letter l.
template <typename T>
LieSeries<T> substitute(const LieSeries<T>& s,
                        const std::vector<LieSeries<T>>& images,
                        int max_degree) {
  int alphabet = 2;
  for (const auto& im : images) alphabet = std::max(alphabet, im.alphabet_size);
  LieSeries<T> out(alphabet, max_degree);
  std::map<Word, LieSeries<T>> memo;
  auto leaf = [&](std::uint8_t l) -> LieSeries<T> {
    if (l >= images.size())
      throw std::invalid_argument("substitute: missing image for a generator");
    return images[l].truncated(max_degree);
  };
  auto comb = [&](const LieSeries<T>& a, const LieSeries<T>& b) {
    return bracket(a, b, max_degree);
  };
  for (const auto& [w, c] : s.coeffs) {
    LieSeries<T> v = detail::fold_bracketing<T>(w, leaf, comb, memo);
    for (const auto& [vw, vc] : v.coeffs) out.add_term(vw, c * vc);
  }
  return out;
}

/// Replaces generator `letter` by `u`, one occurrence at a time (Leibniz rule
/// over the Lyndon bracketing trees).
template <typename T>
LieSeries<T> directional_derivative(const LieSeries<T>& s, int letter,
                                    const LieSeries<T>& u, int max_degree) {
  const int alphabet = std::max(s.alphabet_size, u.alphabet_size);
  LieSeries<T> out(alphabet, max_degree);
  // value(w) = b(w) itself; deriv(w) by Leibniz on the bracketing tree.
  std::map<Word, LieSeries<T>> memo;
  std::function<LieSeries<T>(const Word&)> deriv = [&](const Word& w) {
    auto it = memo.find(w);
    if (it != memo.end()) return it->second;
    LieSeries<T> r(alphabet, max_degree);
    if (w.size() == 1) {
      if (w[0] == letter) r = u.truncated(max_degree);
    } else {
      auto [lw, rw] = standard_factorization(w);
      LieSeries<T> lv(alphabet, max_degree), rv(alphabet, max_degree);
      lv.add_term(lw, T(1));
      rv.add_term(rw, T(1));
      r = bracket(deriv(lw), rv, max_degree) +
          bracket(lv, deriv(rw), max_degree);
    }
    memo.emplace(w, r);
    return r;
  };
  for (const auto& [w, c] : s.coeffs) {
    LieSeries<T> d = deriv(w);
    for (const auto& [dw, dc] : d.coeffs) out.add_term(dw, c * dc);
  }
  return out;
}

}  // namespace kvtk
