#include "kvtk/bch_series.hpp"

#include <mutex>

namespace kvtk {

LieSeries<Rational> bch_via_assoc_log(int max_degree) {
  TensorPoly<Rational> x(max_degree), y(max_degree);
  x.add(Word{0}, Rational(1));
  y.add(Word{1}, Rational(1));
  const TensorPoly<Rational> prod =
      mul(tensor_exp(x, max_degree), tensor_exp(y, max_degree), max_degree);
  return from_tensor(tensor_log(prod, max_degree), 2, max_degree);
}

namespace {

using NestedMemo = std::map<Word, LieSeries<Rational>>;

/// Right-nested bracketing [a1,[a2,...,[a_{n-1},a_n]...]] of a word.
const LieSeries<Rational>& right_nested(const Word& w, int max_degree,
                                        NestedMemo& memo) {
  auto it = memo.find(w);
  if (it != memo.end()) return it->second;
  LieSeries<Rational> acc;
  if (w.size() == 1) {
    acc = LieSeries<Rational>::generator(w[0], 2, max_degree);
  } else {
    const Word tail(w.begin() + 1, w.end());
    const auto gen = LieSeries<Rational>::generator(w[0], 2, max_degree);
    acc = bracket(gen, right_nested(tail, max_degree, memo), max_degree);
  }
  return memo.emplace(w, std::move(acc)).first->second;
}

void enumerate_blocks(int remaining, int k, Word& word, Rational coeff,
                      LieSeries<Rational>& out, int max_degree,
                      NestedMemo& memo) {
  if (remaining == 0) {
    // coeff carries 1/(p_i! q_i!) products; add (-1)^{k-1}/(k n) rho(word).
    const int n = static_cast<int>(word.size());
    Rational c = coeff * Rational(k % 2 == 1 ? 1 : -1) / Rational(k) /
                 Rational(n);
    const LieSeries<Rational>& nested = right_nested(word, max_degree, memo);
    for (const auto& [w, wc] : nested.coeffs) out.add_term(w, c * wc);
    return;
  }
  // Append one block x^p y^q with p + q >= 1.
  for (int p = 0; p <= remaining; ++p) {
    for (int q = 0; p + q <= remaining; ++q) {
      if (p + q == 0) continue;
      Rational fact(1);
      for (int i = 2; i <= p; ++i) fact *= i;
      for (int i = 2; i <= q; ++i) fact *= i;
      const std::size_t base = word.size();
      for (int i = 0; i < p; ++i) word.push_back(0);
      for (int i = 0; i < q; ++i) word.push_back(1);
      enumerate_blocks(remaining - p - q, k + 1, word, coeff / fact, out,
                       max_degree, memo);
      word.resize(base);
    }
  }
}

}  // namespace

LieSeries<Rational> bch_via_dynkin(int max_degree) {
  LieSeries<Rational> out(2, max_degree);
  NestedMemo memo;
  for (int n = 1; n <= max_degree; ++n) {
    Word word;
    enumerate_blocks(n, 0, word, Rational(1), out, max_degree, memo);
  }
  return out;
}

LieSeries<Rational> bch_oracle(int max_degree) {
  if (max_degree < 1 || max_degree > 8)
    throw std::invalid_argument("bch_oracle supports degrees 1..8");
  static std::mutex m;
  static std::map<int, LieSeries<Rational>> memo;
  std::lock_guard<std::mutex> lock(m);
  auto it = memo.find(max_degree);
  if (it != memo.end()) return it->second;
  const LieSeries<Rational> a = bch_via_assoc_log(max_degree);
  const LieSeries<Rational> b = bch_via_dynkin(max_degree);
  if (!(a.coeffs == b.coeffs))
    throw std::logic_error("Hausdorff series construction methods disagree");
  memo.emplace(max_degree, a);
  return a;
}

Rational bch_single_y_coefficient(const LieSeries<Rational>& z, int n) {
  Word w(static_cast<std::size_t>(n), 0);
  w.push_back(1);
  return z.coefficient(w);
}

}  // namespace kvtk
