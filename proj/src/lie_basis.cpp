#include <mutex>

#include "kvtk/lie_series.hpp"

namespace kvtk {

namespace {

std::map<Word, TensorPoly<Rational>>& cache() {
  static std::map<Word, TensorPoly<Rational>> c;
  return c;
}

std::mutex cache_mutex;

const TensorPoly<Rational>& expansion_locked(const Word& w) {
  auto it = cache().find(w);
  if (it != cache().end()) return it->second;
  if (!is_lyndon(w))
    throw std::invalid_argument("expansion of non-Lyndon word " +
                                word_to_string(w));
  TensorPoly<Rational> e(static_cast<int>(w.size()));
  if (w.size() == 1) {
    e.add(w, Rational(1));
  } else {
    auto [u, v] = standard_factorization(w);
    const TensorPoly<Rational> a = expansion_locked(u);
    const TensorPoly<Rational> b = expansion_locked(v);
    e = mul(a, b, e.max_degree);
    const TensorPoly<Rational> ba = mul(b, a, e.max_degree);
    for (const auto& [word, c] : ba.terms) e.add(word, -c);
  }
  return cache().emplace(w, std::move(e)).first->second;
}

}  // namespace

const TensorPoly<Rational>& LieBasis::expansion(const Word& lyndon_word) {
  std::lock_guard<std::mutex> lock(cache_mutex);
  return expansion_locked(lyndon_word);
}

}  // namespace kvtk
