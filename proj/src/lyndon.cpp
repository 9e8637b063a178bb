#include "kvtk/lyndon.hpp"

#include <stdexcept>

namespace kvtk {

static const char kLetterNames[] = {'x', 'y', 'w'};

std::string word_to_string(const Word& w) {
  std::string s;
  s.reserve(w.size());
  for (auto l : w) {
    if (l > 2) throw std::invalid_argument("letter out of range");
    s.push_back(kLetterNames[l]);
  }
  return s;
}

Word word_from_string(const std::string& s) {
  Word w;
  w.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case 'x': w.push_back(0); break;
      case 'y': w.push_back(1); break;
      case 'w': w.push_back(2); break;
      default: throw std::invalid_argument(std::string("bad letter: ") + c);
    }
  }
  return w;
}

bool is_lyndon(const Word& w) {
  if (w.empty()) return false;
  // w must be strictly smaller than each of its proper suffixes.
  const std::size_t n = w.size();
  for (std::size_t i = 1; i < n; ++i) {
    Word suffix(w.begin() + static_cast<long>(i), w.end());
    if (!(w < suffix)) return false;
  }
  return true;
}

std::vector<Word> lyndon_words(int alphabet_size, int degree) {
  if (alphabet_size < 2 || alphabet_size > 3)
    throw std::invalid_argument("alphabet_size must be 2 or 3");
  if (degree < 1) throw std::invalid_argument("degree must be >= 1");
  // Duval's generation, filtered to the requested length.
  std::vector<Word> out;
  const int k = alphabet_size;
  const int n = degree;
  Word w{0};
  while (!w.empty()) {
    if (static_cast<int>(w.size()) == n) out.push_back(w);
    // Extend periodically up to length n, then increment.
    Word t = w;
    while (static_cast<int>(t.size()) < n)
      t.push_back(t[t.size() % w.size()]);
    while (!t.empty() && t.back() == k - 1) t.pop_back();
    if (!t.empty()) ++t.back();
    w = t;
  }
  return out;  // Duval emits in lexicographic order already.
}

long witt_dimension(int alphabet_size, int degree) {
  auto mobius = [](int m) {
    int result = 1;
    for (int p = 2; p * p <= m; ++p) {
      if (m % p == 0) {
        m /= p;
        if (m % p == 0) return 0;
        result = -result;
      }
    }
    if (m > 1) result = -result;
    return result;
  };
  long total = 0;
  for (int e = 1; e <= degree; ++e) {
    if (degree % e != 0) continue;
    long power = 1;
    for (int i = 0; i < degree / e; ++i) power *= alphabet_size;
    total += mobius(e) * power;
  }
  return total / degree;
}

std::pair<Word, Word> standard_factorization(const Word& w) {
  if (w.size() < 2)
    throw std::invalid_argument("standard factorization needs length >= 2");
  std::size_t best = 1;
  for (std::size_t i = 2; i < w.size(); ++i) {
    Word cur(w.begin() + static_cast<long>(i), w.end());
    Word b(w.begin() + static_cast<long>(best), w.end());
    if (cur < b) best = i;
  }
  return {Word(w.begin(), w.begin() + static_cast<long>(best)),
          Word(w.begin() + static_cast<long>(best), w.end())};
}

}  // namespace kvtk
