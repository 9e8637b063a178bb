#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kvtk {

/// A word over the alphabet {0, 1, ..., k-1}; letter 0 prints as 'x',
/// 1 as 'y', 2 as 'w'. Words compare lexicographically.
using Word = std::vector<std::uint8_t>;

std::string word_to_string(const Word& w);
Word word_from_string(const std::string& s);

bool is_lyndon(const Word& w);

/// All Lyndon words of exactly the given degree, lexicographically sorted.
/// pre: alphabet_size in {2, 3}, degree >= 1.
std::vector<Word> lyndon_words(int alphabet_size, int degree);

/// Witt formula: dimension of the degree-d component of the free Lie algebra
/// on k generators.
long witt_dimension(int alphabet_size, int degree);

/// Standard factorization w = uv of a Lyndon word of length >= 2; v is the
/// lexicographically smallest proper suffix. Both factors are Lyndon.
std::pair<Word, Word> standard_factorization(const Word& w);

}  // namespace kvtk
