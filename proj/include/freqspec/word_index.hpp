#pragma once

#include "freqspec/words.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace freqspec {

/// Dense numbering of the reduced words of one fixed length, compatible with
/// the canonical word order. A word x_1...x_L maps to
///   key(x_1) * (2k-1)^{L-1} + sum_i digit_i * (2k-1)^{L-1-i}
/// where digit_i ranks x_i among the 2k-1 letters allowed after x_{i-1}.
class WordIndex {
 public:
  WordIndex(Alphabet alphabet, int length);

  const Alphabet& alphabet() const { return alphabet_; }
  int length() const { return length_; }
  std::uint64_t size() const { return size_; }

  std::uint64_t index(std::span<const Letter> letters) const;
  std::uint64_t index(const Word& w) const { return index(w.letters()); }

  void decode(std::uint64_t index, std::vector<Letter>& out) const;
  Word word(std::uint64_t index) const;

  /// Index of the word obtained by dropping the first letter (length L-1).
  std::uint64_t suffix_index(std::uint64_t index) const;
  /// Index of the word obtained by dropping the last letter (length L-1).
  std::uint64_t prefix_index(std::uint64_t index) const { return length_ <= 1 ? 0 : index / branch_; }

  static int successor_digit(Letter previous, Letter next);
  static Letter successor_letter(Letter previous, int digit);

 private:
  Alphabet alphabet_;
  int length_;
  std::uint64_t size_;
  std::uint64_t branch_;
  std::uint64_t tail_;  // (2k-1)^{L-1}
};

/// Throws BudgetExceeded when words of this length cannot be indexed densely.
void require_indexable(const Alphabet& alphabet, int length, std::uint64_t cap);

}  // namespace freqspec
