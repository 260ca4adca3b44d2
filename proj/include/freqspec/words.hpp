#pragma once

#include "freqspec/rational.hpp"

#include <compare>
#include <functional>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace freqspec {

/// A letter is a nonzero signed generator index: `+i` is a_i, `-i` is a_i^{-1}.
using Letter = int;

constexpr Letter inverse(Letter x) { return -x; }

/// Position of a letter in the fixed order a_1 < a_1^{-1} < a_2 < a_2^{-1} < ...
constexpr int letter_key(Letter x) { return 2 * ((x < 0 ? -x : x) - 1) + (x < 0 ? 1 : 0); }

constexpr Letter letter_from_key(int key) { return key % 2 == 0 ? key / 2 + 1 : -(key / 2 + 1); }

/// The symmetric generating set {a_1, ..., a_k}^{±1} of the free group of rank k.
class Alphabet {
 public:
  explicit Alphabet(int rank);

  int rank() const { return rank_; }
  int size() const { return 2 * rank_; }
  bool contains(Letter x) const { return x != 0 && (x < 0 ? -x : x) <= rank_; }

  /// All 2k letters in canonical order.
  std::vector<Letter> letters() const;

  /// Number of freely reduced words of length m: 2k(2k-1)^{m-1}, and 0 for m = 0.
  std::uint64_t letter_count(int m) const;

  /// Same as letter_count but 1 for m = 0 (the empty word) and saturating at UINT64_MAX.
  std::uint64_t word_count(int m) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  int rank_;
};

/// A freely reduced word.
class Word {
 public:
  Word() = default;

  /// Wraps an already reduced sequence; throws DomainError if it is not reduced.
  static Word from_reduced(std::vector<Letter> letters);

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }

  Word inverse() const;
  Word prefix(std::size_t n) const;
  Word suffix(std::size_t n) const;

  /// Canonical order: shorter words first, then lexicographic by letter_key.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);
  friend bool operator==(const Word& a, const Word& b) = default;

 private:
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}
  std::vector<Letter> letters_;

  friend Word free_reduce(std::span<const Letter> letters);
};

bool is_freely_reduced(std::span<const Letter> letters);
bool is_cyclically_reduced(std::span<const Letter> letters);

/// The unique freely reduced form of a letter sequence. Letters must be nonzero.
Word free_reduce(std::span<const Letter> letters);

/// Product of two words, freely reduced.
Word multiply(const Word& a, const Word& b);

/// Index of the lexicographically least rotation (by letter_key).
std::size_t least_rotation(std::span<const Letter> letters);

/// A conjugacy class of a nontrivial element: a cyclically reduced word up to
/// rotation. Stored as its least rotation, so equal classes compare equal.
class CyclicWord {
 public:
  /// Throws DomainError unless `letters` is nonempty and cyclically reduced.
  explicit CyclicWord(std::span<const Letter> letters);
  explicit CyclicWord(const Word& word) : CyclicWord(std::span<const Letter>(word.letters())) {}

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  Letter operator[](std::size_t i) const { return letters_[i % letters_.size()]; }

  /// Representative word starting at the canonical rotation.
  Word word() const { return Word::from_reduced(letters_); }

  CyclicWord power(int exponent) const;
  CyclicWord inverse() const;

  friend std::strong_ordering operator<=>(const CyclicWord& a, const CyclicWord& b);
  friend bool operator==(const CyclicWord& a, const CyclicWord& b) = default;

 private:
  std::vector<Letter> letters_;
};

struct CyclicReduction {
  Word core;        ///< cyclically reduced (possibly empty)
  Word conjugator;  ///< w = conjugator * core * conjugator^{-1}
};

CyclicReduction cyclic_reduce(const Word& w);

/// Cyclic word of a nontrivial element; throws DomainError for the identity.
CyclicWord conjugacy_class(const Word& w);

/// Number of starting positions 0 <= i < ||w|| from which u is read clockwise
/// around w, wrapping as often as needed. n_w(1) = ||w||.
std::uint64_t count_occurrences(const CyclicWord& w, const Word& u);

/// Non-wrapping occurrences of u in w; zero whenever |u| > |w|.
std::uint64_t count_occurrences_linear(const Word& w, const Word& u);

/// f_w(u) = n_w(u) / ||w||, exact.
Rational frequency(const CyclicWord& w, const Word& u);

struct Root {
  CyclicWord root;
  int exponent;
};

/// w = root^exponent with the exponent maximal.
Root deepest_root(const CyclicWord& w);

/// Size of the shift orbit of w viewed as a periodic bi-infinite word, i.e. ||root||.
std::size_t orbit_size(const CyclicWord& w);

/// Calls `visit` for every cyclic word of exactly `length` letters, in
/// canonical order; stops when `visit` returns false.
void for_each_cyclic_word(const Alphabet& alphabet, std::size_t length, const std::function<bool(const CyclicWord&)>& visit);

// Literal syntax: `a`..`z` are a_1..a_26, uppercase is the inverse, `1` is the
// empty word.
Letter parse_letter(char c);
char letter_symbol(Letter x);
Word parse_word(std::string_view text);
Word parse_word(std::string_view text, const Alphabet& alphabet);
std::string to_string(const Word& w);
std::string to_string(const CyclicWord& w);
std::string to_string(std::span<const Letter> letters);

}  // namespace freqspec
