#pragma once

#include "freqspec/rational.hpp"
#include "freqspec/words.hpp"

#include <istream>
#include <map>
#include <ostream>
#include <string>

namespace freqspec {

/// Sparse level-m vector (q_v)_{|v|=m} with exact rational entries. Keys are
/// reduced words of length m over the alphabet; absent keys are zero.
class FrequencyVector {
 public:
  FrequencyVector(Alphabet alphabet, int level);

  const Alphabet& alphabet() const { return alphabet_; }
  int level() const { return level_; }

  Rational get(const Word& v) const;
  /// Throws DomainError for a key of the wrong length or outside the alphabet.
  void set(const Word& v, const Rational& value);
  void add(const Word& v, const Rational& value);

  const std::map<Word, Rational>& entries() const { return entries_; }
  std::size_t support_size() const { return entries_.size(); }
  Rational total() const;

  FrequencyVector scaled(const Rational& factor) const;
  /// Pointwise a*this + b*other; both vectors must share level and alphabet.
  FrequencyVector combined(const Rational& a, const FrequencyVector& other, const Rational& b) const;

  friend bool operator==(const FrequencyVector&, const FrequencyVector&) = default;

 private:
  void check_key(const Word& v) const;

  Alphabet alphabet_;
  int level_;
  std::map<Word, Rational> entries_;
};

/// Text format:
///   level <m> rank <k>
///   <word> = <p/q>
/// Blank lines and lines starting with '#' are ignored.
FrequencyVector read_frequency_vector(std::istream& in);
FrequencyVector parse_frequency_vector(const std::string& text);
void write_frequency_vector(std::ostream& out, const FrequencyVector& q);
std::string to_string(const FrequencyVector& q);

/// The level-m frequency vector of a cyclic word.
FrequencyVector frequency_vector(const CyclicWord& w, int m, const Alphabet& alphabet);

}  // namespace freqspec
