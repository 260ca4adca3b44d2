#pragma once

// Brute-force reference implementations. Only the words, frequency vector and
// exact linear algebra layers are shared with the rest of the library; the
// automorphism mini-language is parsed and applied here independently.

#include "freqspec/frequency_vector.hpp"
#include "freqspec/rational.hpp"
#include "freqspec/words.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string_view>
#include <vector>

namespace freqspec::oracle {

/// Letter substitution parsed from `inv:i`, `swap:i:j`, `mul:i:j` tokens; the
/// last token acts first.
class Substitution {
 public:
  static Substitution parse(std::string_view text, int rank);

  int rank() const { return rank_; }
  /// Freely reduced image of a word.
  std::vector<Letter> image(std::span<const Letter> word) const;
  /// Length of the cyclically reduced image of a cyclic word.
  std::size_t cyclic_image_length(const CyclicWord& w) const;
  Substitution inverse() const;

 private:
  struct Move {
    char kind;  // 'i' invert, 's' swap, 'm' a_i -> a_i a_j, 'd' a_i -> a_i a_j^{-1}
    int i, j;
  };
  std::vector<Letter> move_letter(const Move& move, Letter x) const;

  int rank_ = 2;
  std::vector<Move> moves_;
};

/// Streams every cyclic word with 1 <= length <= max_length, one canonical
/// representative each, length by length. Necklaces are generated in
/// letter-key order by the Fredricksen-Kessler-Maiorana recursion and filtered
/// for cyclic reducedness.
void enumerate_cyclic_words(int rank, std::size_t max_length, const std::function<void(const CyclicWord&)>& visit);

/// Number of cyclic words of exactly `length` letters, by filtering all
/// (2k)^length strings.
std::uint64_t count_cyclic_words_by_filter(int rank, std::size_t length);

struct RatioExtremes {
  Rational min_ratio, max_ratio;
  std::vector<CyclicWord> argmins, argmaxes;  ///< first few in enumeration order
  std::uint64_t words = 0;
};

/// Extremes of ||phi(w)|| / ||w|| over all cyclic words with ||w|| <= max_length.
RatioExtremes brute_ratio_extremes(std::string_view automorphism, int rank, std::size_t max_length);

/// min over ||w|| <= max_length of max{||phi(w)||, ||phi^-1(w)||} / ||w||.
struct LambdaBound {
  Rational value;
  std::vector<CyclicWord> argmins;
};
LambdaBound brute_lambda_upper_bound(std::string_view automorphism, int rank, std::size_t max_length);

struct TransferCounterexample {
  CyclicWord word;
  std::uint64_t predicted;
  std::uint64_t actual;
};

/// Compares n_{phi(w)}(target) with sum_v c(v) n_w(v) on each sample word,
/// the sum taken as c summed over the ||w|| cyclic windows of length L.
std::vector<TransferCounterexample> verify_transfer(std::string_view automorphism, int rank, const Word& target,
                                                    int window_length, const std::map<Word, std::uint64_t>& coefficients,
                                                    const std::vector<CyclicWord>& sample);

/// Vertices of Q_m found as basic feasible solutions: every column subset of
/// the size of the constraint rank is solved exactly and kept when
/// nonnegative. Sorted and duplicate-free.
std::vector<FrequencyVector> enumerate_vertices_generic(int rank, int m);

}  // namespace freqspec::oracle
