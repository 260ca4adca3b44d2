#pragma once

#include "freqspec/frequency_vector.hpp"
#include "freqspec/words.hpp"

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace freqspec {

/// Elementary Nielsen automorphism.
///   Invert(i):      a_i -> a_i^{-1}
///   Swap(i, j):     a_i <-> a_j
///   Multiply(i, j): a_i -> a_i a_j
struct NielsenGen {
  enum class Kind { Invert, Swap, Multiply };

  Kind kind = Kind::Invert;
  int i = 1;
  int j = 0;

  static NielsenGen invert(int i) { return {Kind::Invert, i, 0}; }
  static NielsenGen swap(int i, int j) { return {Kind::Swap, i, j}; }
  static NielsenGen multiply(int i, int j) { return {Kind::Multiply, i, j}; }

  /// Reduced image of a single letter; at most two letters long.
  std::vector<Letter> image(Letter x) const;
  /// Generators whose composition is the inverse automorphism.
  std::vector<NielsenGen> inverse() const;
  /// Throws DomainError when an index is out of range or i == j.
  void validate(int rank) const;

  friend bool operator==(const NielsenGen&, const NielsenGen&) = default;
};

/// Token syntax: `inv:i`, `swap:i:j`, `mul:i:j`.
NielsenGen parse_nielsen_gen(std::string_view token);
std::string to_string(const NielsenGen& g);

/// phi = tau_1 tau_2 ... tau_t, acting by phi(w) = tau_1(tau_2(...tau_t(w))).
/// The empty sequence is the identity.
class NielsenWord {
 public:
  NielsenWord(Alphabet alphabet, std::vector<NielsenGen> gens);

  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<NielsenGen>& gens() const { return gens_; }
  std::size_t length() const { return gens_.size(); }
  bool is_identity_word() const { return gens_.empty(); }

  NielsenWord inverse() const;
  NielsenWord power(int n) const;
  /// this * other, i.e. apply `other` first.
  NielsenWord then_after(const NielsenWord& other) const;

  /// phi(a_1), ..., phi(a_k).
  std::vector<Word> generator_images() const;
  /// L(phi) = max over letters x of |phi(x)|.
  std::size_t max_image_length() const;

  friend bool operator==(const NielsenWord&, const NielsenWord&) = default;

 private:
  Alphabet alphabet_;
  std::vector<NielsenGen> gens_;
};

/// Whitespace-separated tokens; an empty string or `id` is the identity.
NielsenWord parse_nielsen_word(std::string_view text, const Alphabet& alphabet);
std::string to_string(const NielsenWord& phi);

Word apply(const NielsenWord& phi, const Word& w);
CyclicWord apply_cyclic(const NielsenWord& phi, const CyclicWord& w);

/// Window coefficients for one target word u:
///   n_{phi(w)}(u) = sum over |v| = L of c(v) n_w(v)   for every cyclic word w.
/// c(v) counts the occurrences of u in the image that start inside the block
/// of the letter at position `anchor` of v.
struct TransferTable {
  Alphabet alphabet;
  Word target;
  int window_length = 0;
  int anchor = 0;
  /// Nonzero coefficients keyed by WordIndex at window_length, sorted.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> coefficients;

  std::uint64_t coefficient(const Word& v) const;
  std::map<Word, std::uint64_t> entries() const;
  /// sum_v c(v) n_w(v), evaluated as the sum of c over the ||w|| cyclic windows.
  std::uint64_t predict(const CyclicWord& w) const;
};

/// ||phi(w)|| = sum over |v| = L of d(v) n_w(v). Dense over WordIndex(L).
struct LengthWeights {
  Alphabet alphabet;
  int window_length = 1;
  int anchor = 0;
  std::vector<std::int64_t> weights;

  std::int64_t weight(const Word& v) const;
  std::uint64_t predict_length(const CyclicWord& w) const;
  /// sum_v d(v) q_v; q is projected down when its level exceeds the window.
  Rational evaluate(const FrequencyVector& q) const;
};

/// Smallest certified window for phi and target u, computed by the block code;
/// padded on the right to length 2|u|+6 for a single generator.
TransferTable transfer_table(const NielsenGen& tau, const Word& u, const Alphabet& alphabet);

/// Direct multi-stage block code at the smallest certified window.
TransferTable block_transfer(const NielsenWord& phi, const Word& u);

/// Composition of sums: c(v) = sum_z c_{tau_1}(z, u) c_psi(v, z) for
/// phi = tau_1 psi, each inner table at its own certified window, padded to a
/// common length.
TransferTable compose_transfer(const NielsenWord& phi, const Word& u);

/// Right padding: c'(vx) = c(v). Requires length >= window_length.
TransferTable pad_table(const TransferTable& table, int length);

/// Window from the recursion L_1(m) = 2m+6, L_t(m) = 2 L_{t-1}(m) + 6.
std::uint64_t nominal_window(std::size_t t, std::size_t m);

LengthWeights length_weights(const NielsenWord& phi);
LengthWeights pad_weights(const LengthWeights& weights, int length);

/// Level needed by act_on_frequencies for targets of length m.
int required_level(const NielsenWord& phi, int m);

/// The fractional-linear image
///   phi~(q)_u = sum_v c(v, u) q_v / sum_v d(v) q_v   for |u| = m.
/// q must lie in Q_n with n >= required_level(phi, m); it is projected down.
FrequencyVector act_on_frequencies(const NielsenWord& phi, const FrequencyVector& q, int m);

/// Header `table length L rank k target u anchor a`, then `v = c` lines.
void write_transfer_table(std::ostream& out, const TransferTable& table);

}  // namespace freqspec
