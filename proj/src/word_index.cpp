#include "freqspec/word_index.hpp"

#include "freqspec/errors.hpp"

#include <limits>

namespace freqspec {

WordIndex::WordIndex(Alphabet alphabet, int length)
    : alphabet_(alphabet), length_(length), branch_(static_cast<std::uint64_t>(alphabet.size() - 1)) {
  if (length < 0) throw DomainError("negative word length");
  size_ = alphabet_.word_count(length);
  if (size_ == std::numeric_limits<std::uint64_t>::max()) throw BudgetExceeded("word length too large to index");
  tail_ = length == 0 ? 1 : size_ / static_cast<std::uint64_t>(alphabet_.size());
}

int WordIndex::successor_digit(Letter previous, Letter next) {
  const int key = letter_key(next);
  const int forbidden = letter_key(inverse(previous));
  return key < forbidden ? key : key - 1;
}

Letter WordIndex::successor_letter(Letter previous, int digit) {
  const int forbidden = letter_key(inverse(previous));
  return letter_from_key(digit < forbidden ? digit : digit + 1);
}

std::uint64_t WordIndex::index(std::span<const Letter> letters) const {
  if (static_cast<int>(letters.size()) != length_)
    throw DomainError("word " + to_string(letters) + " does not have length " + std::to_string(length_));
  if (length_ == 0) return 0;
  if (!alphabet_.contains(letters[0])) throw DomainError("letter outside alphabet");
  std::uint64_t idx = static_cast<std::uint64_t>(letter_key(letters[0]));
  for (std::size_t i = 1; i < letters.size(); ++i) {
    if (!alphabet_.contains(letters[i])) throw DomainError("letter outside alphabet");
    if (letters[i] == inverse(letters[i - 1])) throw DomainError("word " + to_string(letters) + " is not reduced");
    idx = idx * branch_ + static_cast<std::uint64_t>(successor_digit(letters[i - 1], letters[i]));
  }
  return idx;
}

void WordIndex::decode(std::uint64_t index, std::vector<Letter>& out) const {
  out.resize(static_cast<std::size_t>(length_));
  if (length_ == 0) return;
  std::uint64_t rest = index % tail_;
  out[0] = letter_from_key(static_cast<int>(index / tail_));
  std::uint64_t scale = tail_;
  for (int i = 1; i < length_; ++i) {
    scale /= branch_;
    const auto digit = static_cast<int>(rest / scale);
    rest %= scale;
    out[static_cast<std::size_t>(i)] = successor_letter(out[static_cast<std::size_t>(i - 1)], digit);
  }
}

Word WordIndex::word(std::uint64_t index) const {
  std::vector<Letter> letters;
  decode(index, letters);
  return Word::from_reduced(std::move(letters));
}

std::uint64_t WordIndex::suffix_index(std::uint64_t index) const {
  if (length_ <= 1) return 0;
  // The second letter's key is recovered from the first letter and digit.
  const Letter first = letter_from_key(static_cast<int>(index / tail_));
  const std::uint64_t rest = index % tail_;
  const std::uint64_t scale = tail_ / branch_;
  const Letter second = successor_letter(first, static_cast<int>(rest / scale));
  return static_cast<std::uint64_t>(letter_key(second)) * scale + rest % scale;
}

void require_indexable(const Alphabet& alphabet, int length, std::uint64_t cap) {
  if (alphabet.word_count(length) > cap)
    throw BudgetExceeded("level " + std::to_string(length) + " needs " + std::to_string(alphabet.word_count(length)) +
                         " words, above the budget of " + std::to_string(cap) +
                         "; window sizes grow doubly exponentially in the number of Nielsen moves");
}

}  // namespace freqspec
