#include "freqspec/words.hpp"

#include "freqspec/errors.hpp"

#include <algorithm>
#include <limits>

namespace freqspec {

Alphabet::Alphabet(int rank) : rank_(rank) {
  if (rank < 2 || rank > 26) throw DomainError("rank must lie in [2, 26], got " + std::to_string(rank));
}

std::vector<Letter> Alphabet::letters() const {
  std::vector<Letter> out;
  out.reserve(size());
  for (int key = 0; key < size(); ++key) out.push_back(letter_from_key(key));
  return out;
}

std::uint64_t Alphabet::letter_count(int m) const { return m == 0 ? 0 : word_count(m); }

std::uint64_t Alphabet::word_count(int m) const {
  if (m < 0) return 0;
  if (m == 0) return 1;
  constexpr auto cap = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t count = static_cast<std::uint64_t>(size());
  const auto branch = static_cast<std::uint64_t>(size() - 1);
  for (int i = 1; i < m; ++i) {
    if (count > cap / branch) return cap;
    count *= branch;
  }
  return count;
}

bool is_freely_reduced(std::span<const Letter> letters) {
  for (std::size_t i = 0; i + 1 < letters.size(); ++i)
    if (letters[i + 1] == inverse(letters[i])) return false;
  return true;
}

bool is_cyclically_reduced(std::span<const Letter> letters) {
  if (!is_freely_reduced(letters)) return false;
  return letters.size() < 2 || letters.back() != inverse(letters.front());
}

Word Word::from_reduced(std::vector<Letter> letters) {
  if (std::find(letters.begin(), letters.end(), 0) != letters.end()) throw DomainError("zero is not a letter");
  if (!is_freely_reduced(letters)) throw DomainError("word " + to_string(letters) + " is not freely reduced");
  return Word(std::move(letters));
}

Word Word::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (auto& x : out) x = freqspec::inverse(x);
  return Word(std::move(out));
}

Word Word::prefix(std::size_t n) const {
  return Word(std::vector<Letter>(letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(std::min(n, size()))));
}

Word Word::suffix(std::size_t n) const {
  n = std::min(n, size());
  return Word(std::vector<Letter>(letters_.end() - static_cast<std::ptrdiff_t>(n), letters_.end()));
}

namespace {

std::strong_ordering compare_keys(std::span<const Letter> a, std::span<const Letter> b) {
  if (a.size() != b.size()) return a.size() <=> b.size();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return letter_key(a[i]) <=> letter_key(b[i]);
  return std::strong_ordering::equal;
}

}  // namespace

std::strong_ordering operator<=>(const Word& a, const Word& b) { return compare_keys(a.letters_, b.letters_); }

Word free_reduce(std::span<const Letter> letters) {
  std::vector<Letter> stack;
  stack.reserve(letters.size());
  for (Letter x : letters) {
    if (x == 0) throw DomainError("zero is not a letter");
    if (!stack.empty() && stack.back() == inverse(x))
      stack.pop_back();
    else
      stack.push_back(x);
  }
  return Word(std::move(stack));
}

Word multiply(const Word& a, const Word& b) {
  std::vector<Letter> joined(a.letters());
  joined.insert(joined.end(), b.letters().begin(), b.letters().end());
  return free_reduce(joined);
}

std::size_t least_rotation(std::span<const Letter> s) {
  // Two-candidate scan; O(n).
  const std::size_t n = s.size();
  if (n < 2) return 0;
  std::size_t i = 0, j = 1, k = 0;
  while (i < n && j < n && k < n) {
    const int a = letter_key(s[(i + k) % n]);
    const int b = letter_key(s[(j + k) % n]);
    if (a == b) {
      ++k;
      continue;
    }
    if (a > b)
      i += k + 1;
    else
      j += k + 1;
    if (i == j) ++j;
    k = 0;
  }
  return std::min(i, j);
}

CyclicWord::CyclicWord(std::span<const Letter> letters) {
  if (letters.empty()) throw DomainError("a cyclic word must be nontrivial");
  if (std::find(letters.begin(), letters.end(), 0) != letters.end()) throw DomainError("zero is not a letter");
  if (!is_cyclically_reduced(letters)) throw DomainError("word " + to_string(letters) + " is not cyclically reduced");
  const std::size_t start = least_rotation(letters);
  letters_.reserve(letters.size());
  for (std::size_t i = 0; i < letters.size(); ++i) letters_.push_back(letters[(start + i) % letters.size()]);
}

CyclicWord CyclicWord::power(int exponent) const {
  if (exponent < 1) throw DomainError("cyclic word powers must be positive");
  std::vector<Letter> out;
  out.reserve(letters_.size() * static_cast<std::size_t>(exponent));
  for (int e = 0; e < exponent; ++e) out.insert(out.end(), letters_.begin(), letters_.end());
  return CyclicWord(out);
}

CyclicWord CyclicWord::inverse() const { return CyclicWord(word().inverse()); }

std::strong_ordering operator<=>(const CyclicWord& a, const CyclicWord& b) {
  return compare_keys(a.letters_, b.letters_);
}

CyclicReduction cyclic_reduce(const Word& w) {
  const auto& s = w.letters();
  std::size_t lo = 0, hi = s.size();
  while (hi - lo >= 2 && s[hi - 1] == inverse(s[lo])) {
    ++lo;
    --hi;
  }
  return {Word::from_reduced(std::vector<Letter>(s.begin() + static_cast<std::ptrdiff_t>(lo),
                                                 s.begin() + static_cast<std::ptrdiff_t>(hi))),
          w.prefix(lo)};
}

CyclicWord conjugacy_class(const Word& w) {
  const auto core = cyclic_reduce(w).core;
  if (core.empty()) throw DomainError("the identity has no cyclic word");
  return CyclicWord(core);
}

std::uint64_t count_occurrences(const CyclicWord& w, const Word& u) {
  const std::size_t n = w.size();
  if (u.empty()) return n;
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    bool match = true;
    for (std::size_t j = 0; j < u.size() && match; ++j) match = w[i + j] == u[j];
    count += match ? 1 : 0;
  }
  return count;
}

std::uint64_t count_occurrences_linear(const Word& w, const Word& u) {
  if (u.empty()) return w.size();
  if (u.size() > w.size()) return 0;
  std::uint64_t count = 0;
  for (std::size_t i = 0; i + u.size() <= w.size(); ++i)
    count += std::equal(u.letters().begin(), u.letters().end(), w.letters().begin() + static_cast<std::ptrdiff_t>(i)) ? 1 : 0;
  return count;
}

Rational frequency(const CyclicWord& w, const Word& u) {
  return Rational(Integer(count_occurrences(w, u)), Integer(w.size()));
}

Root deepest_root(const CyclicWord& w) {
  const std::size_t n = w.size();
  for (std::size_t p = 1; p <= n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i) periodic = w[i] == w[i - p];
    if (periodic)
      return {CyclicWord(std::span<const Letter>(w.letters().data(), p)), static_cast<int>(n / p)};
  }
  return {w, 1};
}

std::size_t orbit_size(const CyclicWord& w) { return deepest_root(w).root.size(); }

void for_each_cyclic_word(const Alphabet& alphabet, std::size_t length, const std::function<bool(const CyclicWord&)>& visit) {
  if (length == 0) return;
  const auto letters = alphabet.letters();
  std::vector<Letter> current;
  current.reserve(length);
  // Depth-first over reduced words; keep those that are cyclically reduced and
  // equal to their least rotation.
  std::function<bool()> extend = [&]() -> bool {
    if (current.size() == length) {
      if (length > 1 && current.back() == inverse(current.front())) return true;
      if (least_rotation(current) != 0) return true;
      return visit(CyclicWord(current));
    }
    for (Letter x : letters) {
      if (!current.empty() && x == inverse(current.back())) continue;
      if (!current.empty() && letter_key(x) < letter_key(current.front())) continue;
      current.push_back(x);
      const bool go_on = extend();
      current.pop_back();
      if (!go_on) return false;
    }
    return true;
  };
  extend();
}

Letter parse_letter(char c) {
  if (c >= 'a' && c <= 'z') return c - 'a' + 1;
  if (c >= 'A' && c <= 'Z') return -(c - 'A' + 1);
  throw ParseError(std::string("unknown letter symbol '") + c + "'");
}

char letter_symbol(Letter x) {
  if (x == 0 || x > 26 || x < -26) throw DomainError("letter out of printable range");
  return x > 0 ? static_cast<char>('a' + x - 1) : static_cast<char>('A' - x - 1);
}

Word parse_word(std::string_view text) {
  if (text == "1") return {};
  std::vector<Letter> letters;
  letters.reserve(text.size());
  for (char c : text) letters.push_back(parse_letter(c));
  return free_reduce(letters);
}

Word parse_word(std::string_view text, const Alphabet& alphabet) {
  Word w = parse_word(text);
  for (Letter x : w.letters())
    if (!alphabet.contains(x))
      throw ParseError(std::string("letter '") + letter_symbol(x) + "' exceeds rank " + std::to_string(alphabet.rank()));
  return w;
}

std::string to_string(std::span<const Letter> letters) {
  if (letters.empty()) return "1";
  std::string out;
  out.reserve(letters.size());
  for (Letter x : letters) out.push_back(letter_symbol(x));
  return out;
}

std::string to_string(const Word& w) { return to_string(std::span<const Letter>(w.letters())); }

std::string to_string(const CyclicWord& w) { return to_string(std::span<const Letter>(w.letters())); }

}  // namespace freqspec
