#include "freqspec/oracle.hpp"

#include "freqspec/errors.hpp"
#include "freqspec/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <string>

namespace freqspec::oracle {

namespace {

constexpr std::size_t kKeepWitnesses = 16;

int index_of(const std::string& text) {
  try {
    std::size_t used = 0;
    const int value = std::stoi(text, &used);
    if (used != text.size()) throw ParseError("bad index '" + text + "'");
    return value;
  } catch (const std::logic_error&) {
    throw ParseError("bad index '" + text + "'");
  }
}

int key_of(Letter x) { return 2 * ((x < 0 ? -x : x) - 1) + (x < 0 ? 1 : 0); }
Letter letter_of(int key) { return key % 2 == 0 ? key / 2 + 1 : -(key / 2 + 1); }

bool cyclically_reduced(const std::vector<Letter>& w) {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[(i + 1) % w.size()] == -w[i]) return false;
  return !w.empty();
}

// Naive canonical test: no rotation is smaller in letter-key order.
bool is_least_rotation(const std::vector<Letter>& w) {
  const std::size_t n = w.size();
  for (std::size_t r = 1; r < n; ++r)
    for (std::size_t i = 0; i < n; ++i) {
      const int a = key_of(w[(r + i) % n]);
      const int b = key_of(w[i]);
      if (a < b) return false;
      if (a > b) break;
    }
  return true;
}

void all_reduced_words(int rank, int m, std::vector<Letter>& prefix, std::vector<std::vector<Letter>>& out) {
  if (static_cast<int>(prefix.size()) == m) {
    out.push_back(prefix);
    return;
  }
  for (int key = 0; key < 2 * rank; ++key) {
    const Letter x = letter_of(key);
    if (!prefix.empty() && x == -prefix.back()) continue;
    prefix.push_back(x);
    all_reduced_words(rank, m, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

Substitution Substitution::parse(std::string_view text, int rank) {
  Substitution s;
  s.rank_ = rank;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    if (token == "id") continue;
    std::vector<std::string> parts;
    std::stringstream fields(token);
    for (std::string part; std::getline(fields, part, ':');) parts.push_back(part);
    Move move{};
    if (parts.size() == 2 && parts[0] == "inv") {
      move = {'i', index_of(parts[1]), 0};
    } else if (parts.size() == 3 && (parts[0] == "swap" || parts[0] == "mul")) {
      move = {parts[0] == "swap" ? 's' : 'm', index_of(parts[1]), index_of(parts[2])};
      if (move.i == move.j) throw ParseError("repeated index in '" + token + "'");
    } else {
      throw ParseError("unknown token '" + token + "'");
    }
    if (move.i < 1 || move.i > rank || (move.kind != 'i' && (move.j < 1 || move.j > rank)))
      throw ParseError("index out of range in '" + token + "'");
    s.moves_.push_back(move);
  }
  return s;
}

std::vector<Letter> Substitution::move_letter(const Move& move, Letter x) const {
  const int a = x < 0 ? -x : x;
  const int sign = x < 0 ? -1 : 1;
  switch (move.kind) {
    case 'i':
      return {a == move.i ? -x : x};
    case 's':
      return {a == move.i ? sign * move.j : a == move.j ? sign * move.i : x};
    case 'm':
    case 'd': {
      if (a != move.i) return {x};
      const Letter tail = move.kind == 'm' ? move.j : -move.j;
      if (sign > 0) return {move.i, tail};
      return {-tail, -move.i};
    }
    default:
      throw InvariantViolation("unknown oracle move");
  }
}

std::vector<Letter> Substitution::image(std::span<const Letter> word) const {
  std::vector<Letter> current(word.begin(), word.end());
  for (auto it = moves_.rbegin(); it != moves_.rend(); ++it) {
    std::vector<Letter> stack;
    for (Letter x : current)
      for (Letter y : move_letter(*it, x)) {
        if (!stack.empty() && stack.back() == -y)
          stack.pop_back();
        else
          stack.push_back(y);
      }
    current = std::move(stack);
  }
  return current;
}

std::size_t Substitution::cyclic_image_length(const CyclicWord& w) const {
  const auto img = image(w.letters());
  std::size_t lo = 0, hi = img.size();
  while (hi - lo >= 2 && img[hi - 1] == -img[lo]) {
    ++lo;
    --hi;
  }
  return hi - lo;
}

Substitution Substitution::inverse() const {
  Substitution out;
  out.rank_ = rank_;
  for (auto it = moves_.rbegin(); it != moves_.rend(); ++it) {
    Move m = *it;
    if (m.kind == 'm')
      m.kind = 'd';
    else if (m.kind == 'd')
      m.kind = 'm';
    out.moves_.push_back(m);
  }
  return out;
}

void enumerate_cyclic_words(int rank, std::size_t max_length, const std::function<void(const CyclicWord&)>& visit) {
  if (rank < 2) throw DomainError("rank must be at least 2");
  const int symbols = 2 * rank;
  for (std::size_t n = 1; n <= max_length; ++n) {
    std::vector<int> a(n + 1, 0);
    std::vector<Letter> letters(n);
    std::function<void(std::size_t, std::size_t)> grow = [&](std::size_t t, std::size_t p) {
      if (t > n) {
        if (n % p != 0) return;
        for (std::size_t i = 0; i < n; ++i) letters[i] = letter_of(a[i + 1]);
        if (cyclically_reduced(letters)) visit(CyclicWord(letters));
        return;
      }
      for (int j = a[t - p]; j < symbols; ++j) {
        a[t] = j;
        if (t > 1 && letter_of(j) == -letter_of(a[t - 1])) continue;
        grow(t + 1, j == a[t - p] ? p : t);
      }
    };
    grow(1, 1);
  }
}

std::uint64_t count_cyclic_words_by_filter(int rank, std::size_t length) {
  const auto symbols = static_cast<std::uint64_t>(2 * rank);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < length; ++i) total *= symbols;
  std::uint64_t count = 0;
  std::vector<Letter> w(length);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t rest = code;
    for (std::size_t i = 0; i < length; ++i) {
      w[length - 1 - i] = letter_of(static_cast<int>(rest % symbols));
      rest /= symbols;
    }
    if (cyclically_reduced(w) && is_least_rotation(w)) ++count;
  }
  return count;
}

RatioExtremes brute_ratio_extremes(std::string_view automorphism, int rank, std::size_t max_length) {
  const Substitution phi = Substitution::parse(automorphism, rank);
  RatioExtremes out;
  bool first = true;
  enumerate_cyclic_words(rank, max_length, [&](const CyclicWord& w) {
    ++out.words;
    const Rational r(Integer(static_cast<std::uint64_t>(phi.cyclic_image_length(w))), Integer(static_cast<std::uint64_t>(w.size())));
    if (first || r < out.min_ratio) {
      out.min_ratio = r;
      out.argmins.clear();
    }
    if (first || r > out.max_ratio) {
      out.max_ratio = r;
      out.argmaxes.clear();
    }
    first = false;
    if (r == out.min_ratio && out.argmins.size() < kKeepWitnesses) out.argmins.push_back(w);
    if (r == out.max_ratio && out.argmaxes.size() < kKeepWitnesses) out.argmaxes.push_back(w);
  });
  return out;
}

LambdaBound brute_lambda_upper_bound(std::string_view automorphism, int rank, std::size_t max_length) {
  const Substitution phi = Substitution::parse(automorphism, rank);
  const Substitution inv = phi.inverse();
  LambdaBound out;
  bool first = true;
  enumerate_cyclic_words(rank, max_length, [&](const CyclicWord& w) {
    const auto longest = std::max(phi.cyclic_image_length(w), inv.cyclic_image_length(w));
    const Rational r(Integer(static_cast<std::uint64_t>(longest)), Integer(static_cast<std::uint64_t>(w.size())));
    if (first || r < out.value) {
      out.value = r;
      out.argmins.clear();
    }
    first = false;
    if (r == out.value && out.argmins.size() < kKeepWitnesses) out.argmins.push_back(w);
  });
  return out;
}

std::vector<TransferCounterexample> verify_transfer(std::string_view automorphism, int rank, const Word& target,
                                                    int window_length, const std::map<Word, std::uint64_t>& coefficients,
                                                    const std::vector<CyclicWord>& sample) {
  const Substitution phi = Substitution::parse(automorphism, rank);
  std::vector<TransferCounterexample> out;
  std::vector<Letter> window(static_cast<std::size_t>(window_length));
  for (const auto& w : sample) {
    std::uint64_t predicted = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      for (std::size_t j = 0; j < window.size(); ++j) window[j] = w[i + j];
      const auto it = coefficients.find(Word::from_reduced(window));
      if (it != coefficients.end()) predicted += it->second;
    }
    const auto img = phi.image(w.letters());
    const std::uint64_t actual = count_occurrences(conjugacy_class(Word::from_reduced(img)), target);
    if (predicted != actual) out.push_back({w, predicted, actual});
  }
  return out;
}

std::vector<FrequencyVector> enumerate_vertices_generic(int rank, int m) {
  if (m < 1) throw DomainError("level must be at least 1");
  std::vector<std::vector<Letter>> edges, vertices;
  std::vector<Letter> scratch;
  all_reduced_words(rank, m, scratch, edges);
  all_reduced_words(rank, m - 1, scratch, vertices);
  if (edges.size() > 64) throw BudgetExceeded("generic vertex enumeration is limited to 64 coordinates");

  auto vertex_row = [&](std::span<const Letter> u) {
    return static_cast<std::size_t>(std::find(vertices.begin(), vertices.end(), std::vector<Letter>(u.begin(), u.end())) -
                                    vertices.begin());
  };
  RationalMatrix a(vertices.size() + 1, std::vector<Rational>(edges.size()));
  std::vector<Rational> b(vertices.size() + 1);
  b.back() = 1;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const std::span<const Letter> v(edges[e]);
    a[vertex_row(v.first(v.size() - 1))][e] += 1;
    a[vertex_row(v.last(v.size() - 1))][e] -= 1;
    a.back()[e] = 1;
  }
  const std::size_t r = matrix_rank(a);

  const Alphabet alphabet(rank);
  std::vector<FrequencyVector> out;
  std::vector<std::size_t> subset(r);
  for (std::size_t i = 0; i < r; ++i) subset[i] = i;
  while (true) {
    RationalMatrix sub(a.size(), std::vector<Rational>(r));
    for (std::size_t row = 0; row < a.size(); ++row)
      for (std::size_t c = 0; c < r; ++c) sub[row][c] = a[row][subset[c]];
    if (const auto x = solve_unique(sub, b)) {
      if (std::all_of(x->begin(), x->end(), [](const Rational& v) { return v >= 0; })) {
        FrequencyVector q(alphabet, m);
        for (std::size_t c = 0; c < r; ++c)
          if ((*x)[c] != 0) q.set(Word::from_reduced(edges[subset[c]]), (*x)[c]);
        if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(std::move(q));
      }
    }
    // Next r-subset in lexicographic order.
    std::size_t i = r;
    while (i > 0 && subset[i - 1] == edges.size() - r + i - 1) --i;
    if (i == 0) break;
    ++subset[i - 1];
    for (std::size_t j = i; j < r; ++j) subset[j] = subset[j - 1] + 1;
  }
  std::sort(out.begin(), out.end(), [](const FrequencyVector& x, const FrequencyVector& y) {
    return std::lexicographical_compare(x.entries().begin(), x.entries().end(), y.entries().begin(), y.entries().end(),
                                        [](const auto& p, const auto& q) {
                                          if (p.first != q.first) return p.first < q.first;
                                          return p.second < q.second;
                                        });
  });
  return out;
}

}  // namespace freqspec::oracle
