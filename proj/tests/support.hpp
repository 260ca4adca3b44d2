#pragma once

#include "freqspec/words.hpp"

#include <random>
#include <string>

namespace freqspec::testing {

inline Letter random_letter(std::mt19937_64& rng, int rank) {
  std::uniform_int_distribution<int> pick(0, 2 * rank - 1);
  return letter_from_key(pick(rng));
}

// Uniform length in [1, max_length], letters drawn until the word is
// cyclically reduced.
inline CyclicWord random_cyclic_word(std::mt19937_64& rng, int rank, std::size_t max_length) {
  std::uniform_int_distribution<std::size_t> length(1, max_length);
  const std::size_t n = length(rng);
  std::vector<Letter> w;
  while (w.size() < n) {
    const Letter x = random_letter(rng, rank);
    if (!w.empty() && x == -w.back()) continue;
    if (w.size() + 1 == n && n > 1 && x == -w.front()) continue;
    w.push_back(x);
  }
  return CyclicWord(w);
}

inline std::vector<std::string> nielsen_generators(int rank) {
  std::vector<std::string> out;
  for (int i = 1; i <= rank; ++i) out.push_back("inv:" + std::to_string(i));
  for (int i = 1; i <= rank; ++i)
    for (int j = i + 1; j <= rank; ++j) out.push_back("swap:" + std::to_string(i) + ":" + std::to_string(j));
  for (int i = 1; i <= rank; ++i)
    for (int j = 1; j <= rank; ++j)
      if (i != j) out.push_back("mul:" + std::to_string(i) + ":" + std::to_string(j));
  return out;
}

// 1..max_tokens generators drawn uniformly, never repeating an involution
// back to back.
inline std::string random_nielsen_text(std::mt19937_64& rng, int rank, int max_tokens) {
  const auto gens = nielsen_generators(rank);
  std::uniform_int_distribution<int> count(1, max_tokens);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  const int t = count(rng);
  std::string text, previous;
  for (int i = 0; i < t;) {
    const std::string& g = gens[pick(rng)];
    if (g == previous && g.rfind("mul", 0) != 0) continue;
    text += (i++ ? " " : "") + g;
    previous = g;
  }
  return text;
}

// As above, with at least one transvection.
inline std::string random_transvecting_text(std::mt19937_64& rng, int rank, int max_tokens) {
  while (true) {
    std::string text = random_nielsen_text(rng, rank, max_tokens);
    if (text.find("mul") != std::string::npos) return text;
  }
}

}  // namespace freqspec::testing
