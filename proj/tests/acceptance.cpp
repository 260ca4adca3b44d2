// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any failure.

#include "support.hpp"

#include "freqspec/automorphism.hpp"
#include "freqspec/errors.hpp"
#include "freqspec/optimize.hpp"
#include "freqspec/oracle.hpp"
#include "freqspec/polytope.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace freqspec;

namespace {

const Alphabet kTwo(2);

struct Outcome {
  bool pass = true;
  std::string detail;
};

#define EXPECT(cond, what)                  \
  do {                                      \
    if (!(cond)) {                          \
      std::ostringstream message_;          \
      message_ << what;                     \
      return Outcome{false, message_.str()}; \
    }                                       \
  } while (0)

Rational ratio(std::size_t num, std::size_t den) {
  return Rational(Integer(static_cast<std::uint64_t>(num)), Integer(static_cast<std::uint64_t>(den)));
}

// Distortion computed by the independent substitution code.
Rational oracle_distortion(const std::string& text, int rank, const CyclicWord& w) {
  return ratio(oracle::Substitution::parse(text, rank).cyclic_image_length(w), w.size());
}

std::vector<Word> words_of_length(const Alphabet& alphabet, int length) {
  if (length == 0) return {Word()};
  std::vector<Word> out;
  for (const Word& w : words_of_length(alphabet, length - 1))
    for (Letter x : alphabet.letters())
      if (w.empty() || x != -w.back()) {
        auto letters = w.letters();
        letters.push_back(x);
        out.push_back(Word::from_reduced(letters));
      }
  return out;
}

std::vector<std::string> sample_automorphisms(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> out;
  for (int i = 0; i < count; ++i) out.push_back(testing::random_transvecting_text(rng, 2, 2));
  return out;
}

Outcome example_realization() {
  const FrequencyVector q = parse_frequency_vector("level 3 rank 2\naba = 2/5\nbab = 1/5\naab = 1/5\nbaa = 1/5\n");
  EXPECT(is_realizable(q), "q rejected");
  const CyclicWord w = realize(q).word;
  EXPECT(w.size() == 5, "witness length " << w.size());
  EXPECT(count_occurrences(w, parse_word("aba")) == 2, "n(aba) != 2");
  for (const char* u : {"bab", "aab", "baa"}) EXPECT(count_occurrences(w, parse_word(u)) == 1, "n(" << u << ") != 1");
  EXPECT(frequency_vector(w, 3, kTwo) == q, "witness vector differs");
  EXPECT(frequency_vector(CyclicWord(parse_word("ababaabaab")), 3, kTwo) == q, "second word differs");
  return {true, "witness (" + to_string(w) + ")"};
}

Outcome counting_identities() {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const int rank = 2 + trial % 2;
    const Alphabet alphabet(rank);
    const CyclicWord w = testing::random_cyclic_word(rng, rank, 40);
    const CyclicWord w2 = w.power(2), w3 = w.power(3);
    for (int m = 0; m <= 3; ++m) {
      std::uint64_t total = 0;
      Rational total_f = 0;
      for (const Word& u : words_of_length(alphabet, m)) {
        const std::uint64_t n = count_occurrences(w, u);
        std::uint64_t right = 0, left = 0;
        for (Letter x : alphabet.letters()) {
          if (u.empty() || x != -u.back()) right += count_occurrences(w, multiply(u, Word::from_reduced({x})));
          if (u.empty() || x != -u.front()) left += count_occurrences(w, multiply(Word::from_reduced({x}), u));
        }
        EXPECT(right == n && left == n, "extension sums fail for " << to_string(w) << " at " << to_string(u));
        EXPECT(count_occurrences(w2, u) == 2 * n && count_occurrences(w3, u) == 3 * n, "power rule fails");
        EXPECT(frequency(w3, u) == frequency(w, u), "frequency of power differs");
        total += n;
        total_f += frequency(w, u);
      }
      if (m >= 1) EXPECT(total == w.size() && total_f == 1, "level sum fails at m = " << m);
    }
  }
  return {true, "1000 words"};
}

Outcome level_one() {
  const FrequencyVector q = parse_frequency_vector("level 1 rank 2\na = 1/2\nA = 1/2\n");
  EXPECT(check_membership(q), "q not in Q_1");
  EXPECT(!is_realizable(q), "q accepted");
  const FrequencyVector p = interior_perturb(q, Rational(1, 2));
  EXPECT(is_realizable(p), "perturbation rejected");
  const CyclicWord w = realize(p).word;
  EXPECT(frequency_vector(w, 1, kTwo) == p, "letter frequencies differ");
  return {true, "perturbed point realized by a word of length " + std::to_string(w.size())};
}

Outcome transfer_sweep() {
  std::vector<CyclicWord> sample;
  oracle::enumerate_cyclic_words(2, 10, [&](const CyclicWord& w) { sample.push_back(w); });
  std::size_t tables = 0;
  for (const char* token : {"inv:1", "inv:2", "swap:1:2", "mul:1:2", "mul:2:1"}) {
    const NielsenGen tau = parse_nielsen_gen(token);
    const auto sub = oracle::Substitution::parse(token, 2);
    const LengthWeights d = length_weights(NielsenWord(kTwo, {tau}));
    for (const auto& w : sample) EXPECT(d.predict_length(w) == sub.cyclic_image_length(w), token << " length at " << to_string(w));
    for (int m = 1; m <= 2; ++m)
      for (const Word& u : words_of_length(kTwo, m)) {
        const TransferTable t = transfer_table(tau, u, kTwo);
        const auto failures = oracle::verify_transfer(token, 2, u, t.window_length, t.entries(), sample);
        EXPECT(failures.empty(), token << " target " << to_string(u) << " fails at " << to_string(failures.front().word));
        ++tables;
      }
  }
  return {true, std::to_string(tables) + " tables, " + std::to_string(sample.size()) + " words"};
}

struct SpectrumCase {
  std::string text;
  Extremum plus, minus;
};

std::vector<SpectrumCase>& spectrum_cases() {
  static std::vector<SpectrumCase> cases;
  return cases;
}

Outcome spectrum_vs_oracle() {
  std::vector<std::string> texts{"mul:1:2"};
  for (const auto& t : sample_automorphisms(5, 20)) texts.push_back(t);
  std::size_t equalities = 0;
  for (const auto& text : texts) {
    const NielsenWord phi = parse_nielsen_word(text, kTwo);
    const Extremum plus = nu_plus(phi);
    const Extremum minus = nu_minus(phi);
    spectrum_cases().push_back({text, plus, minus});
    const LengthWeights d = length_weights(phi);
    EXPECT(lp_extremum(kTwo, d.window_length, d.weights, true) == plus.value, text << ": LP max differs");
    EXPECT(lp_extremum(kTwo, d.window_length, d.weights, false) == minus.value, text << ": LP min differs");
    const auto brute = oracle::brute_ratio_extremes(text, 2, 10);
    EXPECT(brute.max_ratio <= plus.value && brute.min_ratio >= minus.value, text << ": brute force outside [nu-, nu+]");
    if (plus.witness.size() <= 10) {
      EXPECT(brute.max_ratio == plus.value, text << ": short optimal cycle but brute max " << to_string(brute.max_ratio));
      ++equalities;
    }
    if (minus.witness.size() <= 10) {
      EXPECT(brute.min_ratio == minus.value, text << ": short optimal cycle but brute min " << to_string(brute.min_ratio));
      ++equalities;
    }
    EXPECT(oracle_distortion(text, 2, plus.witness) == plus.value, text << ": nu+ witness inexact");
    EXPECT(oracle_distortion(text, 2, minus.witness) == minus.value, text << ": nu- witness inexact");
  }
  return {true, std::to_string(texts.size()) + " automorphisms, " + std::to_string(equalities) + " brute-force equalities"};
}

Outcome inverse_duality() {
  EXPECT(!spectrum_cases().empty(), "no sample from the previous check");
  for (const auto& c : spectrum_cases()) {
    const NielsenWord inverse = parse_nielsen_word(c.text, kTwo).inverse();
    EXPECT(c.minus.value * nu_plus(inverse).value == 1, c.text << ": nu- * nu+(inverse) != 1");
  }
  return {true, std::to_string(spectrum_cases().size()) + " automorphisms"};
}

Outcome interval_density() {
  const NielsenWord phi = parse_nielsen_word("mul:1:2", kTwo);
  std::string lengths;
  for (const Rational& r : {Rational(1), Rational(3, 2), Rational(7, 4)}) {
    const CyclicWord w = realize_ratio(phi, r);
    EXPECT(oracle_distortion("mul:1:2", 2, w) == r, "ratio " << to_string(r) << " missed");
    lengths += (lengths.empty() ? "" : ", ") + std::to_string(w.size());
  }
  return {true, "word lengths " + lengths};
}

Outcome rank_two_ceiling() {
  const CyclicWord c(parse_word("abAB"));
  std::size_t below = 0;
  for (const auto& text : sample_automorphisms(8, 50)) {
    const auto sub = oracle::Substitution::parse(text, 2);
    const std::size_t longest = std::max(sub.cyclic_image_length(c), sub.inverse().cyclic_image_length(c));
    EXPECT(longest == 4, text << ": commutator image length " << longest);
    const NielsenWord phi = parse_nielsen_word(text, kTwo);
    const Lambda0Result l = lambda0(phi);
    EXPECT(l.value <= 1, text << ": lambda0 = " << to_string(l.value));
    EXPECT(!is_strictly_hyperbolic(phi), text << ": reported strictly hyperbolic");
    below += l.value < 1;
  }
  return {true, "50 automorphisms, " + std::to_string(below) + " with lambda0 < 1"};
}

Outcome factorization_independence() {
  for (const auto& text : sample_automorphisms(13, 10)) {
    const NielsenWord tau = parse_nielsen_word(text, kTwo);
    const NielsenWord other = parse_nielsen_word(text + " swap:1:2 swap:1:2", kTwo);
    EXPECT(nu_plus(tau).value == nu_plus(other).value, text << ": nu+ differs");
    EXPECT(nu_minus(tau).value == nu_minus(other).value, text << ": nu- differs");
    EXPECT(lambda0(tau).value == lambda0(other).value, text << ": lambda0 differs");
  }
  return {true, "10 automorphisms"};
}

Outcome dimension_bounds() {
  const std::size_t d1 = affine_dimension(enumerate_vertices(kTwo, 1));
  const std::size_t d2 = affine_dimension(enumerate_vertices(kTwo, 2));
  EXPECT(d1 == 3, "dim Q_1 = " << d1);
  EXPECT(d2 >= 7 && d2 <= 11, "dim Q_2 = " << d2);
  return {true, "dim Q_1 = " + std::to_string(d1) + ", dim Q_2 = " + std::to_string(d2)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"example word realization", example_realization},
      {"counting identities", counting_identities},
      {"level-one rejection and perturbation", level_one},
      {"transfer exactness sweep", transfer_sweep},
      {"spectrum against oracle and LP", spectrum_vs_oracle},
      {"inverse duality", inverse_duality},
      {"interval density", interval_density},
      {"rank-two lambda0 ceiling", rank_two_ceiling},
      {"factorization independence", factorization_independence},
      {"polytope dimensions", dimension_bounds},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && outcome.pass;
    std::printf("%s %2zu %-38s %8.2f s  %s\n", outcome.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, seconds,
                outcome.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
