#include "doctest.h"
#include "support.hpp"

#include "freqspec/automorphism.hpp"
#include "freqspec/errors.hpp"
#include "freqspec/oracle.hpp"
#include "freqspec/polytope.hpp"

#include <cstdlib>
#include <sstream>

using namespace freqspec;

namespace {

const Alphabet kTwo(2);

std::vector<CyclicWord> all_cyclic_words(int rank, std::size_t max_length) {
  std::vector<CyclicWord> out;
  oracle::enumerate_cyclic_words(rank, max_length, [&](const CyclicWord& w) { out.push_back(w); });
  return out;
}

std::vector<Word> reduced_words(const Alphabet& alphabet, int length) {
  std::vector<Word> out;
  if (length == 0) return {Word()};
  for (const Word& w : reduced_words(alphabet, length - 1))
    for (Letter x : alphabet.letters())
      if (w.empty() || x != -w.back()) {
        auto letters = w.letters();
        letters.push_back(x);
        out.push_back(Word::from_reduced(letters));
      }
  return out;
}

}  // namespace

TEST_CASE("Nielsen token parsing") {
  const NielsenWord phi = parse_nielsen_word("mul:1:2  inv:2\tswap:1:3", Alphabet(3));
  CHECK(phi.length() == 3);
  CHECK(to_string(phi) == "mul:1:2 inv:2 swap:1:3");
  CHECK(parse_nielsen_word("id", kTwo).is_identity_word());
  CHECK(parse_nielsen_word("", kTwo).is_identity_word());
  CHECK_THROWS_AS(parse_nielsen_word("mul:1:1", kTwo), ParseError);
  CHECK_THROWS_AS(parse_nielsen_word("inv:3", kTwo), ParseError);
  CHECK_THROWS_AS(parse_nielsen_word("rot:1", kTwo), ParseError);
  CHECK_THROWS_AS(parse_nielsen_word("mul:1", kTwo), ParseError);
  CHECK_THROWS_AS(parse_nielsen_word("mul:1:x", kTwo), ParseError);
}

TEST_CASE("the last token acts first") {
  const NielsenWord phi = parse_nielsen_word("mul:1:2 inv:2", kTwo);
  const auto images = phi.generator_images();
  CHECK(to_string(images[0]) == "ab");
  CHECK(to_string(images[1]) == "B");
  CHECK(phi.max_image_length() == 2);
}

TEST_CASE("images of single generators") {
  CHECK(to_string(apply(parse_nielsen_word("mul:1:2", kTwo), parse_word("aBA"))) == "aBA");
  CHECK(to_string(apply(parse_nielsen_word("mul:1:2", kTwo), parse_word("ab"))) == "abb");
  CHECK(to_string(apply_cyclic(parse_nielsen_word("mul:2:1", kTwo), CyclicWord(parse_word("aB")))) == "B");
  CHECK(to_string(apply_cyclic(parse_nielsen_word("swap:1:2", kTwo), CyclicWord(parse_word("aab")))) == "abb");
  CHECK(to_string(apply_cyclic(parse_nielsen_word("inv:1", kTwo), CyclicWord(parse_word("ab")))) == "Ab");
}

TEST_CASE("inverse and powers") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const int rank = 2 + trial % 2;
    const NielsenWord phi = parse_nielsen_word(testing::random_nielsen_text(rng, rank, 4), Alphabet(rank));
    const CyclicWord w = testing::random_cyclic_word(rng, rank, 20);
    CHECK(apply_cyclic(phi.inverse(), apply_cyclic(phi, w)) == w);
    CHECK(apply_cyclic(phi, apply_cyclic(phi.inverse(), w)) == w);
    CHECK(apply_cyclic(phi.power(3), w) == apply_cyclic(phi, apply_cyclic(phi, apply_cyclic(phi, w))));
    CHECK(apply_cyclic(phi.power(-2), w) == apply_cyclic(phi.inverse(), apply_cyclic(phi.inverse(), w)));
  }
}

TEST_CASE("library and oracle substitutions agree") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const int rank = 2 + trial % 2;
    const std::string text = testing::random_nielsen_text(rng, rank, 5);
    const NielsenWord phi = parse_nielsen_word(text, Alphabet(rank));
    const auto sub = oracle::Substitution::parse(text, rank);
    const auto inverse = sub.inverse();
    for (int i = 0; i < 10; ++i) {
      const CyclicWord w = testing::random_cyclic_word(rng, rank, 25);
      CHECK(sub.cyclic_image_length(w) == apply_cyclic(phi, w).size());
      CHECK(inverse.cyclic_image_length(w) == apply_cyclic(phi.inverse(), w).size());
      CHECK(apply(phi, w.word()).letters() == sub.image(w.letters()));
    }
  }
}

TEST_CASE("single generator tables are padded to 2|u|+6") {
  const NielsenGen tau = NielsenGen::multiply(1, 2);
  const TransferTable t = transfer_table(tau, parse_word("ab"), kTwo);
  CHECK(t.window_length == 10);
  const TransferTable s = transfer_table(NielsenGen::swap(1, 2), parse_word("a"), kTwo);
  CHECK(s.window_length == 8);
  CHECK(nominal_window(1, 1) == 8);
  CHECK(nominal_window(2, 1) == 22);
  CHECK(nominal_window(2, 2) == 26);
}

TEST_CASE("certified windows") {
  CHECK(block_transfer(parse_nielsen_word("mul:1:2", kTwo), parse_word("a")).window_length == 3);
  CHECK(block_transfer(parse_nielsen_word("swap:1:2", kTwo), parse_word("ab")).window_length == 2);
  CHECK(length_weights(parse_nielsen_word("mul:1:2", kTwo)).window_length == 3);
  CHECK(length_weights(parse_nielsen_word("inv:1 swap:1:2", kTwo)).window_length == 1);
  CHECK(length_weights(parse_nielsen_word("mul:1:2 mul:2:1", kTwo)).window_length == 7);
}

TEST_CASE("transfer tables are exact on all short cyclic words") {
  const auto sample = all_cyclic_words(2, 8);
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 12; ++trial) {
    const std::string text = testing::random_nielsen_text(rng, 2, 2);
    const NielsenWord phi = parse_nielsen_word(text, kTwo);
    for (int m = 1; m <= 2; ++m)
      for (const Word& u : reduced_words(kTwo, m)) {
        const TransferTable t = block_transfer(phi, u);
        const auto failures = oracle::verify_transfer(text, 2, u, t.window_length, t.entries(), sample);
        CHECK_MESSAGE(failures.empty(), text << " target " << to_string(u));
      }
  }
}

TEST_CASE("composition of sums matches the direct block code") {
  const auto sample = all_cyclic_words(2, 7);
  for (const char* text : {"mul:1:2 mul:2:1", "mul:2:1 inv:1", "mul:1:2 mul:1:2", "inv:2 mul:1:2"}) {
    const NielsenWord phi = parse_nielsen_word(text, kTwo);
    for (const Word& u : reduced_words(kTwo, 1)) {
      const TransferTable composed = compose_transfer(phi, u);
      const TransferTable direct = block_transfer(phi, u);
      for (const auto& w : sample) CHECK(composed.predict(w) == direct.predict(w));
    }
  }
}

TEST_CASE("padding preserves predictions") {
  const TransferTable t = block_transfer(parse_nielsen_word("mul:2:1", kTwo), parse_word("ba"));
  const TransferTable p = pad_table(t, t.window_length + 2);
  CHECK(p.window_length == t.window_length + 2);
  for (const auto& w : all_cyclic_words(2, 6)) CHECK(p.predict(w) == t.predict(w));
  CHECK_THROWS_AS(pad_table(t, t.window_length - 1), DomainError);
}

TEST_CASE("length weights reproduce image lengths") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const int rank = 2 + trial % 2;
    const std::string text = testing::random_nielsen_text(rng, rank, 2);
    const LengthWeights d = length_weights(parse_nielsen_word(text, Alphabet(rank)));
    const auto sub = oracle::Substitution::parse(text, rank);
    const LengthWeights padded = pad_weights(d, d.window_length + 1);
    for (int i = 0; i < 20; ++i) {
      const CyclicWord w = testing::random_cyclic_word(rng, rank, 40);
      CHECK(d.predict_length(w) == sub.cyclic_image_length(w));
      CHECK(padded.predict_length(w) == sub.cyclic_image_length(w));
      CHECK(d.evaluate(frequency_vector(w, d.window_length, Alphabet(rank))) ==
            Rational(Integer(static_cast<std::uint64_t>(sub.cyclic_image_length(w))), Integer(static_cast<std::uint64_t>(w.size()))));
    }
  }
}

TEST_CASE("action on frequency vectors is equivariant") {
  const NielsenWord phi = parse_nielsen_word("mul:2:1", kTwo);
  const CyclicWord w(parse_word("abaab"));
  const int level = required_level(phi, 1);
  const FrequencyVector image = act_on_frequencies(phi, frequency_vector(w, level, kTwo), 1);
  CHECK(image == frequency_vector(apply_cyclic(phi, w), 1, kTwo));
  CHECK(image.get(parse_word("a")) == Rational(5, 7));

  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const std::string text = testing::random_nielsen_text(rng, 2, 2);
    const NielsenWord psi = parse_nielsen_word(text, kTwo);
    const CyclicWord v = testing::random_cyclic_word(rng, 2, 20);
    for (int m = 1; m <= 2; ++m) {
      const FrequencyVector q = frequency_vector(v, required_level(psi, m) + 1, kTwo);
      CHECK(act_on_frequencies(psi, q, m) == frequency_vector(apply_cyclic(psi, v), m, kTwo));
    }
  }
}

TEST_CASE("composed action equals the composition of actions") {
  const NielsenWord phi = parse_nielsen_word("mul:1:2", kTwo);
  const NielsenWord psi = parse_nielsen_word("inv:1 mul:2:1", kTwo);
  const NielsenWord both = phi.then_after(psi);
  for (const char* text : {"abaab", "aBBab", "abAB", "aabbb"}) {
    const CyclicWord w(parse_word(text));
    const FrequencyVector direct = act_on_frequencies(both, frequency_vector(w, required_level(both, 1), kTwo), 1);
    const int inner_level = required_level(phi, 1);
    const FrequencyVector middle = act_on_frequencies(psi, frequency_vector(w, required_level(psi, inner_level), kTwo), inner_level);
    CHECK(act_on_frequencies(phi, middle, 1) == direct);
  }
}

TEST_CASE("transfer table text export") {
  std::ostringstream out;
  write_transfer_table(out, block_transfer(parse_nielsen_word("swap:1:2", kTwo), parse_word("a")));
  CHECK(out.str() == "table length 1 rank 2 target a anchor 0\nb = 1\n");
}

TEST_CASE("vertex budget guards large windows") {
  setenv("FREQSPEC_MAX_VERTICES", "100", 1);
  CHECK_THROWS_AS(length_weights(parse_nielsen_word("mul:1:2 mul:2:1", kTwo)), BudgetExceeded);
  unsetenv("FREQSPEC_MAX_VERTICES");
  CHECK(length_weights(parse_nielsen_word("mul:1:2 mul:2:1", kTwo)).window_length == 7);
}
