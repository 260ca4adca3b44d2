#include "doctest.h"
#include "support.hpp"

#include "freqspec/errors.hpp"
#include "freqspec/oracle.hpp"
#include "freqspec/polytope.hpp"

#include <algorithm>

using namespace freqspec;

namespace {

FrequencyVector example_point() {
  return parse_frequency_vector("level 3 rank 2\naba = 2/5\nbab = 1/5\naab = 1/5\nbaa = 1/5\n");
}

FrequencyVector letters(const std::string& text) { return parse_frequency_vector("level 1 rank 2\n" + text); }

}  // namespace

TEST_CASE("membership") {
  CHECK(check_membership(example_point()));
  CHECK_FALSE(check_membership(parse_frequency_vector("level 2 rank 2\nab = 1\n")));
  CHECK_FALSE(check_membership(parse_frequency_vector("level 2 rank 2\nab = 1/4\nba = 1/4\n")));
  CHECK_FALSE(check_membership(parse_frequency_vector("level 2 rank 2\naa = 3/2\nbb = -1/2\n")));
  CHECK(check_membership(letters("a = 1/3\nB = 2/3\n")));
}

TEST_CASE("projection sums right extensions") {
  const FrequencyVector p = project(example_point());
  CHECK(p.level() == 2);
  CHECK(p.get(parse_word("ab")) == Rational(2, 5));
  CHECK(p.get(parse_word("ba")) == Rational(2, 5));
  CHECK(p.get(parse_word("aa")) == Rational(1, 5));
  const FrequencyVector l1 = project_to_level(example_point(), 1);
  CHECK(l1.get(parse_word("a")) == Rational(3, 5));
  CHECK(project_to_level(example_point(), 0).get(Word()) == 1);
}

TEST_CASE("initial graph of the example point") {
  const InitialGraph g = pruned_initial_graph(example_point());
  CHECK(g.vertices.size() == 3);
  CHECK(g.edges.size() == 4);
  CHECK(g.balanced());
  CHECK(g.component_count() == 1);
  const InitialGraph full = initial_graph(example_point());
  CHECK(full.vertices.size() == 12);
  CHECK(full.edges.size() == 36);
  CHECK(full.pruned().edges.size() == 4);
}

TEST_CASE("realize the example point") {
  const FrequencyVector q = example_point();
  CHECK(is_realizable(q));
  const RealizationWitness r = realize(q);
  CHECK(r.scale == 5);
  CHECK(r.word.size() == 5);
  CHECK(r.word == CyclicWord(parse_word("abaab")));
  CHECK(count_occurrences(r.word, parse_word("aba")) == 2);
  CHECK(frequency_vector(r.word, 3, Alphabet(2)) == q);
}

TEST_CASE("disconnected support is not realizable") {
  const FrequencyVector q = parse_frequency_vector("level 2 rank 2\naa = 1/2\nbb = 1/2\n");
  CHECK(check_membership(q));
  CHECK_FALSE(is_realizable(q));
  CHECK_THROWS_AS(realize(q), DomainError);
  CHECK(is_realizable(interior_perturb(q, Rational(1, 3))));
}

TEST_CASE("level one realizability") {
  CHECK(is_realizable(letters("a = 1\n")));
  CHECK_FALSE(is_realizable(letters("a = 1/2\nA = 1/2\n")));
  CHECK_FALSE(is_realizable(letters("a = 1/3\nA = 2/3\n")));
  CHECK(is_realizable(letters("a = 1/3\nA = 1/3\nb = 1/3\n")));
  CHECK(is_realizable(letters("a = 1/4\nA = 1/4\nb = 1/2\n")));
  CHECK(is_realizable(letters("a = 1/2\nb = 1/2\n")));

  for (const char* text : {"a = 1/4\nA = 1/4\nb = 1/2\n", "a = 1/2\nb = 1/6\nB = 1/3\n", "a = 2/7\nA = 1/7\nb = 2/7\nB = 2/7\n"}) {
    const FrequencyVector q = letters(text);
    REQUIRE(is_realizable(q));
    CHECK(frequency_vector(realize(q).word, 1, Alphabet(2)) == q);
  }
}

TEST_CASE("barycenter and perturbation") {
  const FrequencyVector b = barycenter(Alphabet(2), 2);
  CHECK(b.support_size() == 12);
  CHECK(check_membership(b));
  const FrequencyVector q = interior_perturb(letters("a = 1/2\nA = 1/2\n"), Rational(1, 2));
  CHECK(q.get(parse_word("a")) == Rational(3, 8));
  CHECK(q.get(parse_word("b")) == Rational(1, 8));
  CHECK_THROWS_AS(interior_perturb(q, Rational(0)), DomainError);
}

TEST_CASE("realization round-trip on random words") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const int rank = 2 + trial % 2;
    const int m = 1 + trial % 4;
    const CyclicWord w = testing::random_cyclic_word(rng, rank, 24);
    const FrequencyVector q = frequency_vector(w, m, Alphabet(rank));
    REQUIRE(is_realizable(q));
    const RealizationWitness r = realize(q);
    CHECK(frequency_vector(r.word, m, Alphabet(rank)) == q);
    if (m >= 2) CHECK(r.word.size() == r.scale);
    CHECK(r.word.size() <= 2 * w.size());
  }
}

TEST_CASE("vertices agree with basis enumeration") {
  for (auto [rank, m] : {std::pair{2, 1}, std::pair{2, 2}, std::pair{3, 1}}) {
    auto generic = oracle::enumerate_vertices_generic(rank, m);
    std::sort(generic.begin(), generic.end(), frequency_vector_less);
    const auto vertices = enumerate_vertices(Alphabet(rank), m);
    CHECK(vertices == generic);
  }
}

TEST_CASE("vertex counts and dimensions") {
  const auto q1 = enumerate_vertices(Alphabet(2), 1);
  const auto q2 = enumerate_vertices(Alphabet(2), 2);
  const auto q3 = enumerate_vertices(Alphabet(2), 3);
  CHECK(q1.size() == 4);
  CHECK(q2.size() == 10);
  CHECK(affine_dimension(q1) == 3);
  CHECK(affine_dimension(q2) == 8);
  CHECK(affine_dimension(q3) == 24);
  for (const auto& v : q3) CHECK(is_realizable(v));
}

TEST_CASE("simple cycles stop on request") {
  std::uint64_t seen = 0;
  for_each_simple_cycle(Alphabet(2), 2, 1000, [&](std::span<const std::uint64_t>) { return ++seen < 3; });
  CHECK(seen == 3);
  CHECK_THROWS_AS(for_each_simple_cycle(Alphabet(2), 4, 5, [](std::span<const std::uint64_t>) { return true; }), BudgetExceeded);
}
