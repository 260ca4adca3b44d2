#include "doctest.h"
#include "support.hpp"

#include "freqspec/errors.hpp"
#include "freqspec/lp.hpp"
#include "freqspec/mean_cycle.hpp"
#include "freqspec/optimize.hpp"
#include "freqspec/oracle.hpp"
#include "freqspec/word_index.hpp"

using namespace freqspec;

namespace {

const Alphabet kTwo(2);

NielsenWord nielsen(const char* text, int rank = 2) { return parse_nielsen_word(text, Alphabet(rank)); }

Rational max_ratio(const NielsenWord& phi, const CyclicWord& w) {
  return std::max(distortion(phi, w), distortion(phi.inverse(), w));
}

}  // namespace

TEST_CASE("simplex on a small program") {
  // min -x - y  s.t.  x + 2y + s = 4,  3x + y + t = 6
  LinearProgram lp;
  lp.columns = 4;
  lp.rows = {{{0, 1}, {1, 2}, {2, 1}}, {{0, 3}, {1, 1}, {3, 1}}};
  lp.rhs = {4, 6};
  lp.cost = {-1, -1, 0, 0};
  const LpSolution s = solve_lp(lp);
  REQUIRE(s.status == LpSolution::Status::Optimal);
  CHECK(s.value == Rational(-14, 5));
  CHECK(s.x[0] == Rational(8, 5));
  CHECK(s.x[1] == Rational(6, 5));

  lp.rhs = {-1, 6};
  lp.rows[0] = {{0, 1}, {1, 1}};
  CHECK(solve_lp(lp).status == LpSolution::Status::Infeasible);

  LinearProgram open;
  open.columns = 2;
  open.rows = {{{0, 1}, {1, -1}}};
  open.rhs = {0};
  open.cost = {-1, 0};
  CHECK(solve_lp(open).status == LpSolution::Status::Unbounded);
}

TEST_CASE("mean cycles on the level-2 graph") {
  const WordIndex index(kTwo, 2);
  std::vector<std::int64_t> w(index.size(), 0);
  w[index.index(parse_word("ab"))] = 5;
  w[index.index(parse_word("ba"))] = 1;
  w[index.index(parse_word("aa"))] = 2;
  const MeanCycle hi = max_mean_cycle(kTwo, 2, w);
  CHECK(hi.mean == 3);
  CHECK(cycle_mean(hi.edges, w) == 3);
  CHECK(word_of_walk(kTwo, 2, hi.edges) == CyclicWord(parse_word("ab")));
  CHECK(min_mean_cycle(kTwo, 2, w).mean == 0);
  CHECK(lp_extremum(kTwo, 2, w, true) == 3);
  CHECK(vertex_extremum(kTwo, 2, w, true) == 3);
}

TEST_CASE("spectrum of a single transvection") {
  const NielsenWord phi = nielsen("mul:1:2");
  const Extremum plus = nu_plus(phi);
  const Extremum minus = nu_minus(phi);
  CHECK(plus.value == 2);
  CHECK(plus.witness == CyclicWord(parse_word("a")));
  CHECK(minus.value == Rational(1, 2));
  CHECK(distortion(phi, minus.witness) == Rational(1, 2));
  CHECK(plus.window_length == 3);

  const Lambda0Result l = lambda0(phi);
  CHECK(l.value == 1);
  CHECK(max_ratio(phi, l.witness) == l.value + l.gap);
  CHECK_FALSE(is_strictly_hyperbolic(phi));
}

TEST_CASE("spectrum of permutations and the identity") {
  for (const char* text : {"id", "swap:1:2", "inv:1 swap:1:2", "inv:2"}) {
    const NielsenWord phi = nielsen(text);
    CHECK(nu_plus(phi).value == 1);
    CHECK(nu_minus(phi).value == 1);
    CHECK(lambda0(phi).value == 1);
  }
}

TEST_CASE("spectrum of a product of two transvections") {
  const NielsenWord phi = nielsen("mul:1:2 mul:2:1");
  const Extremum plus = nu_plus(phi);
  const Extremum minus = nu_minus(phi);
  CHECK(plus.value == 3);
  CHECK(minus.value == Rational(1, 3));
  CHECK(plus.window_length == 7);
  const auto brute = oracle::brute_ratio_extremes("mul:1:2 mul:2:1", 2, 8);
  CHECK(brute.max_ratio == 3);
  CHECK(brute.min_ratio == Rational(1, 3));
  CHECK(lambda0(phi).value == 1);
}

TEST_CASE("an involution can have lambda0 below one") {
  const NielsenWord phi = nielsen("inv:1 mul:2:1");
  CHECK(apply_cyclic(phi.power(2), CyclicWord(parse_word("aabAb"))) == CyclicWord(parse_word("aabAb")));
  const Lambda0Result l = lambda0(phi);
  CHECK(l.value == Rational(1, 2));
  CHECK(l.value == nu_minus(phi).value);
  CHECK(max_ratio(phi, l.witness) == l.value + l.gap);
}

TEST_CASE("mean-cycle, linear programming and vertex enumeration agree") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    const NielsenWord phi = nielsen(testing::random_nielsen_text(rng, 2, 1).c_str());
    const LengthWeights d = length_weights(phi);
    const int level = d.window_length;
    CHECK(lp_extremum(kTwo, level, d.weights, true) == nu_plus(phi).value);
    CHECK(lp_extremum(kTwo, level, d.weights, false) == nu_minus(phi).value);
    CHECK(vertex_extremum(kTwo, level, d.weights, true) == nu_plus(phi).value);
    CHECK(vertex_extremum(kTwo, level, d.weights, false) == nu_minus(phi).value);
  }
  const NielsenWord phi = nielsen("mul:1:2 inv:1 mul:1:2", 3);
  const LengthWeights d = length_weights(phi);
  CHECK(lp_extremum(Alphabet(3), d.window_length, d.weights, true) == nu_plus(phi).value);
}

TEST_CASE("lambda0 agrees with the linear program") {
  for (const char* text : {"mul:1:2", "inv:1 mul:2:1", "mul:2:1 swap:1:2", "mul:1:2 mul:2:1"}) {
    const NielsenWord phi = nielsen(text);
    const Lambda0Result l = lambda0(phi);
    const LengthWeights g = pad_weights(length_weights(phi), l.window_length);
    const LengthWeights h = pad_weights(length_weights(phi.inverse()), l.window_length);
    CHECK_MESSAGE(lp_lambda0(kTwo, l.window_length, g.weights, h.weights) == l.value, text);
  }
}

TEST_CASE("lambda0 bounds on random rank-3 automorphisms") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 8; ++trial) {
    const std::string text = testing::random_nielsen_text(rng, 3, 2);
    const NielsenWord phi = nielsen(text.c_str(), 3);
    const Lambda0Result l = lambda0(phi, Rational(1, 100));
    CHECK(l.gap <= Rational(1, 100));
    CHECK(max_ratio(phi, l.witness) == l.value + l.gap);
    CHECK(l.value >= std::max(nu_minus(phi).value, nu_minus(phi.inverse()).value));
    CHECK(l.value <= oracle::brute_lambda_upper_bound(text, 3, 6).value);
    CHECK(lambda0(phi.inverse(), Rational(1, 100)).value == l.value);
    CHECK(is_strictly_hyperbolic(phi) == (l.value > 1));
  }
}

TEST_CASE("inverse duality") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 10; ++trial) {
    const int rank = 2 + trial % 2;
    const NielsenWord phi = nielsen(testing::random_nielsen_text(rng, rank, 2).c_str(), rank);
    CHECK(nu_minus(phi).value * nu_plus(phi.inverse()).value == 1);
  }
}

TEST_CASE("realize_ratio hits every rational in the interval") {
  const NielsenWord phi = nielsen("mul:1:2");
  for (const Rational& r : {Rational(1), Rational(3, 2), Rational(7, 4), Rational(5, 8), Rational(2), Rational(1, 2)})
    CHECK(distortion(phi, realize_ratio(phi, r)) == r);
  CHECK_THROWS_AS(realize_ratio(phi, Rational(9, 4)), DomainError);
  CHECK_THROWS_AS(realize_ratio(phi, Rational(1, 3)), DomainError);

  const NielsenWord psi = nielsen("mul:1:2 mul:2:1");
  CHECK(distortion(psi, realize_ratio(psi, Rational(5, 2))) == Rational(5, 2));
}

TEST_CASE("hyperbolicity semi-decision") {
  const HyperbolicVerdict id = decide_hyperbolic(nielsen("id"), 2);
  CHECK(id.kind == HyperbolicVerdict::Kind::PeriodicClass);
  CHECK(id.power == 1);
  CHECK(*id.periodic == CyclicWord(parse_word("a")));

  const HyperbolicVerdict swap = decide_hyperbolic(nielsen("swap:1:2"), 2);
  CHECK(swap.kind == HyperbolicVerdict::Kind::PeriodicClass);
  CHECK(apply_cyclic(nielsen("swap:1:2").power(swap.power), *swap.periodic) == *swap.periodic);

  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 5; ++trial) {
    const NielsenWord phi = nielsen(testing::random_nielsen_text(rng, 2, 2).c_str());
    const HyperbolicVerdict v = decide_hyperbolic(phi, 3);
    CHECK(v.kind == HyperbolicVerdict::Kind::PeriodicClass);
    CHECK(apply_cyclic(phi.power(v.power), *v.periodic) == *v.periodic);
  }
  CHECK_THROWS_AS(decide_hyperbolic(nielsen("id"), 0), DomainError);
}

TEST_CASE("spectrum report") {
  const SpectrumReport r = spectrum(nielsen("mul:2:1"));
  CHECK(r.automorphism == "mul:2:1");
  CHECK(r.rank == 2);
  CHECK(r.plus.value == 2);
  CHECK(r.minus.value == Rational(1, 2));
  CHECK(r.inverse_window_length == 3);
  REQUIRE(r.lambda0.has_value());
  CHECK(r.lambda0->value == 1);
  CHECK_FALSE(r.strictly_hyperbolic);
  CHECK_FALSE(spectrum(nielsen("mul:2:1"), {Rational(1, 10), false}).lambda0.has_value());
}
