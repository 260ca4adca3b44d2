#pragma once

#include "freqspec/automorphism.hpp"
#include "freqspec/frequency_vector.hpp"
#include "freqspec/rational.hpp"
#include "freqspec/words.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace freqspec {

/// ||phi(w)|| / ||w||.
Rational distortion(const NielsenWord& phi, const CyclicWord& w);

/// Cyclic word read off a closed walk of the level-L transition graph (last
/// letter of every edge). Its level-L frequency vector is the normalized edge
/// count of the walk.
CyclicWord word_of_walk(const Alphabet& alphabet, int level, std::span<const std::uint64_t> edges);

struct Extremum {
  Rational value;
  CyclicWord witness;
  int window_length;
};

/// max over Q_L of g(p) = sum d(u, phi) p_u, with a cyclic word attaining it.
Extremum nu_plus(const NielsenWord& phi);
/// min over Q_L of g.
Extremum nu_minus(const NielsenWord& phi);

struct Lambda0Result {
  Rational value;
  /// Cyclic word with max{||phi(w)||, ||phi^-1(w)||} / ||w|| = value + gap.
  CyclicWord witness;
  Rational gap;
  /// The infimum is a minimum: the minimizer has connected support or the
  /// witness has zero gap.
  bool attained = false;
  int window_length = 0;
  /// theta with F(theta) = lambda0, where F(theta) is the min-mean cycle of
  /// theta d(phi) + (1 - theta) d(phi^-1).
  Rational theta;
  std::uint64_t cuts = 0;
};

/// lambda0(phi) = min over Q_L of max{g, h}, g and h the length functionals of
/// phi and phi^-1 at a common window.
Lambda0Result lambda0(const NielsenWord& phi, const Rational& tolerance = Rational(1, 1000));

bool is_strictly_hyperbolic(const NielsenWord& phi);

/// A cyclic word with ||phi(w)|| / ||w|| = r exactly, for nu_-(phi) <= r <= nu_+(phi).
CyclicWord realize_ratio(const NielsenWord& phi, const Rational& r);

struct HyperbolicVerdict {
  enum class Kind { Hyperbolic, PeriodicClass, BudgetExhausted };
  Kind kind = Kind::BudgetExhausted;
  int power = 0;
  std::optional<CyclicWord> periodic;
  /// Last power at which lambda0 could be computed within the vertex budget.
  int last_hyperbolicity_check = 0;
};

/// For n = 1, 2, ..., budget: search cyclic words w of length <= n + 3 with
/// phi^n(w) = w, then test whether phi^n is strictly hyperbolic.
HyperbolicVerdict decide_hyperbolic(const NielsenWord& phi, int budget);

struct SpectrumOptions {
  Rational tolerance = Rational(1, 1000);
  bool with_lambda0 = true;
};

struct SpectrumReport {
  std::string automorphism;
  int rank = 0;
  Extremum minus;
  Extremum plus;
  int inverse_window_length = 0;
  std::optional<Lambda0Result> lambda0;
  bool strictly_hyperbolic = false;
  double seconds = 0;
};

SpectrumReport spectrum(const NielsenWord& phi, const SpectrumOptions& options = {});

// ---- cross-check backends ---------------------------------------------------

/// Optimum of sum w_u p_u over Q_L by the exact simplex method.
Rational lp_extremum(const Alphabet& alphabet, int level, std::span<const std::int64_t> weights, bool maximize);

/// min z subject to z >= g(p), z >= h(p), p in Q_L, by the exact simplex method.
Rational lp_lambda0(const Alphabet& alphabet, int level, std::span<const std::int64_t> g, std::span<const std::int64_t> h);

/// Optimum of the weights over the uniform simple cycles of the level-L graph.
Rational vertex_extremum(const Alphabet& alphabet, int level, std::span<const std::int64_t> weights, bool maximize,
                         std::uint64_t max_cycles = 2'000'000);

}  // namespace freqspec
