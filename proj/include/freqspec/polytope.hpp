#pragma once

#include "freqspec/frequency_vector.hpp"
#include "freqspec/rational.hpp"
#include "freqspec/words.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace freqspec {

/// Q_m membership: entries sum to one, are nonnegative, and for every u of
/// length m-1 the right extensions of u carry the same mass as the left ones.
bool check_membership(const FrequencyVector& q);

/// The projection Q_m -> Q_{m-1}: coordinate u receives the sum of q_{ux}.
/// Level one maps to the point {1 : empty word} at level zero.
FrequencyVector project(const FrequencyVector& q);

/// Repeated projection down to `level` (0 <= level <= q.level()).
FrequencyVector project_to_level(const FrequencyVector& q, int level);

/// Labelled digraph on words of length m-1 with one edge v_- -> v_+ per word v
/// of length m, labelled q_v.
struct InitialGraph {
  struct Edge {
    Word word;
    std::size_t from;
    std::size_t to;
    Rational label;
  };

  int level = 0;
  std::vector<Word> vertices;
  std::vector<Edge> edges;

  /// Drops zero-labelled edges, then isolated vertices.
  InitialGraph pruned() const;
  bool balanced() const;
  /// Connected components of the underlying undirected graph, counting only
  /// vertices incident to at least one edge.
  std::size_t component_count() const;
};

/// Full initial graph; needs level >= 2 and q in Q_m.
InitialGraph initial_graph(const FrequencyVector& q);
/// Pruned initial graph built directly from the support of q.
InitialGraph pruned_initial_graph(const FrequencyVector& q);

/// Whether a rational point of Q_m is the frequency vector of a cyclic word.
bool is_realizable(const FrequencyVector& q);

struct RealizationWitness {
  CyclicWord word;
  Integer scale;  ///< least N with N*q integral
};

/// A cyclic word whose level-m frequency vector is exactly q. Deterministic:
/// the Euler circuit starts at the least vertex and prefers edges whose last
/// letter comes first in the canonical letter order.
RealizationWitness realize(const FrequencyVector& q);

/// The uniform vector 1/D(m) on every reduced word of length m.
FrequencyVector barycenter(const Alphabet& alphabet, int m);

/// epsilon * barycenter + (1 - epsilon) * q, for rational epsilon in (0, 1).
FrequencyVector interior_perturb(const FrequencyVector& q, const Rational& epsilon);

/// Uniform vector on the edges of a closed walk given as a cyclic sequence of
/// level-m words.
FrequencyVector uniform_on_cycle(const Alphabet& alphabet, std::span<const Word> edges);

/// Calls `visit` once per simple directed cycle of the level-m transition graph
/// (vertices: reduced words of length m-1, edges: reduced words of length m,
/// given by their WordIndex at length m). Stops early when `visit` returns
/// false. Throws BudgetExceeded after `max_cycles` cycles.
void for_each_simple_cycle(const Alphabet& alphabet, int m, std::uint64_t max_cycles,
                           const std::function<bool(std::span<const std::uint64_t>)>& visit);

/// All extremal points of Q_m, sorted. Each is the uniform vector on a simple
/// cycle of the level-m transition graph.
std::vector<FrequencyVector> enumerate_vertices(const Alphabet& alphabet, int m, std::uint64_t max_vertices = 1'000'000);

/// Dimension of the affine hull of a nonempty point set.
std::size_t affine_dimension(std::span<const FrequencyVector> points);

/// Strict weak order on vectors of equal level: by their sorted entry lists.
bool frequency_vector_less(const FrequencyVector& a, const FrequencyVector& b);

}  // namespace freqspec
