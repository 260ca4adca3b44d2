#pragma once

#include "freqspec/rational.hpp"
#include "freqspec/words.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace freqspec {

/// An optimal simple cycle of the level-L transition graph.
struct MeanCycle {
  Rational mean;
  /// Edge indices (WordIndex at level L) in traversal order.
  std::vector<std::uint64_t> edges;
};

/// Maximum mean-weight cycle of the level-L transition graph with integer edge
/// weights indexed by WordIndex(alphabet, L). Karp's recurrence with a
/// zero-initialized source row, followed by cycle extraction on the tight
/// subgraph of the reweighted graph.
MeanCycle max_mean_cycle(const Alphabet& alphabet, int level, std::span<const std::int64_t> weights);
MeanCycle min_mean_cycle(const Alphabet& alphabet, int level, std::span<const std::int64_t> weights);

/// Mean of the weights along a closed walk.
Rational cycle_mean(std::span<const std::uint64_t> edges, std::span<const std::int64_t> weights);

}  // namespace freqspec
