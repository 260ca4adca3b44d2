#include "freqspec/mean_cycle.hpp"

#include "freqspec/errors.hpp"
#include "freqspec/word_index.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace freqspec {

namespace {

// Karp needs V * E relaxations.
constexpr double kMaxKarpWork = 5e9;

__extension__ typedef __int128 Wide;

struct Graph {
  std::uint64_t vertices;
  std::vector<std::uint64_t> from, to;
};

Graph transition_graph(const Alphabet& alphabet, int level) {
  const WordIndex index(alphabet, level);
  Graph g{alphabet.word_count(level - 1), {}, {}};
  g.from.resize(index.size());
  g.to.resize(index.size());
  for (std::uint64_t e = 0; e < index.size(); ++e) {
    g.from[e] = index.prefix_index(e);
    g.to[e] = index.suffix_index(e);
  }
  return g;
}

// One round: next(v) = max over edges u->v of cur(u) + w.
void relax(const Graph& g, std::span<const std::int64_t> w, const std::vector<std::int64_t>& cur,
           std::vector<std::int64_t>& next) {
  std::fill(next.begin(), next.end(), std::numeric_limits<std::int64_t>::min());
  for (std::uint64_t e = 0; e < g.from.size(); ++e) next[g.to[e]] = std::max(next[g.to[e]], cur[g.from[e]] + w[e]);
}

// Largest cycle mean as p/q with q <= V.
std::pair<std::int64_t, std::int64_t> karp_max(const Graph& g, std::span<const std::int64_t> w) {
  const std::uint64_t n = g.vertices;
  std::vector<std::int64_t> cur(n, 0), next(n);
  for (std::uint64_t k = 0; k < n; ++k) {
    relax(g, w, cur, next);
    std::swap(cur, next);
  }
  const std::vector<std::int64_t> dn = cur;

  // For each v, the minimum over k < n of (D_n(v) - D_k(v)) / (n - k).
  std::vector<std::int64_t> best_num(n), best_den(n, 0);
  std::fill(cur.begin(), cur.end(), 0);
  for (std::uint64_t k = 0; k < n; ++k) {
    const auto den = static_cast<std::int64_t>(n - k);
    for (std::uint64_t v = 0; v < n; ++v) {
      const std::int64_t num = dn[v] - cur[v];
      if (best_den[v] == 0 || Wide(num) * best_den[v] < Wide(best_num[v]) * den) {
        best_num[v] = num;
        best_den[v] = den;
      }
    }
    relax(g, w, cur, next);
    std::swap(cur, next);
  }
  std::int64_t p = best_num[0], q = best_den[0];
  for (std::uint64_t v = 1; v < n; ++v)
    if (Wide(best_num[v]) * q > Wide(p) * best_den[v]) {
      p = best_num[v];
      q = best_den[v];
    }
  return {p, q};
}

// A simple cycle all of whose edges are tight for longest-path potentials of
// the weights q*w - p. Every such cycle has mean exactly p/q.
std::vector<std::uint64_t> tight_cycle(const Graph& g, std::span<const std::int64_t> w, std::int64_t p, std::int64_t q) {
  const std::uint64_t n = g.vertices;
  std::vector<std::vector<std::uint64_t>> out(n);
  for (std::uint64_t e = 0; e < g.from.size(); ++e) out[g.from[e]].push_back(e);
  auto reduced = [&](std::uint64_t e) { return Wide(q) * w[e] - p; };

  std::vector<Wide> pi(n, 0);
  std::vector<bool> queued(n, true);
  std::deque<std::uint64_t> queue;
  for (std::uint64_t v = 0; v < n; ++v) queue.push_back(v);
  std::uint64_t pops = 0;
  const std::uint64_t limit = (n + 1) * (g.from.size() + 1);
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop_front();
    queued[u] = false;
    if (++pops > limit) throw InvariantViolation("positive cycle above the computed maximum mean");
    for (auto e : out[u]) {
      const auto v = g.to[e];
      const Wide candidate = pi[u] + reduced(e);
      if (candidate > pi[v]) {
        pi[v] = candidate;
        if (!queued[v]) {
          queued[v] = true;
          queue.push_back(v);
        }
      }
    }
  }

  // Iterative DFS over tight edges; a back edge closes a simple cycle.
  enum : std::uint8_t { White, Grey, Black };
  std::vector<std::uint8_t> colour(n, White);
  std::vector<std::uint64_t> edge_stack;
  std::vector<std::pair<std::uint64_t, std::size_t>> frames;
  for (std::uint64_t root = 0; root < n; ++root) {
    if (colour[root] != White) continue;
    frames.push_back({root, 0});
    colour[root] = Grey;
    while (!frames.empty()) {
      auto& [u, next_edge] = frames.back();
      if (next_edge == out[u].size()) {
        colour[u] = Black;
        frames.pop_back();
        if (!edge_stack.empty()) edge_stack.pop_back();
        continue;
      }
      const auto e = out[u][next_edge++];
      const auto v = g.to[e];
      if (pi[u] + reduced(e) != pi[v]) continue;
      if (colour[v] == Grey) {
        // Walk back along the DFS path until reaching v.
        std::vector<std::uint64_t> cycle{e};
        std::size_t pos = edge_stack.size();
        while (pos > 0 && g.from[cycle.back()] != v) cycle.push_back(edge_stack[--pos]);
        std::reverse(cycle.begin(), cycle.end());
        return cycle;
      }
      if (colour[v] == White) {
        colour[v] = Grey;
        edge_stack.push_back(e);
        frames.push_back({v, 0});
      }
    }
  }
  throw InvariantViolation("no tight cycle at the optimal mean");
}

MeanCycle solve_max(const Alphabet& alphabet, int level, std::span<const std::int64_t> weights) {
  if (level < 1) throw DomainError("mean cycles need level >= 1");
  const Graph g = transition_graph(alphabet, level);
  if (weights.size() != g.from.size()) throw DomainError("weight vector does not match the transition graph");
  if (static_cast<double>(g.vertices) * static_cast<double>(g.from.size()) > kMaxKarpWork)
    throw BudgetExceeded("mean-cycle search at level " + std::to_string(level) + " exceeds the work budget");
  const auto [p, q] = karp_max(g, weights);
  MeanCycle result{Rational(p, q), tight_cycle(g, weights, p, q)};
  if (cycle_mean(result.edges, weights) != result.mean) throw InvariantViolation("extracted cycle is not optimal");
  return result;
}

}  // namespace

MeanCycle max_mean_cycle(const Alphabet& alphabet, int level, std::span<const std::int64_t> weights) {
  return solve_max(alphabet, level, weights);
}

MeanCycle min_mean_cycle(const Alphabet& alphabet, int level, std::span<const std::int64_t> weights) {
  std::vector<std::int64_t> negated(weights.begin(), weights.end());
  for (auto& x : negated) x = -x;
  MeanCycle result = solve_max(alphabet, level, negated);
  result.mean = -result.mean;
  return result;
}

Rational cycle_mean(std::span<const std::uint64_t> edges, std::span<const std::int64_t> weights) {
  if (edges.empty()) throw DomainError("empty cycle");
  std::int64_t total = 0;
  for (auto e : edges) total += weights[e];
  return Rational(total, static_cast<std::int64_t>(edges.size()));
}

}  // namespace freqspec
