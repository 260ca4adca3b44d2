#include "freqspec/optimize.hpp"

#include "freqspec/errors.hpp"
#include "freqspec/lp.hpp"
#include "freqspec/mean_cycle.hpp"
#include "freqspec/polytope.hpp"
#include "freqspec/word_index.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <deque>
#include <limits>
#include <numeric>
#include <set>

namespace freqspec {

namespace {

// Longest lambda0 witness walk before giving up on the tolerance.
constexpr std::uint64_t kMaxWitnessLength = 20'000'000;
// Cap on the number of cyclic words scanned per length in the periodic search.
constexpr std::uint64_t kMaxPeriodicScan = 3'000'000;

std::int64_t to_int64(const Integer& n) {
  if (n > Integer(std::numeric_limits<std::int64_t>::max() / 4) || n < Integer(std::numeric_limits<std::int64_t>::min() / 4))
    throw BudgetExceeded("parameter outside 64-bit range");
  return n.convert_to<std::int64_t>();
}

void require_ratio(const NielsenWord& phi, const CyclicWord& w, const Rational& expected, const char* what) {
  const Rational actual = distortion(phi, w);
  if (actual != expected)
    throw InvariantViolation(std::string(what) + ": witness " + to_string(w) + " has ratio " + to_string(actual) +
                             ", expected " + to_string(expected));
}

Extremum extremum(const NielsenWord& phi, bool maximize) {
  const LengthWeights d = length_weights(phi);
  const MeanCycle c = maximize ? max_mean_cycle(phi.alphabet(), d.window_length, d.weights)
                               : min_mean_cycle(phi.alphabet(), d.window_length, d.weights);
  Extremum out{c.mean, word_of_walk(phi.alphabet(), d.window_length, c.edges), d.window_length};
  require_ratio(phi, out.witness, out.value, maximize ? "nu_plus" : "nu_minus");
  return out;
}

FrequencyVector uniform_on_edges(const Alphabet& alphabet, int level, std::span<const std::uint64_t> edges) {
  const WordIndex index(alphabet, level);
  std::vector<Word> words;
  for (auto e : edges) words.push_back(index.word(e));
  return uniform_on_cycle(alphabet, words);
}

struct Cut {
  std::vector<std::uint64_t> edges;
  Rational g, h;
  Rational slope() const { return g - h; }
  Rational at(const Rational& theta) const { return theta * g + (1 - theta) * h; }
};

class Lambda0Solver {
 public:
  Lambda0Solver(const NielsenWord& phi)
      : phi_(phi), inverse_(phi.inverse()), alphabet_(phi.alphabet()) {
    LengthWeights g = length_weights(phi_);
    LengthWeights h = length_weights(inverse_);
    level_ = std::max({2, g.window_length, h.window_length});
    g_ = pad_weights(g, level_).weights;
    h_ = pad_weights(h, level_).weights;
  }

  int level() const { return level_; }
  const std::vector<std::int64_t>& g() const { return g_; }
  const std::vector<std::int64_t>& h() const { return h_; }

  Cut at(const Rational& theta) {
    ++cuts_;
    const std::int64_t p = to_int64(boost::multiprecision::numerator(theta));
    const std::int64_t q = to_int64(boost::multiprecision::denominator(theta));
    std::vector<std::int64_t> w(g_.size());
    for (std::size_t e = 0; e < w.size(); ++e) w[e] = p * g_[e] + (q - p) * h_[e];
    MeanCycle c = min_mean_cycle(alphabet_, level_, w);
    Cut cut{std::move(c.edges), 0, 0};
    cut.g = cycle_mean(cut.edges, g_);
    cut.h = cycle_mean(cut.edges, h_);
    if (cut.at(theta) != c.mean / q) throw InvariantViolation("cut value does not match the mean cycle");
    return cut;
  }

  Lambda0Result solve(const Rational& tolerance) {
    Cut left = at(0);
    if (left.slope() <= 0) return single(left, 0);
    Cut right = at(1);
    if (right.slope() >= 0) return single(right, 1);
    while (true) {
      const Rational theta = (right.h - left.h) / (left.slope() - right.slope());
      const Rational value = left.at(theta);
      Cut next = at(theta);
      const Rational f = next.at(theta);
      if (f == value) return pair(left, right, theta, value, tolerance);
      if (f > value) throw InvariantViolation("cutting-plane value increased");
      const Rational s = next.slope();
      if (s == 0) return single(next, theta);
      if (s > 0)
        left = std::move(next);
      else
        right = std::move(next);
    }
  }

 private:
  Lambda0Result single(const Cut& cut, const Rational& theta) {
    const CyclicWord w = word_of_walk(alphabet_, level_, cut.edges);
    const Rational value = std::max(cut.g, cut.h);
    verify(w, value);
    return {value, w, 0, true, level_, theta, cuts_};
  }

  Lambda0Result pair(const Cut& left, const Cut& right, const Rational& theta, const Rational& value,
                     const Rational& tolerance) {
    // Mixing weight with equal g and h.
    const Rational s = -right.slope() / (left.slope() - right.slope());
    if (shares_vertex(left.edges, right.edges)) {
      const FrequencyVector p = uniform_on_edges(alphabet_, level_, left.edges)
                                    .combined(s, uniform_on_edges(alphabet_, level_, right.edges), 1 - s);
      const CyclicWord w = realize(p).word;
      verify(w, value);
      return {value, w, 0, true, level_, theta, cuts_};
    }
    return walk_witness(left, right, s, theta, value, tolerance);
  }

  bool shares_vertex(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) const {
    const WordIndex index(alphabet_, level_);
    std::set<std::uint64_t> seen;
    for (auto e : a) seen.insert(index.prefix_index(e));
    return std::any_of(b.begin(), b.end(), [&](std::uint64_t e) { return seen.count(index.prefix_index(e)) != 0; });
  }

  // Shortest edge path between two vertices of the level-L graph.
  std::vector<std::uint64_t> path(std::uint64_t from, std::uint64_t to) const {
    if (from == to) return {};
    const WordIndex index(alphabet_, level_);
    const auto branch = static_cast<std::uint64_t>(alphabet_.size() - 1);
    const std::uint64_t vertices = alphabet_.word_count(level_ - 1);
    std::vector<std::uint64_t> via(vertices, std::numeric_limits<std::uint64_t>::max());
    std::deque<std::uint64_t> queue{from};
    std::vector<bool> seen(vertices, false);
    seen[from] = true;
    while (!queue.empty() && !seen[to]) {
      const auto v = queue.front();
      queue.pop_front();
      const std::uint64_t first = level_ == 1 ? 0 : v * branch;
      const std::uint64_t count = level_ == 1 ? index.size() : branch;
      for (std::uint64_t e = first; e < first + count; ++e) {
        const auto u = index.suffix_index(e);
        if (seen[u]) continue;
        seen[u] = true;
        via[u] = e;
        queue.push_back(u);
      }
    }
    std::vector<std::uint64_t> out;
    for (auto v = to; v != from; v = index.prefix_index(via[v])) out.push_back(via[v]);
    std::reverse(out.begin(), out.end());
    return out;
  }

  // Closed walk C0^a P C1^b Q with a : b matching the optimal mixture, scaled
  // until the certified gap is within tolerance.
  Lambda0Result walk_witness(const Cut& left, const Cut& right, const Rational& s, const Rational& theta,
                             const Rational& value, const Rational& tolerance) {
    const WordIndex index(alphabet_, level_);
    const auto x0 = index.prefix_index(left.edges.front());
    const auto y1 = index.prefix_index(right.edges.front());
    const auto there = path(x0, y1);
    const auto back = path(y1, x0);

    auto totals = [&](const std::vector<std::uint64_t>& edges) {
      std::int64_t g = 0, h = 0;
      for (auto e : edges) {
        g += g_[e];
        h += h_[e];
      }
      return std::array<Integer, 3>{Integer(g), Integer(h), Integer(static_cast<std::int64_t>(edges.size()))};
    };
    const auto t0 = totals(left.edges);
    const auto t1 = totals(right.edges);
    auto tp = totals(there);
    const auto tq = totals(back);
    for (int i = 0; i < 3; ++i) tp[static_cast<std::size_t>(i)] += tq[static_cast<std::size_t>(i)];

    const Integer sn = boost::multiprecision::numerator(s);
    const Integer sd = boost::multiprecision::denominator(s);
    Integer alpha = sn * t1[2];
    Integer beta = (sd - sn) * t0[2];
    const Integer common = boost::multiprecision::gcd(alpha, beta);
    alpha /= common;
    beta /= common;

    Integer scale = 1;
    Rational gap;
    while (true) {
      const Integer a = alpha * scale, b = beta * scale;
      const Integer length = a * t0[2] + b * t1[2] + tp[2];
      if (length > Integer(kMaxWitnessLength))
        throw BudgetExceeded("lambda0 witness walk would exceed " + std::to_string(kMaxWitnessLength) + " letters");
      const Rational g(a * t0[0] + b * t1[0] + tp[0], length);
      const Rational h(a * t0[1] + b * t1[1] + tp[1], length);
      gap = std::max(g, h) - value;
      if (gap <= tolerance) break;
      scale *= 2;
    }

    std::vector<std::uint64_t> walk;
    const auto a = (alpha * scale).convert_to<std::uint64_t>();
    const auto b = (beta * scale).convert_to<std::uint64_t>();
    for (std::uint64_t i = 0; i < a; ++i) walk.insert(walk.end(), left.edges.begin(), left.edges.end());
    walk.insert(walk.end(), there.begin(), there.end());
    for (std::uint64_t i = 0; i < b; ++i) walk.insert(walk.end(), right.edges.begin(), right.edges.end());
    walk.insert(walk.end(), back.begin(), back.end());
    const CyclicWord w = word_of_walk(alphabet_, level_, walk);
    verify(w, value + gap);
    return {value, w, gap, gap == 0, level_, theta, cuts_};
  }

  void verify(const CyclicWord& w, const Rational& expected) const {
    const Rational actual = std::max(distortion(phi_, w), distortion(inverse_, w));
    if (actual != expected)
      throw InvariantViolation("lambda0 witness has max ratio " + to_string(actual) + ", expected " + to_string(expected));
  }

  NielsenWord phi_, inverse_;
  Alphabet alphabet_;
  int level_ = 2;
  std::vector<std::int64_t> g_, h_;
  std::uint64_t cuts_ = 0;
};

}  // namespace

Rational distortion(const NielsenWord& phi, const CyclicWord& w) {
  return Rational(Integer(static_cast<std::uint64_t>(apply_cyclic(phi, w).size())), Integer(static_cast<std::uint64_t>(w.size())));
}

CyclicWord word_of_walk(const Alphabet& alphabet, int level, std::span<const std::uint64_t> edges) {
  const WordIndex index(alphabet, level);
  std::vector<Letter> letters, buffer;
  letters.reserve(edges.size());
  for (auto e : edges) {
    index.decode(e, buffer);
    letters.push_back(buffer.back());
  }
  return CyclicWord(letters);
}

Extremum nu_plus(const NielsenWord& phi) { return extremum(phi, true); }
Extremum nu_minus(const NielsenWord& phi) { return extremum(phi, false); }

Lambda0Result lambda0(const NielsenWord& phi, const Rational& tolerance) {
  if (tolerance <= 0) throw DomainError("lambda0 tolerance must be positive");
  return Lambda0Solver(phi).solve(tolerance);
}

bool is_strictly_hyperbolic(const NielsenWord& phi) { return lambda0(phi).value > 1; }

CyclicWord realize_ratio(const NielsenWord& phi, const Rational& r) {
  const Extremum plus = nu_plus(phi);
  const Extremum minus = nu_minus(phi);
  if (r == plus.value) return plus.witness;
  if (r == minus.value) return minus.witness;
  if (r > plus.value || r < minus.value)
    throw DomainError("ratio " + to_string(r) + " lies outside [" + to_string(minus.value) + ", " + to_string(plus.value) + "]");

  const LengthWeights d = length_weights(phi);
  const int level = std::max(2, d.window_length);
  const LengthWeights padded = pad_weights(d, level);
  const Alphabet& alphabet = phi.alphabet();
  const MeanCycle hi = max_mean_cycle(alphabet, level, padded.weights);
  const MeanCycle lo = min_mean_cycle(alphabet, level, padded.weights);
  const FrequencyVector p_plus = uniform_on_edges(alphabet, level, hi.edges);
  const FrequencyVector p_minus = uniform_on_edges(alphabet, level, lo.edges);
  const Rational centre(std::accumulate(padded.weights.begin(), padded.weights.end(), Integer(0),
                                        [](const Integer& acc, std::int64_t x) { return acc + x; }),
                        Integer(static_cast<std::uint64_t>(padded.weights.size())));

  Rational epsilon(1, 2);
  Rational g_plus, g_minus;
  while (true) {
    g_plus = epsilon * centre + (1 - epsilon) * hi.mean;
    g_minus = epsilon * centre + (1 - epsilon) * lo.mean;
    if (g_plus > r && g_minus < r) break;
    epsilon /= 2;
  }
  const FrequencyVector q_plus = interior_perturb(p_plus, epsilon);
  const FrequencyVector q_minus = interior_perturb(p_minus, epsilon);
  const Rational s = (r - g_minus) / (g_plus - g_minus);
  const FrequencyVector q = q_plus.combined(s, q_minus, 1 - s);
  if (padded.evaluate(q) != r) throw InvariantViolation("interpolated point misses the target ratio");
  const CyclicWord w = realize(q).word;
  require_ratio(phi, w, r, "realize_ratio");
  return w;
}

HyperbolicVerdict decide_hyperbolic(const NielsenWord& phi, int budget) {
  if (budget < 1) throw DomainError("power budget must be at least 1");
  HyperbolicVerdict verdict;
  bool hyperbolic_side_open = true;
  for (int n = 1; n <= budget; ++n) {
    const NielsenWord power = phi.power(n);
    const std::size_t max_length = static_cast<std::size_t>(n) + 3;
    for (std::size_t length = 1; length <= max_length; ++length) {
      if (phi.alphabet().word_count(static_cast<int>(length)) / length > kMaxPeriodicScan) break;
      std::optional<CyclicWord> found;
      for_each_cyclic_word(phi.alphabet(), length, [&](const CyclicWord& w) {
        if (apply_cyclic(power, w) == w) {
          found = w;
          return false;
        }
        return true;
      });
      if (found) {
        verdict.kind = HyperbolicVerdict::Kind::PeriodicClass;
        verdict.power = n;
        verdict.periodic = found;
        return verdict;
      }
    }
    if (hyperbolic_side_open) {
      try {
        if (is_strictly_hyperbolic(power)) {
          verdict.kind = HyperbolicVerdict::Kind::Hyperbolic;
          verdict.power = n;
          return verdict;
        }
        verdict.last_hyperbolicity_check = n;
      } catch (const BudgetExceeded&) {
        hyperbolic_side_open = false;
      }
    }
  }
  verdict.kind = HyperbolicVerdict::Kind::BudgetExhausted;
  return verdict;
}

SpectrumReport spectrum(const NielsenWord& phi, const SpectrumOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  SpectrumReport report{to_string(phi), phi.alphabet().rank(), nu_minus(phi), nu_plus(phi), 0, std::nullopt, false, 0};
  report.inverse_window_length = length_weights(phi.inverse()).window_length;
  if (options.with_lambda0) {
    report.lambda0 = lambda0(phi, options.tolerance);
    report.strictly_hyperbolic = report.lambda0->value > 1;
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

namespace {

LinearProgram circulation_program(const Alphabet& alphabet, int level, std::size_t extra_columns) {
  const WordIndex index(alphabet, level);
  const std::uint64_t vertices = alphabet.word_count(level - 1);
  LinearProgram lp;
  lp.columns = index.size() + extra_columns;
  lp.rows.assign(vertices + 1, {});
  lp.rhs.assign(vertices + 1, Rational(0));
  lp.rhs[vertices] = 1;
  for (std::uint64_t e = 0; e < index.size(); ++e) {
    const auto from = index.prefix_index(e);
    const auto to = level == 1 ? std::uint64_t{0} : index.suffix_index(e);
    if (from != to) {
      lp.rows[from].emplace_back(e, Rational(1));
      lp.rows[to].emplace_back(e, Rational(-1));
    }
    lp.rows[vertices].emplace_back(e, Rational(1));
  }
  lp.cost.assign(lp.columns, Rational(0));
  return lp;
}

}  // namespace

Rational lp_extremum(const Alphabet& alphabet, int level, std::span<const std::int64_t> weights, bool maximize) {
  LinearProgram lp = circulation_program(alphabet, level, 0);
  if (weights.size() != lp.columns) throw DomainError("weight vector does not match the transition graph");
  for (std::size_t e = 0; e < weights.size(); ++e) lp.cost[e] = maximize ? -weights[e] : weights[e];
  const LpSolution solution = solve_lp(lp);
  if (solution.status != LpSolution::Status::Optimal) throw InvariantViolation("Q_L program has no optimum");
  return maximize ? Rational(-solution.value) : solution.value;
}

Rational lp_lambda0(const Alphabet& alphabet, int level, std::span<const std::int64_t> g, std::span<const std::int64_t> h) {
  LinearProgram lp = circulation_program(alphabet, level, 3);
  const std::size_t edges = lp.columns - 3;
  if (g.size() != edges || h.size() != edges) throw DomainError("weight vectors do not match the transition graph");
  const std::size_t z = edges, slack_g = edges + 1, slack_h = edges + 2;
  for (const auto* weights : {&g, &h}) {
    SparseRow row;
    for (std::size_t e = 0; e < edges; ++e)
      if ((*weights)[e] != 0) row.emplace_back(e, Rational(-(*weights)[e]));
    row.emplace_back(z, Rational(1));
    row.emplace_back(weights == &g ? slack_g : slack_h, Rational(-1));
    lp.rows.push_back(std::move(row));
    lp.rhs.emplace_back(0);
  }
  lp.cost[z] = 1;
  const LpSolution solution = solve_lp(lp);
  if (solution.status != LpSolution::Status::Optimal) throw InvariantViolation("lambda0 program has no optimum");
  return solution.value;
}

Rational vertex_extremum(const Alphabet& alphabet, int level, std::span<const std::int64_t> weights, bool maximize,
                         std::uint64_t max_cycles) {
  std::optional<Rational> best;
  for_each_simple_cycle(alphabet, level, max_cycles, [&](std::span<const std::uint64_t> cycle) {
    Rational mean = cycle_mean(cycle, weights);
    if (!best || (maximize ? mean > *best : mean < *best)) best = std::move(mean);
    return true;
  });
  if (!best) throw InvariantViolation("transition graph has no cycles");
  return *best;
}

}  // namespace freqspec
