#include "freqspec/polytope.hpp"

#include "freqspec/errors.hpp"
#include "freqspec/linalg.hpp"
#include "freqspec/word_index.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <set>

namespace freqspec {

namespace {

// Cap on the number of letters realize() will emit.
constexpr std::uint64_t kMaxRealizationLength = 50'000'000;

void require_member(const FrequencyVector& q, const char* operation) {
  if (!check_membership(q))
    throw DomainError(std::string(operation) + ": vector is not a point of Q_" + std::to_string(q.level()));
}

Integer common_denominator(const FrequencyVector& q) {
  Integer n = 1;
  for (const auto& [v, value] : q.entries()) n = lcm(n, boost::multiprecision::denominator(value));
  return n;
}

std::uint64_t to_count(const Integer& n) {
  if (n > Integer(kMaxRealizationLength)) throw BudgetExceeded("realization would exceed " + std::to_string(kMaxRealizationLength) + " letters");
  return n.convert_to<std::uint64_t>();
}

// Level-1 construction: blocks alpha_1..alpha_k beta_1..beta_k.
RealizationWitness realize_level_one(const FrequencyVector& q) {
  const Integer n = common_denominator(q);
  std::vector<Letter> alphas, betas;
  for (int i = 1; i <= q.alphabet().rank(); ++i) {
    const Word pos = Word::from_reduced({i});
    const Word neg = Word::from_reduced({-i});
    const Integer np = (n * q.get(pos)).convert_to<Integer>();
    const Integer nn = (n * q.get(neg)).convert_to<Integer>();
    if (np > 0 && nn > 0) {
      alphas.insert(alphas.end(), to_count(2 * np), i);
      betas.insert(betas.end(), to_count(2 * nn), -i);
    } else if (np > 0) {
      alphas.insert(alphas.end(), to_count(np), i);
      betas.insert(betas.end(), to_count(np), i);
    } else if (nn > 0) {
      alphas.insert(alphas.end(), to_count(nn), -i);
      betas.insert(betas.end(), to_count(nn), -i);
    }
  }
  alphas.insert(alphas.end(), betas.begin(), betas.end());
  return {CyclicWord(alphas), n};
}

// Hierholzer on [N * pruned graph]; emits the last letter of each edge.
RealizationWitness realize_euler(const FrequencyVector& q) {
  const Integer n = common_denominator(q);
  const InitialGraph graph = pruned_initial_graph(q);
  if (graph.component_count() != 1) throw DomainError("realize: pruned initial graph is not connected");

  struct Out {
    Letter last;
    std::size_t to;
    std::uint64_t remaining;
  };
  std::vector<std::vector<Out>> out(graph.vertices.size());
  std::uint64_t total = 0;
  for (const auto& e : graph.edges) {
    const std::uint64_t c = to_count((n * e.label).convert_to<Integer>());
    total += c;
    if (total > kMaxRealizationLength) throw BudgetExceeded("realization too long");
    out[e.from].push_back({e.word.back(), e.to, c});
  }
  for (auto& list : out)
    std::sort(list.begin(), list.end(), [](const Out& a, const Out& b) { return letter_key(a.last) < letter_key(b.last); });

  std::vector<std::size_t> cursor(out.size(), 0);
  std::vector<std::size_t> vertex_stack{0};
  std::vector<Letter> letter_stack;
  std::vector<Letter> circuit;
  circuit.reserve(total);
  while (!vertex_stack.empty()) {
    const std::size_t v = vertex_stack.back();
    auto& c = cursor[v];
    while (c < out[v].size() && out[v][c].remaining == 0) ++c;
    if (c < out[v].size()) {
      --out[v][c].remaining;
      vertex_stack.push_back(out[v][c].to);
      letter_stack.push_back(out[v][c].last);
    } else {
      vertex_stack.pop_back();
      if (!letter_stack.empty()) {
        circuit.push_back(letter_stack.back());
        letter_stack.pop_back();
      }
    }
  }
  if (circuit.size() != total) throw InvariantViolation("Euler circuit did not use every edge");
  std::reverse(circuit.begin(), circuit.end());
  return {CyclicWord(circuit), n};
}

}  // namespace

bool check_membership(const FrequencyVector& q) {
  if (q.level() == 0) return q.support_size() == 1 && q.get(Word()) == 1;
  Rational total = 0;
  for (const auto& [v, value] : q.entries()) {
    if (value < 0) return false;
    total += value;
  }
  if (total != 1) return false;
  if (q.level() == 1) return true;
  std::map<Word, Rational> balance;  // out-mass minus in-mass per vertex
  for (const auto& [v, value] : q.entries()) {
    balance[v.prefix(v.size() - 1)] += value;
    balance[v.suffix(v.size() - 1)] -= value;
  }
  return std::all_of(balance.begin(), balance.end(), [](const auto& kv) { return kv.second == 0; });
}

FrequencyVector project(const FrequencyVector& q) {
  if (q.level() < 1) throw DomainError("project: level must be at least 1");
  require_member(q, "project");
  FrequencyVector out(q.alphabet(), q.level() - 1);
  if (q.level() == 1) {
    out.set(Word(), 1);
    return out;
  }
  for (const auto& [v, value] : q.entries()) out.add(v.prefix(v.size() - 1), value);
  return out;
}

FrequencyVector project_to_level(const FrequencyVector& q, int level) {
  if (level < 0 || level > q.level()) throw DomainError("project_to_level: target level out of range");
  require_member(q, "project_to_level");
  if (level == q.level()) return q;
  FrequencyVector out(q.alphabet(), level);
  if (level == 0) {
    out.set(Word(), 1);
    return out;
  }
  for (const auto& [v, value] : q.entries()) out.add(v.prefix(static_cast<std::size_t>(level)), value);
  return out;
}

InitialGraph InitialGraph::pruned() const {
  InitialGraph out;
  out.level = level;
  std::vector<std::size_t> remap(vertices.size(), std::numeric_limits<std::size_t>::max());
  auto keep = [&](std::size_t v) {
    if (remap[v] == std::numeric_limits<std::size_t>::max()) {
      remap[v] = 0;  // placeholder; assigned below in vertex order
    }
  };
  for (const auto& e : edges)
    if (e.label != 0) {
      keep(e.from);
      keep(e.to);
    }
  for (std::size_t v = 0; v < vertices.size(); ++v)
    if (remap[v] != std::numeric_limits<std::size_t>::max()) {
      remap[v] = out.vertices.size();
      out.vertices.push_back(vertices[v]);
    }
  for (const auto& e : edges)
    if (e.label != 0) out.edges.push_back({e.word, remap[e.from], remap[e.to], e.label});
  return out;
}

bool InitialGraph::balanced() const {
  std::vector<Rational> balance(vertices.size());
  for (const auto& e : edges) {
    balance[e.from] += e.label;
    balance[e.to] -= e.label;
  }
  return std::all_of(balance.begin(), balance.end(), [](const Rational& b) { return b == 0; });
}

std::size_t InitialGraph::component_count() const {
  std::vector<std::size_t> parent(vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<bool> touched(vertices.size(), false);
  for (const auto& e : edges) {
    touched[e.from] = touched[e.to] = true;
    parent[find(e.from)] = find(e.to);
  }
  std::size_t count = 0;
  for (std::size_t v = 0; v < vertices.size(); ++v) count += (touched[v] && find(v) == v) ? 1 : 0;
  return count;
}

InitialGraph initial_graph(const FrequencyVector& q) {
  if (q.level() < 2) throw DomainError("initial graphs need level >= 2");
  require_member(q, "initial_graph");
  const WordIndex vertices(q.alphabet(), q.level() - 1);
  const WordIndex edges(q.alphabet(), q.level());
  require_indexable(q.alphabet(), q.level(), 10'000'000);
  InitialGraph g;
  g.level = q.level();
  for (std::uint64_t i = 0; i < vertices.size(); ++i) g.vertices.push_back(vertices.word(i));
  for (std::uint64_t i = 0; i < edges.size(); ++i) {
    Word v = edges.word(i);
    const Rational label = q.get(v);
    g.edges.push_back({std::move(v), edges.prefix_index(i), edges.suffix_index(i), label});
  }
  return g;
}

InitialGraph pruned_initial_graph(const FrequencyVector& q) {
  if (q.level() < 2) throw DomainError("initial graphs need level >= 2");
  require_member(q, "pruned_initial_graph");
  std::set<Word> vertex_set;
  for (const auto& [v, value] : q.entries()) {
    vertex_set.insert(v.prefix(v.size() - 1));
    vertex_set.insert(v.suffix(v.size() - 1));
  }
  InitialGraph g;
  g.level = q.level();
  g.vertices.assign(vertex_set.begin(), vertex_set.end());
  auto position = [&](const Word& w) {
    return static_cast<std::size_t>(std::lower_bound(g.vertices.begin(), g.vertices.end(), w) - g.vertices.begin());
  };
  for (const auto& [v, value] : q.entries())
    g.edges.push_back({v, position(v.prefix(v.size() - 1)), position(v.suffix(v.size() - 1)), value});
  return g;
}

bool is_realizable(const FrequencyVector& q) {
  if (q.level() < 1) throw DomainError("is_realizable: level must be at least 1");
  require_member(q, "is_realizable");
  if (q.level() == 1) {
    for (int i = 1; i <= q.alphabet().rank(); ++i) {
      const Rational a = q.get(Word::from_reduced({i}));
      const Rational b = q.get(Word::from_reduced({-i}));
      if (a > 0 && b > 0 && a + b == 1) return false;
    }
    return true;
  }
  return pruned_initial_graph(q).component_count() == 1;
}

RealizationWitness realize(const FrequencyVector& q) {
  if (!is_realizable(q)) throw DomainError("realize: vector is not realizable by a cyclic word");
  return q.level() == 1 ? realize_level_one(q) : realize_euler(q);
}

FrequencyVector barycenter(const Alphabet& alphabet, int m) {
  if (m < 1) throw DomainError("barycenter: level must be at least 1");
  require_indexable(alphabet, m, 10'000'000);
  const WordIndex index(alphabet, m);
  const Rational value(Integer(1), Integer(index.size()));
  FrequencyVector z(alphabet, m);
  for (std::uint64_t i = 0; i < index.size(); ++i) z.set(index.word(i), value);
  return z;
}

FrequencyVector interior_perturb(const FrequencyVector& q, const Rational& epsilon) {
  if (epsilon <= 0 || epsilon >= 1) throw DomainError("interior_perturb: epsilon must lie in (0, 1)");
  require_member(q, "interior_perturb");
  return barycenter(q.alphabet(), q.level()).combined(epsilon, q, 1 - epsilon);
}

FrequencyVector uniform_on_cycle(const Alphabet& alphabet, std::span<const Word> edges) {
  if (edges.empty()) throw DomainError("uniform_on_cycle: empty cycle");
  FrequencyVector q(alphabet, static_cast<int>(edges.front().size()));
  const Rational share(Integer(1), Integer(edges.size()));
  for (const auto& e : edges) q.add(e, share);
  return q;
}

void for_each_simple_cycle(const Alphabet& alphabet, int m, std::uint64_t max_cycles,
                           const std::function<bool(std::span<const std::uint64_t>)>& visit) {
  if (m < 1) throw DomainError("simple cycles need level >= 1");
  require_indexable(alphabet, m, 10'000'000);
  const WordIndex edge_index(alphabet, m);
  const std::uint64_t vertex_count = alphabet.word_count(m - 1);
  std::vector<std::vector<std::uint64_t>> out(vertex_count);
  for (std::uint64_t e = 0; e < edge_index.size(); ++e) out[edge_index.prefix_index(e)].push_back(e);
  auto head = [&](std::uint64_t e) { return m == 1 ? std::uint64_t{0} : edge_index.suffix_index(e); };

  // Johnson's circuit enumeration restricted to vertices >= start.
  std::vector<bool> blocked(vertex_count, false);
  std::vector<std::set<std::uint64_t>> blocked_by(vertex_count);
  std::vector<std::uint64_t> path;
  std::uint64_t emitted = 0;
  bool stop = false;

  std::function<void(std::uint64_t)> unblock = [&](std::uint64_t u) {
    blocked[u] = false;
    auto waiting = std::move(blocked_by[u]);
    blocked_by[u].clear();
    for (auto w : waiting)
      if (blocked[w]) unblock(w);
  };

  std::function<bool(std::uint64_t, std::uint64_t)> circuit = [&](std::uint64_t v, std::uint64_t start) -> bool {
    bool found = false;
    blocked[v] = true;
    for (auto e : out[v]) {
      if (stop) break;
      const auto w = head(e);
      if (w < start) continue;
      if (w == start) {
        path.push_back(e);
        if (++emitted > max_cycles)
          throw BudgetExceeded("more than " + std::to_string(max_cycles) + " simple cycles at level " + std::to_string(m));
        if (!visit(path)) stop = true;
        path.pop_back();
        found = true;
      } else if (!blocked[w]) {
        path.push_back(e);
        if (circuit(w, start)) found = true;
        path.pop_back();
      }
    }
    if (found) {
      unblock(v);
    } else {
      for (auto e : out[v]) {
        const auto w = head(e);
        if (w >= start) blocked_by[w].insert(v);
      }
    }
    return found;
  };

  for (std::uint64_t s = 0; s < vertex_count && !stop; ++s) {
    for (std::uint64_t v = s; v < vertex_count; ++v) {
      blocked[v] = false;
      blocked_by[v].clear();
    }
    circuit(s, s);
  }
}

std::vector<FrequencyVector> enumerate_vertices(const Alphabet& alphabet, int m, std::uint64_t max_vertices) {
  const WordIndex edge_index(alphabet, m);
  std::vector<FrequencyVector> vertices;
  std::vector<Word> words;
  for_each_simple_cycle(alphabet, m, max_vertices, [&](std::span<const std::uint64_t> cycle) {
    words.clear();
    for (auto e : cycle) words.push_back(edge_index.word(e));
    vertices.push_back(uniform_on_cycle(alphabet, words));
    return true;
  });
  std::sort(vertices.begin(), vertices.end(), frequency_vector_less);
  return vertices;
}

std::size_t affine_dimension(std::span<const FrequencyVector> points) {
  if (points.empty()) throw DomainError("affine_dimension of an empty set");
  std::map<Word, std::size_t> coordinate;
  for (const auto& p : points)
    for (const auto& [v, value] : p.entries()) coordinate.try_emplace(v, 0);
  std::size_t next = 0;
  for (auto& [v, c] : coordinate) c = next++;
  auto dense = [&](const FrequencyVector& p) {
    std::vector<Rational> row(coordinate.size());
    for (const auto& [v, value] : p.entries()) row[coordinate[v]] = value;
    return row;
  };
  const auto origin = dense(points.front());
  RationalMatrix differences;
  for (std::size_t i = 1; i < points.size(); ++i) {
    auto row = dense(points[i]);
    for (std::size_t j = 0; j < row.size(); ++j) row[j] -= origin[j];
    differences.push_back(std::move(row));
  }
  return matrix_rank(std::move(differences));
}

bool frequency_vector_less(const FrequencyVector& a, const FrequencyVector& b) {
  return std::lexicographical_compare(a.entries().begin(), a.entries().end(), b.entries().begin(), b.entries().end(),
                                      [](const auto& x, const auto& y) {
                                        if (x.first != y.first) return x.first < y.first;
                                        return x.second < y.second;
                                      });
}

}  // namespace freqspec
