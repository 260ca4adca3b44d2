#include "freqspec/linalg.hpp"

#include <utility>

namespace freqspec {

namespace {

// Gauss-Jordan in place; returns pivot columns.
std::vector<std::size_t> reduce(RationalMatrix& rows, std::size_t columns) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < columns && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    const Rational inv = 1 / rows[r][c];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Rational f = rows[i][c];
      for (std::size_t j = c; j < rows[i].size(); ++j) rows[i][j] -= f * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t matrix_rank(RationalMatrix rows) {
  if (rows.empty()) return 0;
  return reduce(rows, rows.front().size()).size();
}

std::optional<std::vector<Rational>> solve_unique(const RationalMatrix& a, const std::vector<Rational>& b) {
  if (a.empty()) return std::nullopt;
  const std::size_t n = a.front().size();
  RationalMatrix aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  const auto pivots = reduce(aug, n + 1);
  if (!pivots.empty() && pivots.back() == n) return std::nullopt;  // inconsistent
  if (pivots.size() != n) return std::nullopt;                       // not unique
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[pivots[i]] = aug[i][n];
  return x;
}

}  // namespace freqspec
