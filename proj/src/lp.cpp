#include "freqspec/lp.hpp"

#include "freqspec/errors.hpp"

#include <algorithm>
#include <optional>

namespace freqspec {

namespace {

constexpr int kDegenerateStretch = 50;

const Rational* find(const SparseRow& row, std::size_t column) {
  const auto it = std::lower_bound(row.begin(), row.end(), column,
                                   [](const auto& entry, std::size_t c) { return entry.first < c; });
  return it != row.end() && it->first == column ? &it->second : nullptr;
}

// target - factor * source, dropping zeros.
SparseRow subtract_scaled(const SparseRow& target, const Rational& factor, const SparseRow& source) {
  SparseRow out;
  out.reserve(target.size() + source.size());
  auto a = target.begin();
  auto b = source.begin();
  while (a != target.end() || b != source.end()) {
    if (b == source.end() || (a != target.end() && a->first < b->first)) {
      out.push_back(*a++);
    } else if (a == target.end() || b->first < a->first) {
      out.emplace_back(b->first, -factor * b->second);
      ++b;
    } else {
      Rational value = a->second - factor * b->second;
      if (value != 0) out.emplace_back(a->first, std::move(value));
      ++a;
      ++b;
    }
  }
  return out;
}

class Tableau {
 public:
  Tableau(const LinearProgram& lp, std::uint64_t max_pivots) : original_(lp.columns), max_pivots_(max_pivots) {
    const std::size_t m = lp.rows.size();
    if (lp.rhs.size() != m || lp.cost.size() != lp.columns) throw DomainError("malformed linear program");
    columns_ = original_ + m;
    for (std::size_t r = 0; r < m; ++r) {
      SparseRow row = lp.rows[r];
      Rational b = lp.rhs[r];
      if (b < 0) {
        for (auto& [c, v] : row) v = -v;
        b = -b;
      }
      row.emplace_back(original_ + r, Rational(1));
      rows_.push_back(std::move(row));
      rhs_.push_back(std::move(b));
      basis_.push_back(original_ + r);
    }
  }

  // Minimizes the sum of artificials; false when the program is infeasible.
  bool phase_one() {
    std::vector<Rational> cost(columns_);
    for (std::size_t c = original_; c < columns_; ++c) cost[c] = 1;
    price(cost, columns_);
    if (!optimize(columns_)) throw InvariantViolation("phase one cannot be unbounded");
    if (objective_ != 0) return false;
    drive_out_artificials();
    return true;
  }

  bool phase_two(const std::vector<Rational>& cost) {
    std::vector<Rational> full(columns_);
    std::copy(cost.begin(), cost.end(), full.begin());
    price(full, original_);
    return optimize(original_);
  }

  LpSolution solution(LpSolution::Status status) const {
    LpSolution out;
    out.status = status;
    out.pivots = pivots_;
    if (status != LpSolution::Status::Optimal) return out;
    out.value = objective_;
    out.x.assign(original_, Rational(0));
    for (std::size_t r = 0; r < rows_.size(); ++r)
      if (basis_[r] < original_) out.x[basis_[r]] = rhs_[r];
    return out;
  }

 private:
  void price(const std::vector<Rational>& cost, std::size_t allowed) {
    reduced_ = cost;
    objective_ = 0;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational& cb = cost[basis_[r]];
      if (cb == 0) continue;
      for (const auto& [c, v] : rows_[r]) reduced_[c] -= cb * v;
      objective_ += cb * rhs_[r];
    }
    for (std::size_t c = allowed; c < columns_; ++c) reduced_[c] = 0;
  }

  std::optional<std::size_t> entering(std::size_t allowed, bool bland) const {
    std::optional<std::size_t> best;
    for (std::size_t c = 0; c < allowed; ++c) {
      if (reduced_[c] >= 0) continue;
      if (bland) return c;
      if (!best || reduced_[c] < reduced_[*best]) best = c;
    }
    return best;
  }

  std::optional<std::size_t> leaving(std::size_t column) const {
    std::optional<std::size_t> best;
    Rational best_ratio;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational* a = find(rows_[r], column);
      if (a == nullptr || *a <= 0) continue;
      Rational ratio = rhs_[r] / *a;
      if (!best || ratio < best_ratio || (ratio == best_ratio && basis_[r] < basis_[*best])) {
        best = r;
        best_ratio = std::move(ratio);
      }
    }
    return best;
  }

  void pivot(std::size_t row, std::size_t column) {
    if (++pivots_ > max_pivots_) throw BudgetExceeded("simplex exceeded " + std::to_string(max_pivots_) + " pivots");
    const Rational a = *find(rows_[row], column);
    for (auto& [c, v] : rows_[row]) v /= a;
    rhs_[row] /= a;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (r == row) continue;
      const Rational* f = find(rows_[r], column);
      if (f == nullptr) continue;
      const Rational factor = *f;
      rhs_[r] -= factor * rhs_[row];
      rows_[r] = subtract_scaled(rows_[r], factor, rows_[row]);
    }
    const Rational f = reduced_[column];
    if (f != 0) {
      for (const auto& [c, v] : rows_[row]) reduced_[c] -= f * v;
      objective_ += f * rhs_[row];
    }
    basis_[row] = column;
  }

  // False when unbounded.
  bool optimize(std::size_t allowed) {
    int degenerate = 0;
    while (true) {
      const bool bland = degenerate > kDegenerateStretch;
      const auto column = entering(allowed, bland);
      if (!column) return true;
      const auto row = leaving(*column);
      if (!row) return false;
      degenerate = rhs_[*row] == 0 ? degenerate + 1 : 0;
      pivot(*row, *column);
    }
  }

  void drive_out_artificials() {
    for (std::size_t r = 0; r < rows_.size();) {
      if (basis_[r] < original_) {
        ++r;
        continue;
      }
      const auto it = std::find_if(rows_[r].begin(), rows_[r].end(), [&](const auto& e) { return e.first < original_; });
      if (it != rows_[r].end()) {
        pivot(r, it->first);
        ++r;
      } else {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
        rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
      }
    }
  }

  std::size_t original_;
  std::size_t columns_ = 0;
  std::uint64_t max_pivots_;
  std::uint64_t pivots_ = 0;
  std::vector<SparseRow> rows_;
  std::vector<Rational> rhs_;
  std::vector<std::size_t> basis_;
  std::vector<Rational> reduced_;
  Rational objective_;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, std::uint64_t max_pivots) {
  Tableau tableau(lp, max_pivots);
  if (!tableau.phase_one()) return tableau.solution(LpSolution::Status::Infeasible);
  if (!tableau.phase_two(lp.cost)) return tableau.solution(LpSolution::Status::Unbounded);
  return tableau.solution(LpSolution::Status::Optimal);
}

}  // namespace freqspec
