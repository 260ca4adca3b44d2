#pragma once

#include "freqspec/rational.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace freqspec {

using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

/// minimize cost . x  subject to  A x = rhs,  x >= 0.
struct LinearProgram {
  std::size_t columns = 0;
  std::vector<SparseRow> rows;  ///< sorted by column, no zeros
  std::vector<Rational> rhs;
  std::vector<Rational> cost;
};

struct LpSolution {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Infeasible;
  Rational value;
  std::vector<Rational> x;
  std::uint64_t pivots = 0;
};

/// Exact two-phase primal simplex on a sparse tableau. Entering columns by
/// most negative reduced cost, switching to Bland's rule during long
/// degenerate stretches. Redundant equality rows are dropped after phase one.
/// Throws BudgetExceeded after `max_pivots` pivots.
LpSolution solve_lp(const LinearProgram& lp, std::uint64_t max_pivots = 2'000'000);

}  // namespace freqspec
