#pragma once

#include "freqspec/rational.hpp"

#include <optional>
#include <vector>

namespace freqspec {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Row-reduces a copy of `rows` and returns its rank.
std::size_t matrix_rank(RationalMatrix rows);

/// Solves A x = b when A has full column rank and the system is consistent;
/// returns nullopt otherwise.
std::optional<std::vector<Rational>> solve_unique(const RationalMatrix& a, const std::vector<Rational>& b);

}  // namespace freqspec
