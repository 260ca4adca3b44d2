#pragma once

#include <cstdint>

namespace freqspec {

inline constexpr std::uint64_t kDefaultMaxVertices = 10'000'000;

/// Cap on D(L-1), the vertex count of a level-L transition graph. Reads
/// FREQSPEC_MAX_VERTICES when set to a positive integer.
std::uint64_t vertex_budget();

}  // namespace freqspec
