#include "freqspec/budget.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace freqspec {

std::uint64_t vertex_budget() {
  const char* text = std::getenv("FREQSPEC_MAX_VERTICES");
  if (text == nullptr) return kDefaultMaxVertices;
  std::uint64_t value = 0;
  const char* end = text + std::strlen(text);
  const auto [ptr, ec] = std::from_chars(text, end, value);
  if (ec != std::errc() || ptr != end || value == 0) return kDefaultMaxVertices;
  return value;
}

}  // namespace freqspec
