#pragma once

#include "freqspec/rational.hpp"

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace freqspec::cli {

enum ExitCode : int {
  kSuccess = 0,
  kParseError = 2,
  kBudgetExceeded = 3,
  kInvariantViolation = 4,
};

/// Ordered key/value report. Serialized as a `[kind]` header followed by
/// `key = value` lines and terminated by a blank line.
struct Report {
  std::string kind;
  std::vector<std::pair<std::string, std::string>> fields;

  void add(std::string key, std::string value);
  void add(std::string key, const Rational& value);
  /// Throws ParseError when the key is absent.
  const std::string& at(std::string_view key) const;
  bool contains(std::string_view key) const;
  Rational rational(std::string_view key) const;
};

void write_structured(std::ostream& out, const Report& report);

/// Every structured block in a stream; surrounding free text is skipped.
std::vector<Report> parse_structured(std::istream& in);
std::vector<Report> parse_structured(const std::string& text);

/// Entry point of the `freqspec` binary. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace freqspec::cli
