#include "freqspec/rational.hpp"

#include "freqspec/errors.hpp"

#include <cctype>

namespace freqspec {

namespace {

std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  return text;
}

bool is_integer_literal(std::string_view text) {
  if (!text.empty() && text.front() == '-') text.remove_prefix(1);
  if (text.empty()) return false;
  for (char c : text)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

std::string to_string(const Rational& value) {
  const Integer num = boost::multiprecision::numerator(value);
  const Integer den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational parse_rational(std::string_view text) {
  text = trim(text);
  const auto slash = text.find('/');
  const std::string_view num_text = trim(text.substr(0, slash));
  const std::string_view den_text = slash == std::string_view::npos ? std::string_view("1") : trim(text.substr(slash + 1));
  if (!is_integer_literal(num_text) || !is_integer_literal(den_text) || den_text.front() == '-')
    throw ParseError("malformed rational '" + std::string(text) + "'");
  const Integer num{std::string(num_text)};
  const Integer den{std::string(den_text)};
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::lcm(a, b);
}

}  // namespace freqspec
