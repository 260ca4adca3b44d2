#include "freqspec/frequency_vector.hpp"

#include "freqspec/errors.hpp"

#include <optional>
#include <sstream>

namespace freqspec {

FrequencyVector::FrequencyVector(Alphabet alphabet, int level) : alphabet_(alphabet), level_(level) {
  if (level < 0) throw DomainError("negative level");
}

void FrequencyVector::check_key(const Word& v) const {
  if (static_cast<int>(v.size()) != level_)
    throw DomainError("key " + to_string(v) + " does not have length " + std::to_string(level_));
  for (Letter x : v.letters())
    if (!alphabet_.contains(x)) throw DomainError("key " + to_string(v) + " uses a letter outside the alphabet");
}

Rational FrequencyVector::get(const Word& v) const {
  const auto it = entries_.find(v);
  return it == entries_.end() ? Rational(0) : it->second;
}

void FrequencyVector::set(const Word& v, const Rational& value) {
  check_key(v);
  if (value == 0)
    entries_.erase(v);
  else
    entries_[v] = value;
}

void FrequencyVector::add(const Word& v, const Rational& value) {
  check_key(v);
  if (value == 0) return;
  auto [it, inserted] = entries_.try_emplace(v, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) entries_.erase(it);
  }
}

Rational FrequencyVector::total() const {
  Rational sum = 0;
  for (const auto& [v, value] : entries_) sum += value;
  return sum;
}

FrequencyVector FrequencyVector::scaled(const Rational& factor) const {
  FrequencyVector out(alphabet_, level_);
  if (factor == 0) return out;
  for (const auto& [v, value] : entries_) out.entries_.emplace(v, value * factor);
  return out;
}

FrequencyVector FrequencyVector::combined(const Rational& a, const FrequencyVector& other, const Rational& b) const {
  if (other.level_ != level_ || !(other.alphabet_ == alphabet_))
    throw DomainError("cannot combine frequency vectors of different level or rank");
  FrequencyVector out = scaled(a);
  for (const auto& [v, value] : other.entries_) out.add(v, value * b);
  return out;
}

FrequencyVector read_frequency_vector(std::istream& in) {
  std::string line;
  std::optional<FrequencyVector> q;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    if (!q) {
      std::string level_kw, rank_kw;
      int level = -1, rank = -1;
      if (!(fields >> level_kw >> level >> rank_kw >> rank) || level_kw != "level" || rank_kw != "rank")
        throw ParseError("line " + std::to_string(line_no) + ": expected header 'level <m> rank <k>'");
      q.emplace(Alphabet(rank), level);
      continue;
    }
    std::string word_text, eq, value_text;
    if (!(fields >> word_text >> eq >> value_text) || eq != "=")
      throw ParseError("line " + std::to_string(line_no) + ": expected '<word> = <p/q>'");
    const Word v = parse_word(word_text, q->alphabet());
    if (to_string(v) != word_text)
      throw ParseError("line " + std::to_string(line_no) + ": word '" + word_text + "' is not freely reduced");
    try {
      if (q->get(v) != 0) throw ParseError("line " + std::to_string(line_no) + ": duplicate key " + word_text);
      q->set(v, parse_rational(value_text));
    } catch (const DomainError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!q) throw ParseError("missing header 'level <m> rank <k>'");
  return *q;
}

FrequencyVector parse_frequency_vector(const std::string& text) {
  std::istringstream in(text);
  return read_frequency_vector(in);
}

void write_frequency_vector(std::ostream& out, const FrequencyVector& q) {
  out << "level " << q.level() << " rank " << q.alphabet().rank() << '\n';
  for (const auto& [v, value] : q.entries()) out << to_string(v) << " = " << to_string(value) << '\n';
}

std::string to_string(const FrequencyVector& q) {
  std::ostringstream out;
  write_frequency_vector(out, q);
  return out.str();
}

FrequencyVector frequency_vector(const CyclicWord& w, int m, const Alphabet& alphabet) {
  if (m < 1) throw DomainError("frequency vectors need level m >= 1");
  std::map<Word, std::uint64_t> counts;
  std::vector<Letter> window(static_cast<std::size_t>(m));
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (int j = 0; j < m; ++j) window[static_cast<std::size_t>(j)] = w[i + static_cast<std::size_t>(j)];
    ++counts[Word::from_reduced(window)];
  }
  FrequencyVector q(alphabet, m);
  const Integer length(w.size());
  for (const auto& [v, n] : counts) q.set(v, Rational(Integer(n), length));
  return q;
}

}  // namespace freqspec
