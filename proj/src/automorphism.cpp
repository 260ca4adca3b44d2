#include "freqspec/automorphism.hpp"

#include "freqspec/budget.hpp"
#include "freqspec/errors.hpp"
#include "freqspec/polytope.hpp"
#include "freqspec/word_index.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <sstream>

namespace freqspec {

std::vector<Letter> NielsenGen::image(Letter x) const {
  const int a = x < 0 ? -x : x;
  const int sign = x < 0 ? -1 : 1;
  switch (kind) {
    case Kind::Invert:
      return {a == i ? -x : x};
    case Kind::Swap:
      if (a == i) return {sign * j};
      if (a == j) return {sign * i};
      return {x};
    case Kind::Multiply:
      if (x == i) return {i, j};
      if (x == -i) return {-j, -i};
      return {x};
  }
  return {x};
}

std::vector<NielsenGen> NielsenGen::inverse() const {
  if (kind == Kind::Multiply) return {invert(j), *this, invert(j)};
  return {*this};
}

void NielsenGen::validate(int rank) const {
  auto in_range = [rank](int x) { return x >= 1 && x <= rank; };
  if (!in_range(i)) throw DomainError("generator index " + std::to_string(i) + " outside rank " + std::to_string(rank));
  if (kind == Kind::Invert) return;
  if (!in_range(j)) throw DomainError("generator index " + std::to_string(j) + " outside rank " + std::to_string(rank));
  if (i == j) throw DomainError(to_string(*this) + " needs distinct indices");
}

namespace {

int parse_index(std::string_view text, std::string_view token) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    throw ParseError("bad index in Nielsen token '" + std::string(token) + "'");
  return value;
}

}  // namespace

NielsenGen parse_nielsen_gen(std::string_view token) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = token.find(':', start);
    parts.push_back(token.substr(start, colon == std::string_view::npos ? std::string_view::npos : colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts[0] == "inv" && parts.size() == 2) return NielsenGen::invert(parse_index(parts[1], token));
  if (parts[0] == "swap" && parts.size() == 3)
    return NielsenGen::swap(parse_index(parts[1], token), parse_index(parts[2], token));
  if (parts[0] == "mul" && parts.size() == 3)
    return NielsenGen::multiply(parse_index(parts[1], token), parse_index(parts[2], token));
  throw ParseError("unknown Nielsen token '" + std::string(token) + "'");
}

std::string to_string(const NielsenGen& g) {
  switch (g.kind) {
    case NielsenGen::Kind::Invert:
      return "inv:" + std::to_string(g.i);
    case NielsenGen::Kind::Swap:
      return "swap:" + std::to_string(g.i) + ":" + std::to_string(g.j);
    case NielsenGen::Kind::Multiply:
      return "mul:" + std::to_string(g.i) + ":" + std::to_string(g.j);
  }
  return "?";
}

NielsenWord::NielsenWord(Alphabet alphabet, std::vector<NielsenGen> gens) : alphabet_(alphabet), gens_(std::move(gens)) {
  for (const auto& g : gens_) g.validate(alphabet_.rank());
}

NielsenWord NielsenWord::inverse() const {
  std::vector<NielsenGen> out;
  for (auto it = gens_.rbegin(); it != gens_.rend(); ++it) {
    const auto inv = it->inverse();
    out.insert(out.end(), inv.begin(), inv.end());
  }
  return NielsenWord(alphabet_, std::move(out));
}

NielsenWord NielsenWord::power(int n) const {
  if (n < 0) return inverse().power(-n);
  std::vector<NielsenGen> out;
  for (int e = 0; e < n; ++e) out.insert(out.end(), gens_.begin(), gens_.end());
  return NielsenWord(alphabet_, std::move(out));
}

NielsenWord NielsenWord::then_after(const NielsenWord& other) const {
  if (!(alphabet_ == other.alphabet_)) throw DomainError("composing automorphisms of different ranks");
  std::vector<NielsenGen> out(gens_);
  out.insert(out.end(), other.gens_.begin(), other.gens_.end());
  return NielsenWord(alphabet_, std::move(out));
}

std::vector<Word> NielsenWord::generator_images() const {
  std::vector<Word> out;
  for (int i = 1; i <= alphabet_.rank(); ++i) out.push_back(apply(*this, Word::from_reduced({i})));
  return out;
}

std::size_t NielsenWord::max_image_length() const {
  std::size_t best = 0;
  for (const auto& w : generator_images()) best = std::max(best, w.size());
  return best;
}

NielsenWord parse_nielsen_word(std::string_view text, const Alphabet& alphabet) {
  std::vector<NielsenGen> gens;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    if (token == "id") continue;
    gens.push_back(parse_nielsen_gen(token));
    try {
      gens.back().validate(alphabet.rank());
    } catch (const DomainError& e) {
      throw ParseError(e.what());
    }
  }
  return NielsenWord(alphabet, std::move(gens));
}

std::string to_string(const NielsenWord& phi) {
  if (phi.gens().empty()) return "id";
  std::string out;
  for (const auto& g : phi.gens()) {
    if (!out.empty()) out += ' ';
    out += to_string(g);
  }
  return out;
}

Word apply(const NielsenWord& phi, const Word& w) {
  std::vector<Letter> current(w.letters());
  std::vector<Letter> next;
  for (auto it = phi.gens().rbegin(); it != phi.gens().rend(); ++it) {
    next.clear();
    for (Letter x : current) {
      const auto img = it->image(x);
      next.insert(next.end(), img.begin(), img.end());
    }
    current = free_reduce(next).letters();
  }
  return Word::from_reduced(std::move(current));
}

CyclicWord apply_cyclic(const NielsenWord& phi, const CyclicWord& w) { return conjugacy_class(apply(phi, w.word())); }

namespace {

// ---- block code -----------------------------------------------------------

struct Tracked {
  Letter letter;
  int src;
};

// Letter images of one generator, indexed by x + rank, with flags telling
// whether the image of x can lose its first (last) letter to a neighbour.
struct Stage {
  int rank = 0;
  std::vector<std::array<Letter, 2>> image;
  std::vector<int> size;
  std::vector<bool> needs_prev, needs_next;

  Stage(const NielsenGen& g, int rank_)
      : rank(rank_), image(2 * rank_ + 1), size(2 * rank_ + 1, 0), needs_prev(2 * rank_ + 1), needs_next(2 * rank_ + 1) {
    for (int x = -rank; x <= rank; ++x) {
      if (x == 0) continue;
      const auto img = g.image(x);
      const auto slot = static_cast<std::size_t>(x + rank);
      size[slot] = static_cast<int>(img.size());
      for (std::size_t n = 0; n < img.size(); ++n) image[slot][n] = img[n];
    }
    for (int x = -rank; x <= rank; ++x)
      for (int y = -rank; y <= rank; ++y) {
        if (x == 0 || y == 0 || y == inverse(x)) continue;
        if (last(x) == inverse(first(y))) {
          needs_next[static_cast<std::size_t>(x + rank)] = true;
          needs_prev[static_cast<std::size_t>(y + rank)] = true;
        }
      }
  }
  const Letter* begin(Letter x) const { return image[static_cast<std::size_t>(x + rank)].data(); }
  int length(Letter x) const { return size[static_cast<std::size_t>(x + rank)]; }
  Letter first(Letter x) const { return begin(x)[0]; }
  Letter last(Letter x) const { return begin(x)[length(x) - 1]; }
  bool prev_matters(Letter x) const { return needs_prev[static_cast<std::size_t>(x + rank)]; }
  bool next_matters(Letter x) const { return needs_next[static_cast<std::size_t>(x + rank)]; }
};

// Applies the stages to a finite segment of a reduced bi-infinite word. The
// image of y is tau(y) minus its first letter when that cancels against the
// previous image, minus its last letter when that cancels against the next
// one. An end letter whose block depends on the missing neighbour is dropped,
// and its source position stops being certain.
class BlockEngine {
 public:
  explicit BlockEngine(const NielsenWord& phi) {
    for (auto it = phi.gens().rbegin(); it != phi.gens().rend(); ++it) stages_.emplace_back(*it, phi.alphabet().rank());
  }

  bool run(std::span<const Letter> window) {
    current_.clear();
    for (std::size_t p = 0; p < window.size(); ++p) current_.push_back({window[p], static_cast<int>(p)});
    lo_ = 0;
    hi_ = static_cast<int>(window.size()) - 1;
    for (const auto& stage : stages_) {
      const std::size_t n = current_.size();
      next_.clear();
      for (std::size_t i = 0; i < n; ++i) {
        const Letter y = current_[i].letter;
        const bool has_prev = i > 0;
        const bool has_next = i + 1 < n;
        if ((!has_prev && stage.prev_matters(y)) || (!has_next && stage.next_matters(y))) {
          if (i == 0) lo_ = std::max(lo_, current_[i].src + 1);
          if (i + 1 == n) hi_ = std::min(hi_, current_[i].src - 1);
          continue;
        }
        int from = 0;
        int to = stage.length(y);
        if (has_prev && stage.first(y) == inverse(stage.last(current_[i - 1].letter))) ++from;
        if (has_next && stage.last(y) == inverse(stage.first(current_[i + 1].letter))) --to;
        if (from > to) throw InvariantViolation("block code consumed a letter from both sides");
        for (int k = from; k < to; ++k) next_.push_back({stage.begin(y)[k], current_[i].src});
      }
      std::swap(current_, next_);
    }
    return lo_ <= hi_;
  }

  const std::vector<Tracked>& image() const { return current_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }

  // Half-open index range of the letters attributed to `position`.
  std::pair<std::size_t, std::size_t> block(int position) const {
    const auto b = std::lower_bound(current_.begin(), current_.end(), position,
                                    [](const Tracked& t, int p) { return t.src < p; });
    const auto e = std::upper_bound(b, current_.end(), position, [](int p, const Tracked& t) { return p < t.src; });
    return {static_cast<std::size_t>(b - current_.begin()), static_cast<std::size_t>(e - current_.begin())};
  }

 private:
  std::vector<Stage> stages_;
  std::vector<Tracked> current_, next_;
  int lo_ = 0, hi_ = -1;
};

struct Window {
  int length;
  int anchor;
};

constexpr int kMaxWindow = 63;

void require_window(const Alphabet& alphabet, int length) {
  if (length > kMaxWindow || alphabet.word_count(length - 1) > vertex_budget())
    throw BudgetExceeded("window length " + std::to_string(length) + " needs " +
                         std::to_string(alphabet.word_count(length - 1)) + " vertices, above the budget of " +
                         std::to_string(vertex_budget()) +
                         " (FREQSPEC_MAX_VERTICES); window sizes grow doubly exponentially in the number of Nielsen moves");
}

// Smallest L >= min_length, then smallest anchor, such that every window of
// length L determines the anchor's block and |u|-1 letters of lookahead.
// lookahead < 0 means length weights (no lookahead).
Window certify_window(BlockEngine& engine, const Alphabet& alphabet, int min_length, int lookahead) {
  std::vector<Letter> letters;
  for (int length = std::max(1, min_length);; ++length) {
    require_window(alphabet, length);
    const WordIndex index(alphabet, length);
    std::uint64_t mask = length >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << length) - 1);
    for (std::uint64_t v = 0; v < index.size() && mask != 0; ++v) {
      index.decode(v, letters);
      if (!engine.run(letters)) {
        mask = 0;
        break;
      }
      std::uint64_t ok = 0;
      for (int a = engine.lo(); a <= engine.hi(); ++a) {
        const auto [b, e] = engine.block(a);
        if (lookahead <= 0 || b == e || e + static_cast<std::size_t>(lookahead) <= engine.image().size())
          ok |= std::uint64_t{1} << a;
      }
      mask &= ok;
    }
    if (mask != 0) {
      int anchor = 0;
      while ((mask & (std::uint64_t{1} << anchor)) == 0) ++anchor;
      return {length, anchor};
    }
  }
}

std::uint64_t count_in_block(const BlockEngine& engine, int anchor, const Word& u) {
  const auto [b, e] = engine.block(anchor);
  const auto& img = engine.image();
  std::uint64_t count = 0;
  for (std::size_t i = b; i < e; ++i) {
    bool match = true;
    for (std::size_t j = 0; j < u.size() && match; ++j) match = img[i + j].letter == u[j];
    count += match ? 1 : 0;
  }
  return count;
}

std::uint64_t window_index(const WordIndex& index, const CyclicWord& w, std::size_t start, std::vector<Letter>& buffer) {
  buffer.resize(static_cast<std::size_t>(index.length()));
  for (std::size_t j = 0; j < buffer.size(); ++j) buffer[j] = w[start + j];
  return index.index(buffer);
}

void require_target(const Word& u, const Alphabet& alphabet) {
  if (u.empty()) throw DomainError("transfer tables need a nonempty target");
  for (Letter x : u.letters())
    if (!alphabet.contains(x)) throw DomainError("target letter outside the alphabet");
}

}  // namespace

std::uint64_t TransferTable::coefficient(const Word& v) const {
  const WordIndex index(alphabet, window_length);
  const auto idx = index.index(v);
  const auto it = std::lower_bound(coefficients.begin(), coefficients.end(), std::make_pair(idx, std::uint64_t{0}));
  return it != coefficients.end() && it->first == idx ? it->second : 0;
}

std::map<Word, std::uint64_t> TransferTable::entries() const {
  const WordIndex index(alphabet, window_length);
  std::map<Word, std::uint64_t> out;
  for (const auto& [idx, c] : coefficients) out.emplace(index.word(idx), c);
  return out;
}

std::uint64_t TransferTable::predict(const CyclicWord& w) const {
  const WordIndex index(alphabet, window_length);
  std::vector<Letter> buffer;
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto idx = window_index(index, w, i, buffer);
    const auto it = std::lower_bound(coefficients.begin(), coefficients.end(), std::make_pair(idx, std::uint64_t{0}));
    if (it != coefficients.end() && it->first == idx) total += it->second;
  }
  return total;
}

std::int64_t LengthWeights::weight(const Word& v) const {
  return weights[WordIndex(alphabet, window_length).index(v)];
}

std::uint64_t LengthWeights::predict_length(const CyclicWord& w) const {
  const WordIndex index(alphabet, window_length);
  std::vector<Letter> buffer;
  std::int64_t total = 0;
  for (std::size_t i = 0; i < w.size(); ++i) total += weights[window_index(index, w, i, buffer)];
  return static_cast<std::uint64_t>(total);
}

Rational LengthWeights::evaluate(const FrequencyVector& q) const {
  if (q.level() < window_length)
    throw DomainError("length weights need a vector of level >= " + std::to_string(window_length));
  const FrequencyVector p = project_to_level(q, window_length);
  const WordIndex index(alphabet, window_length);
  Rational total = 0;
  for (const auto& [v, value] : p.entries()) total += Rational(weights[index.index(v)]) * value;
  return total;
}

TransferTable block_transfer(const NielsenWord& phi, const Word& u) {
  require_target(u, phi.alphabet());
  BlockEngine engine(phi);
  const int lookahead = static_cast<int>(u.size()) - 1;
  const Window window = certify_window(engine, phi.alphabet(), static_cast<int>(u.size()), lookahead);
  TransferTable table{phi.alphabet(), u, window.length, window.anchor, {}};
  const WordIndex index(phi.alphabet(), window.length);
  std::vector<Letter> letters;
  for (std::uint64_t v = 0; v < index.size(); ++v) {
    index.decode(v, letters);
    if (!engine.run(letters)) throw InvariantViolation("certified window failed on recomputation");
    const auto c = count_in_block(engine, window.anchor, u);
    if (c != 0) table.coefficients.emplace_back(v, c);
  }
  return table;
}

TransferTable pad_table(const TransferTable& table, int length) {
  if (length < table.window_length) throw DomainError("pad_table cannot shrink a window");
  TransferTable out = table;
  const auto branch = static_cast<std::uint64_t>(table.alphabet.size() - 1);
  while (out.window_length < length) {
    require_window(out.alphabet, out.window_length + 1);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> next;
    next.reserve(out.coefficients.size() * branch);
    for (const auto& [idx, c] : out.coefficients)
      for (std::uint64_t digit = 0; digit < branch; ++digit) next.emplace_back(idx * branch + digit, c);
    out.coefficients = std::move(next);
    ++out.window_length;
  }
  return out;
}

TransferTable transfer_table(const NielsenGen& tau, const Word& u, const Alphabet& alphabet) {
  const TransferTable certified = block_transfer(NielsenWord(alphabet, {tau}), u);
  const int nominal = 2 * static_cast<int>(u.size()) + 6;
  if (certified.window_length > nominal) throw InvariantViolation("certified window exceeds 2|u|+6");
  return pad_table(certified, nominal);
}

TransferTable compose_transfer(const NielsenWord& phi, const Word& u) {
  if (phi.length() <= 1) return block_transfer(phi, u);
  const NielsenWord head(phi.alphabet(), {phi.gens().front()});
  const NielsenWord tail(phi.alphabet(), std::vector<NielsenGen>(phi.gens().begin() + 1, phi.gens().end()));
  const TransferTable outer = block_transfer(head, u);
  const WordIndex outer_index(phi.alphabet(), outer.window_length);

  std::vector<std::pair<std::uint64_t, TransferTable>> inner;
  int length = 1;
  for (const auto& [z, c] : outer.coefficients) {
    inner.emplace_back(c, compose_transfer(tail, outer_index.word(z)));
    length = std::max(length, inner.back().second.window_length);
  }
  std::map<std::uint64_t, std::uint64_t> sum;
  for (const auto& [c, table] : inner)
    for (const auto& [v, cv] : pad_table(table, length).coefficients) sum[v] += c * cv;

  TransferTable out{phi.alphabet(), u, length, 0, {}};
  for (const auto& [v, c] : sum)
    if (c != 0) out.coefficients.emplace_back(v, c);
  return out;
}

std::uint64_t nominal_window(std::size_t t, std::size_t m) {
  if (t == 0) return m;
  std::uint64_t length = 2 * m + 6;
  for (std::size_t s = 1; s < t; ++s) length = 2 * length + 6;
  return length;
}

LengthWeights length_weights(const NielsenWord& phi) {
  BlockEngine engine(phi);
  const Window window = certify_window(engine, phi.alphabet(), 1, -1);
  LengthWeights out{phi.alphabet(), window.length, window.anchor, {}};
  const WordIndex index(phi.alphabet(), window.length);
  out.weights.resize(index.size());
  std::vector<Letter> letters;
  for (std::uint64_t v = 0; v < index.size(); ++v) {
    index.decode(v, letters);
    if (!engine.run(letters)) throw InvariantViolation("certified window failed on recomputation");
    const auto [b, e] = engine.block(window.anchor);
    out.weights[v] = static_cast<std::int64_t>(e - b);
  }
  return out;
}

LengthWeights pad_weights(const LengthWeights& weights, int length) {
  if (length < weights.window_length) throw DomainError("pad_weights cannot shrink a window");
  LengthWeights out = weights;
  while (out.window_length < length) {
    require_window(out.alphabet, out.window_length + 1);
    const WordIndex index(out.alphabet, out.window_length + 1);
    std::vector<std::int64_t> next(index.size());
    for (std::uint64_t v = 0; v < index.size(); ++v) next[v] = out.weights[index.prefix_index(v)];
    out.weights = std::move(next);
    ++out.window_length;
  }
  return out;
}

namespace {

struct ActionTables {
  std::vector<TransferTable> targets;
  LengthWeights lengths;
  int level;
};

ActionTables action_tables(const NielsenWord& phi, int m) {
  if (m < 1) throw DomainError("act_on_frequencies needs m >= 1");
  require_window(phi.alphabet(), m);
  ActionTables out{{}, length_weights(phi), 0};
  out.level = out.lengths.window_length;
  const WordIndex targets(phi.alphabet(), m);
  for (std::uint64_t i = 0; i < targets.size(); ++i) {
    out.targets.push_back(block_transfer(phi, targets.word(i)));
    out.level = std::max(out.level, out.targets.back().window_length);
  }
  return out;
}

}  // namespace

int required_level(const NielsenWord& phi, int m) { return action_tables(phi, m).level; }

FrequencyVector act_on_frequencies(const NielsenWord& phi, const FrequencyVector& q, int m) {
  const ActionTables tables = action_tables(phi, m);
  if (q.level() < tables.level)
    throw DomainError("act_on_frequencies needs a vector of level >= " + std::to_string(tables.level));
  const FrequencyVector p = project_to_level(q, tables.level);
  const LengthWeights d = pad_weights(tables.lengths, tables.level);
  const WordIndex index(phi.alphabet(), tables.level);

  std::vector<std::pair<std::uint64_t, Rational>> support;
  for (const auto& [v, value] : p.entries()) support.emplace_back(index.index(v), value);
  Rational denominator = 0;
  for (const auto& [v, value] : support) denominator += Rational(d.weights[v]) * value;
  if (denominator <= 0) throw InvariantViolation("length functional is not positive on a point of Q_L");

  FrequencyVector out(phi.alphabet(), m);
  for (const auto& table : tables.targets) {
    const TransferTable padded = pad_table(table, tables.level);
    Rational numerator = 0;
    for (const auto& [v, value] : support) {
      const auto it = std::lower_bound(padded.coefficients.begin(), padded.coefficients.end(),
                                       std::make_pair(v, std::uint64_t{0}));
      if (it != padded.coefficients.end() && it->first == v) numerator += Rational(Integer(it->second)) * value;
    }
    if (numerator != 0) out.set(table.target, numerator / denominator);
  }
  return out;
}

void write_transfer_table(std::ostream& out, const TransferTable& table) {
  out << "table length " << table.window_length << " rank " << table.alphabet.rank() << " target "
      << to_string(table.target) << " anchor " << table.anchor << '\n';
  for (const auto& [v, c] : table.entries()) out << to_string(v) << " = " << c << '\n';
}

}  // namespace freqspec
