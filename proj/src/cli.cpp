#include "freqspec/cli.hpp"

#include "freqspec/automorphism.hpp"
#include "freqspec/errors.hpp"
#include "freqspec/frequency_vector.hpp"
#include "freqspec/optimize.hpp"
#include "freqspec/oracle.hpp"
#include "freqspec/polytope.hpp"
#include "freqspec/words.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace freqspec::cli {

void Report::add(std::string key, std::string value) { fields.emplace_back(std::move(key), std::move(value)); }
void Report::add(std::string key, const Rational& value) { add(std::move(key), to_string(value)); }

bool Report::contains(std::string_view key) const {
  return std::any_of(fields.begin(), fields.end(), [&](const auto& f) { return f.first == key; });
}

const std::string& Report::at(std::string_view key) const {
  for (const auto& [k, v] : fields)
    if (k == key) return v;
  throw ParseError("report has no key '" + std::string(key) + "'");
}

Rational Report::rational(std::string_view key) const { return parse_rational(at(key)); }

void write_structured(std::ostream& out, const Report& report) {
  out << '[' << report.kind << "]\n";
  for (const auto& [k, v] : report.fields) out << k << " = " << v << '\n';
  out << '\n';
}

std::vector<Report> parse_structured(std::istream& in) {
  std::vector<Report> reports;
  bool inside = false;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.size() >= 2 && line.front() == '[' && line.back() == ']') {
      reports.push_back({line.substr(1, line.size() - 2), {}});
      inside = true;
      continue;
    }
    if (!inside) continue;
    if (line.empty()) {
      inside = false;
      continue;
    }
    const auto eq = line.find(" = ");
    if (eq == std::string::npos) throw ParseError("malformed report line '" + line + "'");
    reports.back().add(line.substr(0, eq), line.substr(eq + 3));
  }
  return reports;
}

std::vector<Report> parse_structured(const std::string& text) {
  std::istringstream in(text);
  return parse_structured(in);
}

namespace {

enum class Format { Text, Structured };

struct Common {
  int rank = 2;
  std::string automorphism;
  std::string output;
  std::string format = "text";
};

void add_common(CLI::App* app, Common& common, bool needs_automorphism) {
  app->add_option("--rank,-k", common.rank, "number of free generators")->check(CLI::Range(2, 26));
  if (needs_automorphism)
    app->add_option("--auto,-a", common.automorphism, "Nielsen word, e.g. \"mul:1:2 inv:2\"")->required();
  app->add_option("--output,-o", common.output, "write the report to a file");
  app->add_option("--format", common.format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
}

std::string cyclic(const CyclicWord& w) { return "(" + to_string(w) + ")"; }

class Sink {
 public:
  Sink(const Common& common, std::ostream& fallback) : format_(common.format == "structured" ? Format::Structured : Format::Text) {
    if (!common.output.empty()) {
      file_.open(common.output);
      if (!file_) throw DomainError("cannot open '" + common.output + "' for writing");
    }
    out_ = common.output.empty() ? &fallback : &file_;
  }
  bool text() const { return format_ == Format::Text; }
  std::ostream& out() { return *out_; }

 private:
  Format format_;
  std::ofstream file_;
  std::ostream* out_;
};

// Two-column aligned table.
void table(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& rows) {
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.first.size());
  for (const auto& [k, v] : rows) out << std::left << std::setw(static_cast<int>(width) + 2) << k << v << '\n';
}

std::string read_input(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void vector_rows(const FrequencyVector& q, std::vector<std::pair<std::string, std::string>>& rows, Report& report,
                 const std::string& prefix) {
  for (const auto& [v, value] : q.entries()) {
    rows.emplace_back("  " + to_string(v), to_string(value));
    report.add(prefix + to_string(v), value);
  }
}

// ---- analyze ---------------------------------------------------------------

struct AnalyzeArgs {
  Common common;
  std::string word;
  int level = 1;
};

void analyze(const AnalyzeArgs& args, std::ostream& fallback) {
  const Alphabet alphabet(args.common.rank);
  if (args.level < 1) throw DomainError("--level must be positive");
  const Word raw = parse_word(args.word, alphabet);
  const CyclicWord w = conjugacy_class(raw);
  const Root root = deepest_root(w);

  Report report{"analyze", {}};
  report.add("rank", std::to_string(alphabet.rank()));
  report.add("word", to_string(w));
  report.add("length", std::to_string(w.size()));
  report.add("root", to_string(root.root));
  report.add("exponent", std::to_string(root.exponent));
  std::vector<std::pair<std::string, std::string>> rows{{"cyclic word", cyclic(w)},
                                                        {"length", std::to_string(w.size())},
                                                        {"root", cyclic(root.root) + "^" + std::to_string(root.exponent)}};
  for (int m = 1; m <= args.level; ++m) {
    const FrequencyVector q = frequency_vector(w, m, alphabet);
    rows.emplace_back("level " + std::to_string(m), std::to_string(q.support_size()) + " nonzero entries");
    vector_rows(q, rows, report, "freq." + std::to_string(m) + ".");
  }

  Sink sink(args.common, fallback);
  if (sink.text()) {
    table(sink.out(), rows);
    sink.out() << '\n';
  }
  write_structured(sink.out(), report);
}

// ---- realize ---------------------------------------------------------------

struct RealizeArgs {
  Common common;
  std::string input = "-";
};

void realize_command(const RealizeArgs& args, std::ostream& fallback) {
  const FrequencyVector q = parse_frequency_vector(read_input(args.input));
  Report report{"realize", {}};
  report.add("rank", std::to_string(q.alphabet().rank()));
  report.add("level", std::to_string(q.level()));
  const bool member = check_membership(q);
  const bool realizable = member && is_realizable(q);
  report.add("in_polytope", member ? "true" : "false");
  report.add("realizable", realizable ? "true" : "false");
  std::vector<std::pair<std::string, std::string>> rows{{"level", std::to_string(q.level())},
                                                        {"in polytope", member ? "yes" : "no"},
                                                        {"realizable", realizable ? "yes" : "no"}};
  if (realizable) {
    const RealizationWitness witness = realize(q);
    const bool exact = frequency_vector(witness.word, q.level(), q.alphabet()) == q;
    if (!exact) throw InvariantViolation("realization does not reproduce the input vector");
    report.add("word", to_string(witness.word));
    report.add("length", std::to_string(witness.word.size()));
    report.add("scale", witness.scale.str());
    rows.emplace_back("word", cyclic(witness.word));
    rows.emplace_back("length", std::to_string(witness.word.size()));
    rows.emplace_back("scale", witness.scale.str());
  }
  Sink sink(args.common, fallback);
  if (sink.text()) {
    table(sink.out(), rows);
    sink.out() << '\n';
  }
  write_structured(sink.out(), report);
}

// ---- act -------------------------------------------------------------------

struct ActArgs {
  Common common;
  std::string input;
  std::string word;
  std::string target;
  int level = 1;
};

void act(const ActArgs& args, std::ostream& fallback) {
  const Alphabet alphabet(args.common.rank);
  const NielsenWord phi = parse_nielsen_word(args.common.automorphism, alphabet);
  Sink sink(args.common, fallback);

  if (!args.target.empty()) {
    const TransferTable t = block_transfer(phi, parse_word(args.target, alphabet));
    write_transfer_table(sink.out(), t);
    return;
  }
  if (args.input.empty() == args.word.empty()) throw DomainError("act needs exactly one of --input, --word or --table");
  if (args.level < 1) throw DomainError("--level must be positive");

  const int needed = required_level(phi, args.level);
  std::optional<CyclicWord> w;
  std::optional<FrequencyVector> q;
  if (!args.word.empty()) {
    w = conjugacy_class(parse_word(args.word, alphabet));
    q = frequency_vector(*w, needed, alphabet);
  } else {
    q = parse_frequency_vector(read_input(args.input));
    if (q->alphabet() != alphabet) throw DomainError("vector rank does not match --rank");
  }
  const FrequencyVector image = act_on_frequencies(phi, *q, args.level);

  Report report{"act", {}};
  report.add("rank", std::to_string(alphabet.rank()));
  report.add("automorphism", to_string(phi));
  report.add("input_level", std::to_string(needed));
  report.add("level", std::to_string(args.level));
  std::vector<std::pair<std::string, std::string>> rows{{"automorphism", to_string(phi)},
                                                        {"input level", std::to_string(needed)}};
  if (w) {
    const CyclicWord img = apply_cyclic(phi, *w);
    const bool agrees = frequency_vector(img, args.level, alphabet) == image;
    if (!agrees) throw InvariantViolation("act disagrees with the image word");
    report.add("image_word", to_string(img));
    rows.emplace_back("image word", cyclic(img));
  }
  rows.emplace_back("image, level " + std::to_string(args.level), "");
  vector_rows(image, rows, report, "freq.");
  if (sink.text()) {
    table(sink.out(), rows);
    sink.out() << '\n';
  }
  write_structured(sink.out(), report);
}

// ---- spectrum --------------------------------------------------------------

struct SpectrumArgs {
  Common common;
  int max_window = 0;
  bool witness = false;
  bool no_lambda0 = false;
  std::string tolerance = "1/1000";
};

void spectrum_command(const SpectrumArgs& args, std::ostream& fallback) {
  const Alphabet alphabet(args.common.rank);
  const NielsenWord phi = parse_nielsen_word(args.common.automorphism, alphabet);
  const Rational tolerance = parse_rational(args.tolerance);
  if (tolerance <= 0) throw DomainError("--tolerance must be positive");
  if (args.max_window > 0) {
    const int l = std::max(length_weights(phi).window_length, length_weights(phi.inverse()).window_length);
    if (l > args.max_window)
      throw BudgetExceeded("window length " + std::to_string(l) + " exceeds --max-window " + std::to_string(args.max_window));
  }
  const SpectrumReport s = spectrum(phi, {tolerance, !args.no_lambda0});

  Report report{"spectrum", {}};
  report.add("rank", std::to_string(s.rank));
  report.add("automorphism", s.automorphism);
  report.add("window_length", std::to_string(s.plus.window_length));
  report.add("inverse_window_length", std::to_string(s.inverse_window_length));
  report.add("nu_minus", s.minus.value);
  report.add("nu_plus", s.plus.value);
  if (args.witness) {
    report.add("witness_minus", to_string(s.minus.witness));
    report.add("witness_minus_ratio", distortion(phi, s.minus.witness));
    report.add("witness_plus", to_string(s.plus.witness));
    report.add("witness_plus_ratio", distortion(phi, s.plus.witness));
  }
  std::vector<std::pair<std::string, std::string>> rows{
      {"automorphism", s.automorphism + "  (rank " + std::to_string(s.rank) + ")"},
      {"window", std::to_string(s.plus.window_length) + " (inverse " + std::to_string(s.inverse_window_length) + ")"},
      {"nu-", to_string(s.minus.value) + (args.witness ? "  at " + cyclic(s.minus.witness) : "")},
      {"nu+", to_string(s.plus.value) + (args.witness ? "  at " + cyclic(s.plus.witness) : "")}};
  if (s.lambda0) {
    const Lambda0Result& l = *s.lambda0;
    report.add("lambda0", l.value);
    report.add("lambda0_theta", l.theta);
    report.add("lambda0_attained", l.attained ? "true" : "false");
    if (args.witness) {
      report.add("lambda0_witness", to_string(l.witness));
      report.add("lambda0_gap", l.gap);
    }
    report.add("strictly_hyperbolic", s.strictly_hyperbolic ? "true" : "false");
    rows.emplace_back("lambda0", to_string(l.value) + (l.attained ? "  (attained)" : "  (infimum)"));
    if (args.witness) rows.emplace_back("lambda0 witness", cyclic(l.witness) + "  gap " + to_string(l.gap));
    rows.emplace_back("strictly hyperbolic", s.strictly_hyperbolic ? "yes" : "no");
  }
  std::ostringstream seconds;
  seconds << std::fixed << std::setprecision(3) << s.seconds;
  rows.emplace_back("time", seconds.str() + " s");

  Sink sink(args.common, fallback);
  if (sink.text()) {
    table(sink.out(), rows);
    sink.out() << '\n';
  }
  write_structured(sink.out(), report);
}

// ---- hyperbolic ------------------------------------------------------------

struct HyperbolicArgs {
  Common common;
  int power_budget = 4;
};

// Returns true when the budget ran out.
bool hyperbolic_command(const HyperbolicArgs& args, std::ostream& fallback) {
  const Alphabet alphabet(args.common.rank);
  const NielsenWord phi = parse_nielsen_word(args.common.automorphism, alphabet);
  const HyperbolicVerdict v = decide_hyperbolic(phi, args.power_budget);

  Report report{"hyperbolic", {}};
  report.add("rank", std::to_string(alphabet.rank()));
  report.add("automorphism", to_string(phi));
  std::string verdict;
  switch (v.kind) {
    case HyperbolicVerdict::Kind::Hyperbolic:
      report.add("verdict", "hyperbolic");
      verdict = "strictly hyperbolic power phi^" + std::to_string(v.power);
      break;
    case HyperbolicVerdict::Kind::PeriodicClass:
      report.add("verdict", "periodic_class");
      report.add("periodic_word", to_string(*v.periodic));
      verdict = "phi^" + std::to_string(v.power) + " fixes " + cyclic(*v.periodic);
      break;
    case HyperbolicVerdict::Kind::BudgetExhausted:
      report.add("verdict", "budget_exhausted");
      verdict = "undecided within " + std::to_string(args.power_budget) + " powers";
      break;
  }
  report.add("power", std::to_string(v.power));
  report.add("last_hyperbolicity_check", std::to_string(v.last_hyperbolicity_check));

  Sink sink(args.common, fallback);
  if (sink.text()) {
    table(sink.out(), {{"automorphism", to_string(phi)}, {"verdict", verdict}});
    sink.out() << '\n';
  }
  write_structured(sink.out(), report);
  return v.kind == HyperbolicVerdict::Kind::BudgetExhausted;
}

// ---- oracle ----------------------------------------------------------------

struct OracleArgs {
  Common common;
  int max_length = 8;
  int level = 1;
};

void oracle_ratios(const OracleArgs& args, std::ostream& fallback) {
  const auto r = oracle::brute_ratio_extremes(args.common.automorphism, args.common.rank,
                                              static_cast<std::size_t>(args.max_length));
  Report report{"oracle.ratios", {}};
  report.add("rank", std::to_string(args.common.rank));
  report.add("automorphism", args.common.automorphism);
  report.add("max_length", std::to_string(args.max_length));
  report.add("words", std::to_string(r.words));
  report.add("min_ratio", r.min_ratio);
  report.add("argmin", to_string(r.argmins.front()));
  report.add("max_ratio", r.max_ratio);
  report.add("argmax", to_string(r.argmaxes.front()));
  Sink sink(args.common, fallback);
  if (sink.text()) {
    table(sink.out(), {{"cyclic words", std::to_string(r.words)},
                       {"min ratio", to_string(r.min_ratio) + "  at " + cyclic(r.argmins.front())},
                       {"max ratio", to_string(r.max_ratio) + "  at " + cyclic(r.argmaxes.front())}});
    sink.out() << '\n';
  }
  write_structured(sink.out(), report);
}

void oracle_lambda(const OracleArgs& args, std::ostream& fallback) {
  const auto r = oracle::brute_lambda_upper_bound(args.common.automorphism, args.common.rank,
                                                  static_cast<std::size_t>(args.max_length));
  Report report{"oracle.lambda", {}};
  report.add("rank", std::to_string(args.common.rank));
  report.add("automorphism", args.common.automorphism);
  report.add("max_length", std::to_string(args.max_length));
  report.add("upper_bound", r.value);
  report.add("argmin", to_string(r.argmins.front()));
  Sink sink(args.common, fallback);
  if (sink.text()) {
    table(sink.out(), {{"lambda0 <=", to_string(r.value) + "  at " + cyclic(r.argmins.front())}});
    sink.out() << '\n';
  }
  write_structured(sink.out(), report);
}

void oracle_count(const OracleArgs& args, std::ostream& fallback) {
  Report report{"oracle.count", {}};
  report.add("rank", std::to_string(args.common.rank));
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(args.max_length) + 1, 0);
  oracle::enumerate_cyclic_words(args.common.rank, static_cast<std::size_t>(args.max_length),
                                 [&](const CyclicWord& w) { ++counts[w.size()]; });
  std::vector<std::pair<std::string, std::string>> rows;
  for (int n = 1; n <= args.max_length; ++n) {
    report.add("count." + std::to_string(n), std::to_string(counts[static_cast<std::size_t>(n)]));
    rows.emplace_back("length " + std::to_string(n), std::to_string(counts[static_cast<std::size_t>(n)]));
  }
  Sink sink(args.common, fallback);
  if (sink.text()) {
    table(sink.out(), rows);
    sink.out() << '\n';
  }
  write_structured(sink.out(), report);
}

void oracle_vertices(const OracleArgs& args, std::ostream& fallback) {
  const auto vertices = oracle::enumerate_vertices_generic(args.common.rank, args.level);
  Report report{"oracle.vertices", {}};
  report.add("rank", std::to_string(args.common.rank));
  report.add("level", std::to_string(args.level));
  report.add("vertices", std::to_string(vertices.size()));
  report.add("dimension", std::to_string(affine_dimension(vertices)));
  Sink sink(args.common, fallback);
  if (sink.text()) {
    for (const auto& q : vertices) {
      std::string line;
      for (const auto& [v, value] : q.entries()) line += to_string(v) + "=" + to_string(value) + " ";
      sink.out() << line << '\n';
    }
    sink.out() << '\n';
  }
  write_structured(sink.out(), report);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Frequency vectors, realization and distortion spectra of free-group automorphisms", "freqspec"};
  app.require_subcommand(1);

  AnalyzeArgs analyze_args;
  auto* analyze_cmd = app.add_subcommand("analyze", "frequency vectors of a cyclic word");
  add_common(analyze_cmd, analyze_args.common, false);
  analyze_cmd->add_option("--word,-w", analyze_args.word, "word literal, e.g. abaab")->required();
  analyze_cmd->add_option("--level,-m", analyze_args.level, "highest level");

  RealizeArgs realize_args;
  auto* realize_cmd = app.add_subcommand("realize", "cyclic word with a given frequency vector");
  add_common(realize_cmd, realize_args.common, false);
  realize_cmd->add_option("input", realize_args.input, "frequency vector file, - for stdin");

  ActArgs act_args;
  auto* act_cmd = app.add_subcommand("act", "image of a frequency vector under an automorphism");
  add_common(act_cmd, act_args.common, true);
  act_cmd->add_option("--input,-i", act_args.input, "frequency vector file, - for stdin");
  act_cmd->add_option("--word,-w", act_args.word, "use the frequency vector of this word");
  act_cmd->add_option("--level,-m", act_args.level, "level of the image");
  act_cmd->add_option("--table", act_args.target, "print the transfer table of this target word instead");

  SpectrumArgs spectrum_args;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "nu-, nu+, lambda0 and witnesses");
  add_common(spectrum_cmd, spectrum_args.common, true);
  spectrum_cmd->add_option("--max-window", spectrum_args.max_window, "refuse windows longer than N");
  spectrum_cmd->add_flag("--witness", spectrum_args.witness, "print witness words");
  spectrum_cmd->add_flag("--no-lambda0", spectrum_args.no_lambda0, "skip lambda0");
  spectrum_cmd->add_option("--tolerance", spectrum_args.tolerance, "lambda0 witness gap, p/q");

  HyperbolicArgs hyperbolic_args;
  auto* hyperbolic_cmd = app.add_subcommand("hyperbolic", "strict hyperbolicity semi-decision");
  add_common(hyperbolic_cmd, hyperbolic_args.common, true);
  hyperbolic_cmd->add_option("--power-budget", hyperbolic_args.power_budget, "largest power tried")->check(CLI::PositiveNumber);

  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force reference computations");
  oracle_cmd->require_subcommand(1);
  OracleArgs ratios_args, lambda_args, count_args, vertices_args;
  auto* ratios_cmd = oracle_cmd->add_subcommand("ratios", "extremes of |phi(w)|/|w| over short cyclic words");
  add_common(ratios_cmd, ratios_args.common, true);
  ratios_cmd->add_option("--max-len,-l", ratios_args.max_length, "longest word")->check(CLI::Range(1, 16));
  auto* lambda_cmd = oracle_cmd->add_subcommand("lambda", "upper bound on lambda0 over short cyclic words");
  add_common(lambda_cmd, lambda_args.common, true);
  lambda_cmd->add_option("--max-len,-l", lambda_args.max_length, "longest word")->check(CLI::Range(1, 16));
  auto* count_cmd = oracle_cmd->add_subcommand("count", "number of cyclic words by length");
  add_common(count_cmd, count_args.common, false);
  count_cmd->add_option("--max-len,-l", count_args.max_length, "longest word")->check(CLI::Range(1, 16));
  auto* vertices_cmd = oracle_cmd->add_subcommand("vertices", "vertices of Q_m by basis enumeration");
  add_common(vertices_cmd, vertices_args.common, false);
  vertices_cmd->add_option("--level,-m", vertices_args.level, "level")->check(CLI::Range(1, 3));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kParseError;
  }

  try {
    if (*analyze_cmd) analyze(analyze_args, out);
    if (*realize_cmd) realize_command(realize_args, out);
    if (*act_cmd) act(act_args, out);
    if (*spectrum_cmd) spectrum_command(spectrum_args, out);
    if (*hyperbolic_cmd && hyperbolic_command(hyperbolic_args, out)) return kBudgetExceeded;
    if (*ratios_cmd) oracle_ratios(ratios_args, out);
    if (*lambda_cmd) oracle_lambda(lambda_args, out);
    if (*count_cmd) oracle_count(count_args, out);
    if (*vertices_cmd) oracle_vertices(vertices_args, out);
  } catch (const ParseError& e) {
    err << "freqspec: parse error: " << e.what() << '\n';
    return kParseError;
  } catch (const DomainError& e) {
    err << "freqspec: invalid input: " << e.what() << '\n';
    return kParseError;
  } catch (const BudgetExceeded& e) {
    err << "freqspec: budget exceeded: " << e.what() << '\n';
    return kBudgetExceeded;
  } catch (const std::exception& e) {
    err << "freqspec: internal error: " << e.what() << '\n';
    return kInvariantViolation;
  }
  return kSuccess;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace freqspec::cli
