#include "hyplevel/corpus.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "hyplevel/dsl.hpp"
#include "hyplevel/errors.hpp"

namespace hyplevel {

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double uniform01(std::mt19937& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

// Blaschke product of degree 1..3 with zeros of radius 0.15..0.85, emitted as
// DSL text so the generated entry round-trips through the parser like any
// hand-written one.
std::string random_blaschke_dsl(std::mt19937& rng) {
  int degree = 1 + static_cast<int>(uniform01(rng) * 3.0);
  std::string out = "blaschke([";
  for (int i = 0; i < degree; ++i) {
    double rho = 0.15 + 0.7 * uniform01(rng);
    double phi = 2.0 * kPi * uniform01(rng);
    if (i)
      out += ',';
    out += '(';
    out += format_double(rho * std::cos(phi));
    out += ',';
    out += format_double(rho * std::sin(phi));
    out += ",1)";
  }
  double sp = 2.0 * kPi * uniform01(rng);
  out += "];";
  out += format_double(std::cos(sp));
  out += ',';
  out += format_double(std::sin(sp));
  out += ')';
  return out;
}

// Expansion of the random-blaschke directive: entry k is a Jordan r-problem
// when k % 4 == 0 and a scaled-map level problem at lambda 1.1 / 1.5 / 3
// otherwise. Scaling keeps |F| <= 0.95, so the level entries stay closed.
std::vector<CorpusEntry> expand_random_blaschke(int count, unsigned seed) {
  static const double kLevels[] = {1.1, 1.5, 3.0};
  std::mt19937 rng(seed);
  std::vector<CorpusEntry> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    std::string dsl = random_blaschke_dsl(rng);
    double rs = 0.2 + 0.75 * uniform01(rng);
    CorpusEntry e;
    if (k % 4 == 0) {
      e.r = rs;
      e.dsl = std::move(dsl);
    } else {
      e.lambda = kLevels[k % 4 - 1];
      e.dsl = "smul(" + format_double(rs) + ",0," + dsl + ")";
    }
    out.push_back(std::move(e));
  }
  return out;
}

constexpr std::string_view kDefaultCorpus =
    R"corpus(# Verification corpus: one subject per line, either "r <scale> <map>" for a
# Jordan problem or "lambda <level> <map>". Mixed closed curves and open
# arcs; every registered bound must hold on every entry.

# Unimodular constants: the level curve is the circle r*T
r 0.3 const(1,0)
r 0.5 const(0.6,0.8)
r 0.7 const(0,1)

# Disc automorphisms at lambda 1: geodesic arcs
lambda 1 phi(0.5,0)
lambda 1 phi(0.3,0.4)
lambda 1 smul(0.6,0.8,phi(0.4,0))

# Disc automorphisms at lambda > 1: circular arcs
lambda 1.1 phi(0.5,0)
lambda 1.2 phi(0.5,0)
lambda 1.5 phi(-0.2,0.6)
lambda 3 phi(0.8,0)
lambda 1.2 compose(rot(0.83),phi(0.5,0))

# Scaled Blaschke products: closed Jordan curves at every level
lambda 1.5 smul(0.9,0,blaschke([(0.3,0.2,1),(-0.25,0.35,1)];1,0))
lambda 3 smul(0.9,0,blaschke([(0.5,0,2)];0,1))

# Unscaled Blaschke products: arcs reaching the unit circle
lambda 1 blaschke([(0.3,0.2,1),(-0.25,0.35,1)];1,0)
lambda 1 blaschke([(0.4,0,1),(0,0.5,1),(-0.3,-0.2,1)];1,0)
lambda 1.5 blaschke([(0.3,0.2,1),(-0.25,0.35,1)];1,0)
lambda 1.1 blaschke([(0.5,0,2)];1,0)

# Slit-map compositions
r 0.6 compose(falpha(0.5),kalpha(0.7))
lambda 1 compose(falpha(0.9238795325112867),kalpha(0.3))
lambda 1.5 kalpha(0.6)
r 0.45 compose(kalpha(0.8),falpha(0.25))

# Jordan problems
r 0.5 falpha(0.25)
r 0.7071067811865476 falpha(0.9238795325112867)
r 0.9 falpha(0.6)
r 0.8 phi(0.5,0)
r 0.85 blaschke([(0.3,0.2,1),(-0.25,0.35,1)];1,0)

# Random Blaschke subjects (a pure function of the seed)
random-blaschke 24 9001
)corpus";

// Double parser that rejects trailing garbage inside the token.
double parse_number(const std::string& token, std::size_t line_offset) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    throw ParseError("corpus: expected a number, got '" + token + "'", line_offset);
  }
  if (used != token.size())
    throw ParseError("corpus: trailing characters in number '" + token + "'", line_offset);
  return v;
}

}  // namespace

LevelProblem CorpusEntry::problem() const {
  HoloMap f = parse_map(dsl);
  if (r)
    return LevelProblem::jordan(f, *r);
  return LevelProblem::with_lambda(f, lambda);
}

std::vector<CorpusEntry> parse_corpus(std::string_view text) {
  std::vector<CorpusEntry> entries;
  std::vector<std::size_t> dsl_offsets;  // per entry, for error reporting
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos)
      eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    std::size_t line_offset = pos;
    pos = eol + 1;

    if (std::size_t hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);

    std::istringstream words{std::string(line)};
    std::string directive;
    if (!(words >> directive))
      continue;

    if (directive == "lambda" || directive == "r") {
      std::string value;
      if (!(words >> value))
        throw ParseError("corpus: missing value after '" + directive + "'", line_offset);
      std::string rest;
      std::getline(words, rest);
      std::size_t start = rest.find_first_not_of(" \t");
      if (start == std::string::npos)
        throw ParseError("corpus: missing map expression", line_offset);
      CorpusEntry e;
      e.dsl = rest.substr(start);
      double v = parse_number(value, line_offset);
      if (directive == "r")
        e.r = v;
      else
        e.lambda = v;
      std::size_t dsl_in_line = line.find(e.dsl);
      dsl_offsets.push_back(line_offset +
                            (dsl_in_line == std::string_view::npos ? 0 : dsl_in_line));
      entries.push_back(std::move(e));
    } else if (directive == "random-blaschke") {
      long count = 0;
      unsigned long seed = 0;
      if (!(words >> count >> seed) || count < 0)
        throw ParseError("corpus: random-blaschke needs <count> <seed>", line_offset);
      std::string extra;
      if (words >> extra)
        throw ParseError("corpus: unexpected '" + extra + "' after seed", line_offset);
      auto expanded =
          expand_random_blaschke(static_cast<int>(count), static_cast<unsigned>(seed));
      for (auto& e : expanded) {
        dsl_offsets.push_back(line_offset);
        entries.push_back(std::move(e));
      }
    } else {
      throw ParseError("corpus: unknown directive '" + directive + "'", line_offset);
    }
  }

  for (std::size_t i = 0; i < entries.size(); ++i) {
    entries[i].name = "entry-" + std::to_string(i + 1);
    // Lint every entry up front: a committed corpus must fail at load time,
    // not in the middle of a verification run.
    try {
      entries[i].problem();
    } catch (const ParseError& pe) {
      throw ParseError("corpus: invalid map expression in " + entries[i].name,
                       dsl_offsets[i] + pe.offset);
    } catch (const Error& err) {
      throw ParseError("corpus: " + entries[i].name + ": " + err.what(), dsl_offsets[i]);
    }
  }
  return entries;
}

std::vector<CorpusEntry> load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw Error("corpus: cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_corpus(buffer.str());
}

std::vector<CorpusEntry> default_corpus() { return parse_corpus(kDefaultCorpus); }

std::string_view default_corpus_text() { return kDefaultCorpus; }

std::vector<CorpusEntry> random_jordan_corpus(int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<CorpusEntry> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    CorpusEntry e;
    e.name = "jordan-" + std::to_string(k + 1);
    e.dsl = random_blaschke_dsl(rng);
    e.r = 0.2 + 0.75 * uniform01(rng);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace hyplevel
