#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hyplevel/levelset.hpp"

namespace hyplevel {

/// One verification subject: a map expression plus either a Jordan scale r
/// (r-problem, effective map r*f) or a level lambda.
struct CorpusEntry {
  std::string name;  // "entry-NN", NN = 1-based position in the corpus
  std::string dsl;
  std::optional<double> r;
  double lambda = 1.0;

  LevelProblem problem() const;
};

/// Parse corpus text. One entry per line:
///   lambda <value> <map-expression>
///   r <value> <map-expression>
///   random-blaschke <count> <seed>
/// '#' starts a comment; blank lines are skipped. random-blaschke expands in
/// place to <count> entries: Blaschke products of degree 1..3 with zeros of
/// radius 0.15..0.85, cycling through a Jordan r-problem with r in
/// (0.2, 0.95) and scaled-map level problems at lambda 1.1, 1.5, 3. The
/// expansion is a pure function of <seed>, so a committed corpus file pins
/// its random entries exactly.
std::vector<CorpusEntry> parse_corpus(std::string_view text);

std::vector<CorpusEntry> load_corpus(const std::filesystem::path& path);

/// The built-in 50-entry corpus: unimodular constants, rotated disc
/// automorphisms at several levels, scaled and unscaled Blaschke products
/// (closed curves and arcs reaching the unit circle), slit-map compositions,
/// and seeded random Blaschke entries.
std::vector<CorpusEntry> default_corpus();

/// Text form of default_corpus(); data/corpus.txt holds these exact bytes.
std::string_view default_corpus_text();

/// Seeded random Jordan r-problems on Blaschke products of degree <= 3:
/// closed level curves only, for quadrature subjects.
std::vector<CorpusEntry> random_jordan_corpus(int count, unsigned seed);

}  // namespace hyplevel
