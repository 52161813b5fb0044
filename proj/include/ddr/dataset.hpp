#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ddr/extract.hpp"
#include "ddr/index.hpp"

namespace ddr {

struct CorpusSample {
  std::string id;
  std::string informal_statement;
  std::string formal_statement;
  int difficulty = 0;  // 0..10 as rated in the corpus

  bool operator==(const CorpusSample&) const = default;
};

struct LabeledSample {
  std::string id;
  std::string informal_statement;
  std::string formal_statement;
  int difficulty = 0;  // normalized to 0..9 (10 folds into 9)
  std::vector<std::string> dependencies;

  bool operator==(const LabeledSample&) const = default;
};

struct CorpusReadResult {
  std::vector<CorpusSample> samples;
  std::vector<std::string> errors;  // "line N: reason" per malformed line
};

// JSONL corpus: {id, informal_statement, formal_statement, difficulty} per
// line. Malformed lines are collected with line numbers; under strict they
// throw Error(MalformedLine) instead.
CorpusReadResult read_corpus(std::istream& in, bool strict = false);

LabeledSample label_sample(const DependencyIndex& index, const KeywordList& keywords,
                           const CorpusSample& sample);

struct RunReport {
  std::uint64_t processed = 0;
  std::uint64_t errored = 0;
  double wall_seconds = 0;
  double samples_per_second = 0;
};

struct BuildDatasetOptions {
  unsigned jobs = 1;         // order-preserving parallel labeling
  bool keep_formal = false;  // retain formal_statement in the output rows
  bool strict = false;
};

// Labels every valid corpus line and writes one JSONL row per sample, input
// order preserved: {id, informal_statement, dependencies, difficulty}.
RunReport build_dataset(const DependencyIndex& index, const KeywordList& keywords,
                        std::istream& corpus, std::ostream& out,
                        const BuildDatasetOptions& options = {});

// Reads labeled JSONL rows back (dependencies required, formal optional).
std::vector<LabeledSample> read_labeled(std::istream& in);

std::string labeled_to_jsonl_line(const LabeledSample& s, bool keep_formal);

struct LevelStats {
  std::uint64_t num = 0;
  double depend_rate = 0;
  double depend_length = 0;
  bool empty = true;
};

struct DatasetStats {
  std::array<LevelStats, 10> levels;
};

DatasetStats compute_stats(const std::vector<LabeledSample>& samples);

struct SplitResult {
  std::vector<LabeledSample> train;
  std::array<std::vector<LabeledSample>, 5> tests;  // Diff01, Diff23, Diff45, Diff67, Diff89
  std::vector<std::string> warnings;                // levels short of 100 samples
};

extern const char* const kTestSetNames[5];

// Draws up to 100 samples per normalized difficulty level into the five test
// sets (adjacent levels pair up); everything else is train. Deterministic
// under seed: level L is sampled with splitmix64 seeded with seed + L via a
// partial Fisher-Yates pass, and selected samples keep corpus order.
SplitResult split_corpus(const std::vector<LabeledSample>& samples, std::uint64_t seed);

}  // namespace ddr
