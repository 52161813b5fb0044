#include "ddr/dataset.hpp"

#include <algorithm>
#include <chrono>
#include <istream>
#include <json.hpp>
#include <ostream>
#include <thread>

#include "ddr/errors.hpp"
#include "ddr/rng.hpp"
#include "ddr/text.hpp"

namespace ddr {

using nlohmann::json;

namespace {

std::string require_string(const json& obj, const char* key, std::size_t line_no) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string())
    raise(ErrorCode::MalformedLine,
          "line " + std::to_string(line_no) + ": missing string field '" + key + "'");
  return it->get<std::string>();
}

CorpusSample parse_sample(const std::string& line, std::size_t line_no) {
  json obj = json::parse(line, nullptr, false);
  if (obj.is_discarded() || !obj.is_object())
    raise(ErrorCode::MalformedLine, "line " + std::to_string(line_no) + ": not a JSON object");
  CorpusSample s;
  s.id = require_string(obj, "id", line_no);
  s.informal_statement = require_string(obj, "informal_statement", line_no);
  s.formal_statement = require_string(obj, "formal_statement", line_no);
  if (s.informal_statement.empty() || s.formal_statement.empty())
    raise(ErrorCode::MalformedLine, "line " + std::to_string(line_no) + ": empty statement");
  auto d = obj.find("difficulty");
  if (d == obj.end() || !d->is_number_integer())
    raise(ErrorCode::MalformedLine,
          "line " + std::to_string(line_no) + ": missing integer field 'difficulty'");
  s.difficulty = d->get<int>();
  if (s.difficulty < 0 || s.difficulty > 10)
    raise(ErrorCode::MalformedLine,
          "line " + std::to_string(line_no) + ": difficulty out of range 0..10");
  return s;
}

}  // namespace

CorpusReadResult read_corpus(std::istream& in, bool strict) {
  CorpusReadResult out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    try {
      out.samples.push_back(parse_sample(line, line_no));
    } catch (const Error& e) {
      if (strict) throw;
      out.errors.push_back(e.what());
    }
  }
  return out;
}

LabeledSample label_sample(const DependencyIndex& index, const KeywordList& keywords,
                           const CorpusSample& sample) {
  LabeledSample out;
  out.id = sample.id;
  out.informal_statement = sample.informal_statement;
  out.formal_statement = sample.formal_statement;
  out.difficulty = std::min(sample.difficulty, 9);
  out.dependencies =
      resolve_dependencies(index, extract_candidates(sample.formal_statement, keywords))
          .dependencies;
  return out;
}

std::string labeled_to_jsonl_line(const LabeledSample& s, bool keep_formal) {
  json obj;
  obj["id"] = s.id;
  obj["informal_statement"] = s.informal_statement;
  if (keep_formal) obj["formal_statement"] = s.formal_statement;
  obj["dependencies"] = s.dependencies;
  obj["difficulty"] = s.difficulty;
  return obj.dump();
}

RunReport build_dataset(const DependencyIndex& index, const KeywordList& keywords,
                        std::istream& corpus, std::ostream& out,
                        const BuildDatasetOptions& options) {
  auto t0 = std::chrono::steady_clock::now();
  CorpusReadResult read = read_corpus(corpus, options.strict);

  std::vector<std::string> lines(read.samples.size());
  unsigned jobs = std::max(1u, options.jobs);
  if (jobs == 1 || read.samples.size() < 2 * jobs) {
    for (std::size_t i = 0; i < read.samples.size(); ++i)
      lines[i] = labeled_to_jsonl_line(label_sample(index, keywords, read.samples[i]),
                                       options.keep_formal);
  } else {
    // Samples are independent and the index is read-only; strided workers
    // write into per-slot cells, so output order equals input order.
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w)
      workers.emplace_back([&, w]() {
        for (std::size_t i = w; i < read.samples.size(); i += jobs)
          lines[i] = labeled_to_jsonl_line(label_sample(index, keywords, read.samples[i]),
                                           options.keep_formal);
      });
    for (auto& t : workers) t.join();
  }

  for (const auto& line : lines) out << line << '\n';
  if (!out) raise(ErrorCode::IoError, "failed writing labeled dataset");

  RunReport report;
  report.processed = read.samples.size();
  report.errored = read.errors.size();
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report.samples_per_second =
      report.wall_seconds > 0 ? static_cast<double>(report.processed) / report.wall_seconds : 0;
  return report;
}

std::vector<LabeledSample> read_labeled(std::istream& in) {
  std::vector<LabeledSample> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    json obj = json::parse(line, nullptr, false);
    if (obj.is_discarded() || !obj.is_object())
      raise(ErrorCode::MalformedLine, "line " + std::to_string(line_no) + ": not a JSON object");
    LabeledSample s;
    s.id = require_string(obj, "id", line_no);
    s.informal_statement = require_string(obj, "informal_statement", line_no);
    if (obj.contains("formal_statement") && obj["formal_statement"].is_string())
      s.formal_statement = obj["formal_statement"].get<std::string>();
    auto d = obj.find("difficulty");
    if (d == obj.end() || !d->is_number_integer())
      raise(ErrorCode::MalformedLine,
            "line " + std::to_string(line_no) + ": missing integer field 'difficulty'");
    s.difficulty = std::min(d->get<int>(), 9);
    if (s.difficulty < 0)
      raise(ErrorCode::MalformedLine, "line " + std::to_string(line_no) + ": negative difficulty");
    auto deps = obj.find("dependencies");
    if (deps == obj.end() || !deps->is_array())
      raise(ErrorCode::MalformedLine,
            "line " + std::to_string(line_no) + ": missing array field 'dependencies'");
    for (const auto& d2 : *deps) {
      if (!d2.is_string())
        raise(ErrorCode::MalformedLine,
              "line " + std::to_string(line_no) + ": non-string dependency");
      s.dependencies.push_back(d2.get<std::string>());
    }
    out.push_back(std::move(s));
  }
  return out;
}

DatasetStats compute_stats(const std::vector<LabeledSample>& samples) {
  DatasetStats stats;
  std::array<std::uint64_t, 10> with_deps{};
  std::array<std::uint64_t, 10> total_deps{};
  for (const auto& s : samples) {
    int level = std::clamp(s.difficulty, 0, 9);
    auto& ls = stats.levels[level];
    ++ls.num;
    if (!s.dependencies.empty()) ++with_deps[level];
    total_deps[level] += s.dependencies.size();
  }
  for (int level = 0; level < 10; ++level) {
    auto& ls = stats.levels[level];
    ls.empty = ls.num == 0;
    if (!ls.empty) {
      ls.depend_rate = static_cast<double>(with_deps[level]) / static_cast<double>(ls.num);
      ls.depend_length = static_cast<double>(total_deps[level]) / static_cast<double>(ls.num);
    }
  }
  return stats;
}

const char* const kTestSetNames[5] = {"Diff01", "Diff23", "Diff45", "Diff67", "Diff89"};

SplitResult split_corpus(const std::vector<LabeledSample>& samples, std::uint64_t seed) {
  SplitResult out;
  std::vector<bool> selected(samples.size(), false);

  for (int level = 0; level < 10; ++level) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < samples.size(); ++i)
      if (samples[i].difficulty == level) idx.push_back(i);

    std::size_t take = std::min<std::size_t>(100, idx.size());
    if (idx.size() < 100)
      out.warnings.push_back("difficulty " + std::to_string(level) + " has only " +
                             std::to_string(idx.size()) + " samples (wanted 100)");

    SplitMix64 rng(seed + static_cast<std::uint64_t>(level));
    for (std::size_t i = 0; i < take; ++i) {
      std::size_t j = i + static_cast<std::size_t>(rng.below(idx.size() - i));
      std::swap(idx[i], idx[j]);
    }
    for (std::size_t i = 0; i < take; ++i) selected[idx[i]] = true;
  }

  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (selected[i])
      out.tests[samples[i].difficulty / 2].push_back(samples[i]);
    else
      out.train.push_back(samples[i]);
  }
  return out;
}

}  // namespace ddr
