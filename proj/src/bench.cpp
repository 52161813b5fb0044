#include "ddr/bench.hpp"

#include <algorithm>
#include <chrono>

#include "ddr/errors.hpp"
#include "ddr/synthetic.hpp"

namespace ddr {

MatchResult naive_lookup(const std::vector<LibraryItem>& items, std::string_view query) {
  if (query.empty()) raise(ErrorCode::InvalidQuery, "query is empty");
  if (query.find(kDelimiter) != std::string_view::npos)
    raise(ErrorCode::InvalidQuery, "query contains the 0x01 delimiter byte");

  MatchResult r;
  r.query = std::string(query);
  std::string dot_q = "." + r.query;
  std::string q_dot = r.query + ".";
  std::string dot_q_dot = "." + r.query + ".";

  bool exact = false;
  for (const auto& item : items) {
    const std::string& fqn = item.fqn;
    if (fqn == query) {
      exact = true;
      r.resolved.push_back(fqn);
    } else if (fqn.ends_with(dot_q)) {
      r.resolved.push_back(fqn);
    } else if (fqn.starts_with(q_dot) || fqn.find(dot_q_dot) != std::string::npos) {
      r.partial_hits.push_back(fqn);
    }
  }
  std::sort(r.resolved.begin(), r.resolved.end());
  std::sort(r.partial_hits.begin(), r.partial_hits.end());
  r.status = exact                                              ? MatchStatus::Exact
             : (!r.resolved.empty() || !r.partial_hits.empty()) ? MatchStatus::Partial
                                                                : MatchStatus::None;
  return r;
}

BenchmarkReport run_benchmark(std::vector<LibraryItem> items, const BenchmarkOptions& options) {
  using clock = std::chrono::steady_clock;

  BenchmarkReport report;
  report.M = options.queries;

  double id_bytes = 0;
  auto t0 = clock::now();
  DependencyIndex index = DependencyIndex::build(std::move(items));
  report.build_seconds = std::chrono::duration<double>(clock::now() - t0).count();
  report.N = index.items().size();
  for (const auto& item : index.items()) id_bytes += static_cast<double>(item.fqn.size());
  report.d = report.N > 0 ? id_bytes / static_cast<double>(report.N) : 0;

  auto queries = synthetic_queries(index.items(), options.queries, options.seed);
  double query_bytes = 0;
  for (const auto& q : queries) query_bytes += static_cast<double>(q.size());
  report.s = queries.empty() ? 0 : query_bytes / static_cast<double>(queries.size());

  // The accumulator keeps the loop from being optimized to nothing.
  std::size_t sink = 0;
  t0 = clock::now();
  for (const auto& q : queries) sink += index.lookup(q).resolved.size();
  double sa_seconds = std::chrono::duration<double>(clock::now() - t0).count();
  report.queries_per_second =
      sa_seconds > 0 ? static_cast<double>(queries.size()) / sa_seconds : 0;

  if (options.compare) {
    std::size_t sample = options.naive_sample == 0
                             ? queries.size()
                             : std::min(options.naive_sample, queries.size());
    report.brute_force_sample = sample;
    t0 = clock::now();
    for (std::size_t i = 0; i < sample; ++i)
      sink += naive_lookup(index.items(), queries[i]).resolved.size();
    double naive_seconds = std::chrono::duration<double>(clock::now() - t0).count();
    double naive_qps = naive_seconds > 0 ? static_cast<double>(sample) / naive_seconds : 0;
    report.brute_force_queries_per_second = naive_qps;
    report.speedup = naive_qps > 0 ? report.queries_per_second / naive_qps : 0;
  }

  if (sink == static_cast<std::size_t>(-1)) report.M = 0;  // defeat dead-code elimination
  return report;
}

}  // namespace ddr
