#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "ddr/index.hpp"

namespace ddr {

// Linear-scan reference matcher with the same semantics as
// DependencyIndex::lookup. Doubles as the test oracle and as the baseline the
// benchmark compares against.
MatchResult naive_lookup(const std::vector<LibraryItem>& items, std::string_view query);

struct BenchmarkReport {
  std::uint64_t N = 0;  // library item count
  std::uint64_t M = 0;  // query count
  double d = 0;         // mean identifier byte length
  double s = 0;         // mean query byte length
  double build_seconds = 0;
  double queries_per_second = 0;
  std::optional<double> brute_force_queries_per_second;
  std::optional<double> speedup;
  std::uint64_t brute_force_sample = 0;  // queries the naive matcher was timed on
};

struct BenchmarkOptions {
  std::size_t queries = 10000;
  std::uint64_t seed = 1;
  bool compare = false;          // also time the naive matcher
  std::size_t naive_sample = 0;  // 0 = all M queries; else a leading subsample,
                                 // with throughput extrapolated per query
};

BenchmarkReport run_benchmark(std::vector<LibraryItem> items, const BenchmarkOptions& options);

}  // namespace ddr
