#pragma once

#include <json.hpp>

#include "ddr/bench.hpp"
#include "ddr/dataset.hpp"
#include "ddr/generator.hpp"
#include "ddr/index.hpp"
#include "ddr/metrics.hpp"

namespace ddr {

inline nlohmann::json to_json(const MatchResult& r) {
  nlohmann::json j{{"query", r.query},
                   {"status", match_status_name(r.status)},
                   {"resolved", r.resolved},
                   {"partial_hits", r.partial_hits}};
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

inline nlohmann::json to_json(const std::vector<MatchResult>& rs) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rs) arr.push_back(to_json(r));
  return arr;
}

inline nlohmann::json to_json(const IndexInfo& info) {
  return {{"item_count", info.item_count},
          {"text_bytes", info.text_bytes},
          {"built_at", info.built_at},
          {"format_version", info.format_version}};
}

inline nlohmann::json to_json(const std::vector<DroppedCandidate>& dropped,
                              const char* reason_key) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& d : dropped)
    arr.push_back({{"candidate", d.candidate}, {reason_key, d.reason}});
  return arr;
}

inline nlohmann::json to_json(const DependencyList& dl) {
  return {{"dependencies", dl.dependencies}, {"dropped", to_json(dl.dropped, "reason")}};
}

// Downstream consumers expect full item records; everything beyond the
// resolved name is deliberately null.
inline nlohmann::json to_json(const VerifiedDependencies& vd) {
  nlohmann::json deps = nlohmann::json::array();
  for (const auto& fqn : vd.dependencies)
    deps.push_back({{"name", fqn},
                    {"kind", nullptr},
                    {"signature", nullptr},
                    {"doc", nullptr}});
  return {{"informal", vd.informal},
          {"dependencies", deps},
          {"dropped", to_json(vd.dropped, "status")},
          {"generator_latency_ms", vd.generator_latency_ms},
          {"verify_latency_ms", vd.verify_latency_ms}};
}

inline nlohmann::json to_json(const RetrievalScore& s) {
  return {{"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1}};
}

inline nlohmann::json to_json(const AggregateScore& agg) {
  return {{"mean", to_json(agg.mean)}, {"std", to_json(agg.std)}, {"n", agg.n}};
}

inline nlohmann::json to_json(const DatasetStats& stats) {
  nlohmann::json levels = nlohmann::json::array();
  for (int level = 0; level < 10; ++level) {
    const auto& ls = stats.levels[level];
    levels.push_back({{"difficulty", level},
                      {"num", ls.num},
                      {"depend_rate", ls.depend_rate},
                      {"depend_length", ls.depend_length},
                      {"empty", ls.empty}});
  }
  return {{"levels", levels}};
}

inline nlohmann::json to_json(const RunReport& r) {
  return {{"processed", r.processed},
          {"errored", r.errored},
          {"wall_seconds", r.wall_seconds},
          {"samples_per_second", r.samples_per_second}};
}

inline nlohmann::json to_json(const BenchmarkReport& r) {
  nlohmann::json j{{"N", r.N},
                   {"M", r.M},
                   {"d", r.d},
                   {"s", r.s},
                   {"build_seconds", r.build_seconds},
                   {"queries_per_second", r.queries_per_second}};
  if (r.brute_force_queries_per_second) {
    j["brute_force_queries_per_second"] = *r.brute_force_queries_per_second;
    j["speedup"] = *r.speedup;
    j["brute_force_sample"] = r.brute_force_sample;
  }
  return j;
}

}  // namespace ddr
