// Acceptance gate: one criterion per invocation (--criterion N), one
// PASS/FAIL/SKIP line on stdout, exit 0 unless the criterion fails.
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <unordered_set>

#include <httplib.h>
#include <json.hpp>

#include "ddr/bench.hpp"
#include "ddr/cli.hpp"
#include "ddr/dataset.hpp"
#include "ddr/errors.hpp"
#include "ddr/extract.hpp"
#include "ddr/generator.hpp"
#include "ddr/index.hpp"
#include "ddr/index_io.hpp"
#include "ddr/json_io.hpp"
#include "ddr/library.hpp"
#include "ddr/metrics.hpp"
#include "ddr/rng.hpp"
#include "ddr/service.hpp"
#include "ddr/suffix_array.hpp"
#include "ddr/synthetic.hpp"
#include "oracles.hpp"

using namespace ddr;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  bool skip = false;
  std::string detail;
};

Outcome fail(std::string detail) { return {false, false, std::move(detail)}; }
Outcome pass(std::string detail) { return {true, false, std::move(detail)}; }
Outcome skip(std::string detail) { return {false, true, std::move(detail)}; }

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int precision = 2) {
  std::ostringstream ss;
  ss.setf(std::ios::fixed);
  ss.precision(precision);
  ss << v;
  return ss.str();
}

// ---------------------------------------------------------------------------
// 1. Suffix-array oracle equivalence.

std::string random_bytes(SplitMix64& rng, std::size_t len, unsigned alphabet) {
  std::string s(len, '\0');
  for (auto& c : s) c = static_cast<char>(rng.below(alphabet));
  return s;
}

Outcome criterion1() {
  auto t0 = Clock::now();
  std::vector<std::string> cases;

  // Adversarial shapes first.
  cases.emplace_back(4000, 'x');                       // all-equal bytes
  cases.emplace_back(2000, '\x01');                    // all delimiter bytes
  cases.emplace_back(1500, '\0');                      // all NUL
  std::string ab, abc;
  while (ab.size() < 5000) ab += "ab";                 // period 2
  while (abc.size() < 4998) abc += "abc";              // period 3
  cases.push_back(ab);
  cases.push_back(abc);
  std::string delimited;                               // 0x01-separated segments
  for (int i = 0; i < 400; ++i) delimited += "\x01seg" + std::to_string(i % 7);
  cases.push_back(delimited);
  std::string fib_a = "a", fib_b = "ab";               // fibonacci word, high lcp
  while (fib_b.size() < 4000) {
    std::string next = fib_b + fib_a;
    fib_a = std::move(fib_b);
    fib_b = std::move(next);
  }
  cases.push_back(fib_b);

  SplitMix64 rng(101);
  for (int i = 0; i < 1000; ++i) {
    std::size_t len = 1 + rng.below(5000);
    unsigned alphabet;
    switch (i % 4) {
      case 0: alphabet = 256; break;
      case 1: alphabet = 2; break;
      case 2: alphabet = 4; break;
      default: alphabet = 26; break;
    }
    cases.push_back(random_bytes(rng, len, alphabet));
  }

  for (std::size_t i = 0; i < cases.size(); ++i) {
    if (build_suffix_array(cases[i]) != oracle::suffix_array(cases[i])) {
      return fail("suffix array mismatch on case " + std::to_string(i) + " (length " +
                  std::to_string(cases[i].size()) + ")");
    }
  }
  return pass(std::to_string(cases.size()) +
              " strings (1,000 random, lengths 1-5,000, mixed alphabets; plus all-equal, "
              "periodic, fibonacci, NUL and 0x01-heavy shapes) matched the comparison-sort "
              "oracle in " +
              fmt(seconds_since(t0)) + " s");
}

// ---------------------------------------------------------------------------
// 2. Lookup brute-force equivalence.

std::string mixed_query(const std::vector<std::string>& fqns, SplitMix64& rng, int cls) {
  switch (cls) {
    case 0: return fqns[rng.below(fqns.size())];  // existing fqn
    case 1: {                                     // component suffix
      const auto& f = fqns[rng.below(fqns.size())];
      auto dot = f.find('.');
      return dot == std::string::npos ? f : f.substr(dot + 1);
    }
    case 2: {  // qualified prefix
      const auto& f = fqns[rng.below(fqns.size())];
      auto dot = f.rfind('.');
      return dot == std::string::npos ? f : f.substr(0, dot);
    }
    case 3: {  // non-aligned substring
      const auto& f = fqns[rng.below(fqns.size())];
      std::size_t at = rng.below(f.size());
      std::string q = f.substr(at, 1 + rng.below(5));
      if (q.front() == '.') q.insert(q.begin(), 'x');
      if (q.back() == '.') q.push_back('x');
      return q;
    }
    default: {  // garbage
      std::string q = "zz";
      for (int c = 0; c < 5; ++c) q.push_back(static_cast<char>('a' + rng.below(26)));
      return q;
    }
  }
}

Outcome criterion2() {
  auto t0 = Clock::now();
  SplitMix64 rng(202);
  std::uint64_t total = 0;
  for (std::size_t lib_size : {10u, 100u, 1000u, 10000u}) {
    auto items = synthetic_library(lib_size, rng.next());
    auto index = DependencyIndex::build(items);
    std::vector<std::string> fqns;
    for (const auto& item : index.items()) fqns.push_back(item.fqn);

    for (int q = 0; q < 10000; ++q) {
      std::string query = mixed_query(fqns, rng, q % 5);
      auto got = index.lookup(query);
      auto want = oracle::lookup(fqns, query);
      if (match_status_name(got.status) != want.status || got.resolved != want.resolved ||
          got.partial_hits != want.partial_hits) {
        return fail("lookup disagrees with the linear-scan oracle on library size " +
                    std::to_string(lib_size) + ", query \"" + query + "\"");
      }
      ++total;
    }
  }
  return pass("100% agreement with the linear-scan oracle on " + std::to_string(total) +
              " queries (libraries of 10/100/1,000/10,000; five query classes) in " +
              fmt(seconds_since(t0)) + " s");
}

// ---------------------------------------------------------------------------
// 3. Scale and speedup targets on a 240,000-identifier library.

Outcome criterion3() {
  constexpr std::size_t kN = 240000;
  auto items = synthetic_library(kN, 301);

  auto t_build = Clock::now();
  auto index = DependencyIndex::build(items);
  double build_s = seconds_since(t_build);
  if (build_s > 30.0) return fail("index build took " + fmt(build_s) + " s (limit 30 s)");

  std::size_t sink = 0;
  auto q100k = synthetic_queries(items, 100000, 302);
  auto t_queries = Clock::now();
  for (const auto& q : q100k) {
    auto r = index.lookup(q);
    sink += r.resolved.size() + r.partial_hits.size();
  }
  double query_s = seconds_since(t_queries);
  if (query_s > 10.0)
    return fail("100,000 mixed queries took " + fmt(query_s) + " s (limit 10 s)");

  // Speedup at M = 10,000: the indexed side runs the full stream, the naive
  // side a leading 500-query subsample (the class mix repeats every 10
  // queries, so any multiple-of-10 prefix is exactly proportional) with
  // per-query extrapolation.
  auto q10k = synthetic_queries(items, 10000, 303);
  auto t_indexed = Clock::now();
  for (const auto& q : q10k) {
    auto r = index.lookup(q);
    sink += r.resolved.size() + r.partial_hits.size();
  }
  double indexed_s = seconds_since(t_indexed);

  constexpr std::size_t kNaiveSample = 500;
  auto t_naive = Clock::now();
  for (std::size_t i = 0; i < kNaiveSample; ++i) {
    auto r = naive_lookup(items, q10k[i]);
    sink += r.resolved.size() + r.partial_hits.size();
  }
  double naive_s = seconds_since(t_naive);

  double qps_indexed = 10000.0 / indexed_s;
  double qps_naive = static_cast<double>(kNaiveSample) / naive_s;
  double speedup = qps_indexed / qps_naive;
  if (sink == static_cast<std::size_t>(-1)) return fail("impossible sink value");
  if (speedup < 20.0)
    return fail("speedup over the naive matcher is " + fmt(speedup, 1) +
                "x at N=240,000, M=10,000 (floor 20x)");

  return pass("N=240,000: build " + fmt(build_s) + " s (limit 30), 100,000 queries " +
              fmt(query_s) + " s (limit 10), speedup " + fmt(speedup, 0) +
              "x (floor 20x; naive matcher timed on " + std::to_string(kNaiveSample) +
              " of the 10,000 queries and extrapolated per query)");
}

// ---------------------------------------------------------------------------
// 4. Metric correctness.

std::string random_metric_identifier(SplitMix64& rng) {
  static const char* parts[] = {"Nat", "sqrt", "Real", "mul", "comm", "Fin", "succ", "zero"};
  std::string out;
  std::size_t n = 1 + rng.below(3);
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out += '.';
    out += parts[rng.below(8)];
  }
  return out;
}

Outcome criterion4() {
  auto hand = score_sample({"Nat.sqrt", "Foo.bar"}, {"sqrt"});
  if (hand.precision != 0.5 || hand.recall != 1.0 || hand.f1 != 2.0 / 3.0)
    return fail("hand case gave P=" + std::to_string(hand.precision) + " R=" +
                std::to_string(hand.recall) + " F1=" + std::to_string(hand.f1) +
                ", expected (0.5, 1.0, 2/3)");

  struct ConventionCase {
    std::vector<std::string> pred, gold;
    RetrievalScore want;
  };
  const ConventionCase conventions[] = {
      {{}, {}, {1, 1, 1}},
      {{}, {"Fin"}, {0, 0, 0}},
      {{"Fin"}, {}, {0, 1, 0}},
      {{"Fin"}, {"Fin"}, {1, 1, 1}},
  };
  for (const auto& c : conventions) {
    auto got = score_sample(c.pred, c.gold);
    if (!(got == c.want))
      return fail("empty-set convention violated for |pred|=" + std::to_string(c.pred.size()) +
                  ", |gold|=" + std::to_string(c.gold.size()));
  }

  // Aggregate mean and population std against direct arithmetic, 1e-12.
  SplitMix64 rng(404);
  std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> pairs;
  for (int i = 0; i < 500; ++i) {
    std::vector<std::string> pred, gold;
    for (std::size_t k = rng.below(5); k--;) pred.push_back(random_metric_identifier(rng));
    for (std::size_t k = rng.below(5); k--;) gold.push_back(random_metric_identifier(rng));
    pairs.emplace_back(std::move(pred), std::move(gold));
  }
  auto agg = score_corpus(pairs);

  std::vector<RetrievalScore> scores;
  for (const auto& [pred, gold] : pairs) scores.push_back(score_sample(pred, gold));
  auto direct = [&](auto member) {
    double sum = 0;
    for (const auto& s : scores) sum += s.*member;
    double mean = sum / scores.size();
    double var = 0;
    for (const auto& s : scores) var += (s.*member - mean) * (s.*member - mean);
    return std::pair<double, double>(mean, std::sqrt(var / scores.size()));
  };
  auto [mp, sp] = direct(&RetrievalScore::precision);
  auto [mr, sr] = direct(&RetrievalScore::recall);
  auto [mf, sf] = direct(&RetrievalScore::f1);
  double worst = std::max({std::abs(agg.mean.precision - mp), std::abs(agg.mean.recall - mr),
                           std::abs(agg.mean.f1 - mf), std::abs(agg.std.precision - sp),
                           std::abs(agg.std.recall - sr), std::abs(agg.std.f1 - sf)});
  if (worst > 1e-12)
    return fail("aggregate mean/std deviates from direct arithmetic by " + std::to_string(worst));

  return pass("hand case (P=0.5, R=1.0, F1=2/3) and all empty-set conventions exact; "
              "mean/std on 500 random samples match direct arithmetic (worst deviation " +
              fmt(worst * 1e12, 3) + "e-12)");
}

// ---------------------------------------------------------------------------
// 5. Planted-dependency recovery at 10,000 samples.

Outcome criterion5() {
  auto t0 = Clock::now();
  auto items = synthetic_library(2000, 501);
  auto index = DependencyIndex::build(items);
  auto keywords = KeywordList::defaults();
  auto corpus = synthetic_corpus(items, 10000, 502);

  std::string corpus_text;
  for (const auto& s : corpus.samples) {
    json line{{"id", s.id},
              {"informal_statement", s.informal_statement},
              {"formal_statement", s.formal_statement},
              {"difficulty", s.difficulty}};
    corpus_text += line.dump();
    corpus_text += '\n';
  }

  std::istringstream in(corpus_text);
  std::ostringstream out;
  BuildDatasetOptions options;
  options.jobs = std::max(1u, std::thread::hardware_concurrency());
  RunReport report = build_dataset(index, keywords, in, out, options);
  if (report.processed != 10000 || report.errored != 0)
    return fail("expected 10,000 clean samples, got processed=" +
                std::to_string(report.processed) + " errored=" + std::to_string(report.errored));

  std::istringstream back(out.str());
  auto labeled = read_labeled(back);
  if (labeled.size() != 10000)
    return fail("labeled output has " + std::to_string(labeled.size()) + " rows");

  for (std::size_t i = 0; i < labeled.size(); ++i) {
    if (labeled[i].dependencies != corpus.planted[i])
      return fail("sample " + corpus.samples[i].id + " recovered " +
                  std::to_string(labeled[i].dependencies.size()) + " dependencies, planted " +
                  std::to_string(corpus.planted[i].size()));
  }

  // Stats must reproduce the planted per-level rates to 1e-9.
  auto stats = compute_stats(labeled);
  double worst = 0;
  for (int level = 0; level < 10; ++level) {
    std::uint64_t num = 0, dependent = 0, total = 0;
    for (std::size_t i = 0; i < corpus.samples.size(); ++i) {
      int folded = std::min(corpus.samples[i].difficulty, 9);
      if (folded != level) continue;
      ++num;
      if (!corpus.planted[i].empty()) ++dependent;
      total += corpus.planted[i].size();
    }
    if (stats.levels[level].num != num)
      return fail("level " + std::to_string(level) + " sample count mismatch");
    if (num == 0) continue;
    worst = std::max(worst, std::abs(stats.levels[level].depend_rate -
                                     static_cast<double>(dependent) / num));
    worst = std::max(worst, std::abs(stats.levels[level].depend_length -
                                     static_cast<double>(total) / num));
  }
  double elapsed = seconds_since(t0);
  if (worst > 1e-9)
    return fail("per-level stats deviate from the planted reference by " + std::to_string(worst));
  if (elapsed > 60.0)
    return fail("end-to-end run took " + fmt(elapsed) + " s (limit 60 s)");

  return pass("all 10,000 planted dependency sets recovered exactly; per-level "
              "depend_rate/depend_length match the planted reference to 1e-9; end-to-end " +
              fmt(elapsed) + " s (limit 60)");
}

// ---------------------------------------------------------------------------
// 6. Conditional Table-1 reproduction (requires the released corpus).

Outcome criterion6() {
  const char* corpus_path = std::getenv("DDR_FINELEAN_CORPUS");
  const char* dump_path = std::getenv("DDR_MATHLIB_DUMP");
  if (!corpus_path || !*corpus_path || !dump_path || !*dump_path)
    return skip("released corpus and identifier dump not available; set DDR_FINELEAN_CORPUS "
                "and DDR_MATHLIB_DUMP to run this reproduction");
  if (!fs::exists(corpus_path)) return skip(std::string("corpus file missing: ") + corpus_path);
  if (!fs::exists(dump_path)) return skip(std::string("identifier dump missing: ") + dump_path);

  auto index = DependencyIndex::build(load_library_file(dump_path));
  auto keywords = KeywordList::defaults();

  std::ifstream corpus_file(corpus_path, std::ios::binary);
  auto corpus = read_corpus(corpus_file);
  std::vector<LabeledSample> labeled;
  labeled.reserve(corpus.samples.size());
  for (const auto& s : corpus.samples) labeled.push_back(label_sample(index, keywords, s));
  auto stats = compute_stats(labeled);

  const auto& nine = stats.levels[9];
  if (nine.num != 708)
    return fail("difficulty-9 slice has " + std::to_string(nine.num) + " samples, expected 708");
  double rate_err = std::abs(nine.depend_rate - 0.8305);
  double length_err = std::abs(nine.depend_length - 2.6328);
  if (rate_err > 0.05 || length_err > 0.05)
    return fail("difficulty-9 depend_rate=" + fmt(nine.depend_rate, 4) + " (ref 0.8305), "
                "depend_length=" + fmt(nine.depend_length, 4) + " (ref 2.6328); "
                "outside the +/-0.05 tolerance");
  return pass("difficulty-9 slice: num=708, depend_rate=" + fmt(nine.depend_rate, 4) +
              ", depend_length=" + fmt(nine.depend_length, 4) +
              " within +/-0.05 of the released reference values");
}

// ---------------------------------------------------------------------------
// 7. Serialization round trip and corruption behaviour.

Outcome criterion7() {
  auto items = synthetic_library(5000, 701);
  auto index = DependencyIndex::build(items);
  std::ostringstream sink;
  save_index(index, sink);
  std::string bytes = sink.str();
  std::istringstream source(bytes);
  auto copy = load_index(source);

  std::vector<std::string> fqns;
  for (const auto& item : index.items()) fqns.push_back(item.fqn);
  SplitMix64 rng(702);
  for (int probe = 0; probe < 10000; ++probe) {
    std::string query = mixed_query(fqns, rng, probe % 5);
    if (!(index.lookup(query) == copy.lookup(query)))
      return fail("round-tripped index answers differently for \"" + query + "\"");
  }

  auto expect_designated_error = [&](std::string corrupted, const char* what) -> const char* {
    try {
      std::istringstream in(corrupted);
      auto loaded = load_index(in);
      (void)loaded;
      return what;  // corrupt input loaded cleanly: report it
    } catch (const Error& e) {
      switch (e.code()) {
        case ErrorCode::BadMagic:
        case ErrorCode::UnsupportedVersion:
        case ErrorCode::TruncatedFile:
        case ErrorCode::ChecksumMismatch:
          return nullptr;
        default:
          return what;
      }
    } catch (...) {
      return what;
    }
  };

  int corruptions = 0;
  for (int trial = 0; trial < 150; ++trial) {  // random single-byte flips
    std::string bad = bytes;
    std::size_t at = rng.below(bad.size());
    bad[at] = static_cast<char>(bad[at] ^ (1 + rng.below(255)));
    if (const char* err = expect_designated_error(std::move(bad), "byte flip"))
      return fail(std::string(err) + " at offset " + std::to_string(at) +
                  " did not produce a designated error");
    ++corruptions;
  }
  for (int trial = 0; trial < 60; ++trial) {  // truncations at random depths
    std::size_t keep = rng.below(bytes.size());
    if (const char* err = expect_designated_error(bytes.substr(0, keep), "truncation"))
      return fail(std::string(err) + " to " + std::to_string(keep) +
                  " bytes did not produce a designated error");
    ++corruptions;
  }
  if (const char* err = expect_designated_error(bytes + "tail", "trailing garbage"))
    return fail(std::string(err) + " did not produce a designated error");
  ++corruptions;

  return pass("round trip identical on 10,000 mixed probes; " + std::to_string(corruptions) +
              " corrupted variants (byte flips, truncations, trailing garbage) all raised "
              "designated errors, none loaded");
}

// ---------------------------------------------------------------------------
// 8. Service conformance under concurrency.

Outcome criterion8() {
  auto items = synthetic_library(500, 801);
  VerifyService service({}, DependencyIndex::build(items));
  int port = service.bind_any_port();
  std::thread worker([&] { service.listen_after_bind(); });
  service.wait_until_ready();
  auto reference = DependencyIndex::build(items);

  Outcome outcome = pass("");
  auto shutdown = [&] {
    service.stop();
    worker.join();
  };

  // Phase 1: random batches mirror verify_batch exactly.
  {
    httplib::Client client("127.0.0.1", port);
    client.set_read_timeout(std::chrono::seconds(30));
    SplitMix64 rng(802);
    std::vector<std::string> fqns;
    for (const auto& item : items) fqns.push_back(item.fqn);
    for (int round = 0; round < 200; ++round) {
      std::vector<std::string> batch;
      for (std::size_t k = 1 + rng.below(8); k--;)
        batch.push_back(mixed_query(fqns, rng, static_cast<int>(rng.below(5))));
      auto res = client.Post("/v1/verify", json{{"candidates", batch}}.dump(),
                             "application/json");
      if (!res || res->status != 200) {
        shutdown();
        return fail("verify request failed in conformance phase (round " +
                    std::to_string(round) + ")");
      }
      if (json::parse(res->body) != to_json(reference.verify_batch(batch))) {
        shutdown();
        return fail("service response differs from verify_batch (round " +
                    std::to_string(round) + ")");
      }
    }
  }

  // Phase 2: 32 concurrent clients, >= 10,000 requests total, compared
  // afterwards against a sequential in-process replay.
  constexpr int kClients = 32;
  constexpr int kPerClient = 320;  // 10,240 requests
  std::vector<std::string> fqns;
  for (const auto& item : items) fqns.push_back(item.fqn);
  auto query_for = [&](int client_id, int i) {
    SplitMix64 rng(static_cast<std::uint64_t>(client_id) * 100003 + i);
    return mixed_query(fqns, rng, static_cast<int>(rng.below(5)));
  };

  std::vector<std::vector<std::string>> responses(kClients);
  std::atomic<int> transport_failures{0};
  {
    std::vector<std::thread> clients;
    for (int c = 0; c < kClients; ++c) {
      clients.emplace_back([&, c] {
        auto fresh_client = [&] {
          auto client = std::make_unique<httplib::Client>("127.0.0.1", port);
          client->set_read_timeout(std::chrono::seconds(30));
          return client;
        };
        auto client = fresh_client();
        responses[c].reserve(kPerClient);
        for (int i = 0; i < kPerClient; ++i) {
          std::string body = json{{"candidates", json::array({query_for(c, i)})}}.dump();
          // HTTP/1.1 keep-alive reuse can race a server-side close; a
          // well-behaved client retries on a fresh connection.
          httplib::Result res;
          for (int attempt = 0; attempt < 3; ++attempt) {
            res = client->Post("/v1/verify", body, "application/json");
            if (res && res->status == 200) break;
            client = fresh_client();
          }
          if (!res || res->status != 200) {
            ++transport_failures;
            responses[c].push_back("");
          } else {
            responses[c].push_back(res->body);
          }
        }
      });
    }
    for (auto& t : clients) t.join();
  }
  shutdown();

  if (transport_failures > 0)
    return fail(std::to_string(transport_failures.load()) + " of " +
                std::to_string(kClients * kPerClient) + " concurrent requests failed");

  for (int c = 0; c < kClients; ++c) {
    for (int i = 0; i < kPerClient; ++i) {
      auto expected = to_json(reference.verify_batch({query_for(c, i)}));
      if (json::parse(responses[c][i]) != expected)
        return fail("concurrent response differs from sequential replay (client " +
                    std::to_string(c) + ", request " + std::to_string(i) + ")");
    }
  }
  return pass("random-batch responses equal in-process verify_batch; 32 concurrent clients x "
              "320 requests (10,240 total) matched the sequential replay exactly");
}

// ---------------------------------------------------------------------------
// 9. Hallucination filter under an adversarial generator.

std::string garbage_name(const std::vector<LibraryItem>& items, SplitMix64& rng,
                         const std::unordered_set<std::string>& member) {
  for (;;) {
    std::string g;
    switch (rng.below(4)) {
      case 0:  // pure junk
        g = "zz";
        for (int i = 0; i < 6; ++i) g.push_back(static_cast<char>('a' + rng.below(26)));
        break;
      case 1: {  // mangled real name
        g = items[rng.below(items.size())].fqn + "_x";
        break;
      }
      case 2: {  // dotted junk
        g = "Fake" + std::to_string(rng.below(100)) + ".entry" + std::to_string(rng.below(100));
        break;
      }
      default: {  // real name with a corrupted component
        g = items[rng.below(items.size())].fqn;
        g[rng.below(g.size())] = 'q';
        break;
      }
    }
    if (!member.count(g)) return g;
  }
}

Outcome criterion9() {
  auto items = synthetic_library(1000, 901);
  auto index = DependencyIndex::build(items);
  std::unordered_set<std::string> member;
  for (const auto& item : items) member.insert(item.fqn);

  fs::path dir = "acceptance_c9_scratch";
  fs::create_directories(dir);
  std::string mapping_path = (dir / "stub.json").string();
  GeneratorConfig config;
  config.kind = GeneratorKind::FileStub;
  config.mapping_path = mapping_path;

  SplitMix64 rng(902);
  constexpr int kRounds = 100;
  constexpr int kPerRound = 100;  // 10,000 trials total
  std::uint64_t garbage_emitted = 0, real_emitted = 0, dependencies_kept = 0;

  for (int round = 0; round < kRounds; ++round) {
    json mapping = json::object();
    std::vector<std::string> keys;
    for (int t = 0; t < kPerRound; ++t) {
      std::string key = "stmt " + std::to_string(round) + "_" + std::to_string(t);
      json candidates = json::array();
      for (int c = 0; c < 10; ++c) {
        if (rng.below(10) == 0) {  // 10% real, 90% adversarial garbage
          candidates.push_back(items[rng.below(items.size())].fqn);
          ++real_emitted;
        } else {
          candidates.push_back(garbage_name(items, rng, member));
          ++garbage_emitted;
        }
      }
      mapping[key] = std::move(candidates);
      keys.push_back(std::move(key));
    }
    {
      std::ofstream f(mapping_path, std::ios::trunc | std::ios::binary);
      f << mapping.dump();
    }
    for (const auto& key : keys) {
      auto result = retrieve_dependencies(index, config, key);
      for (const auto& dep : result.dependencies) {
        if (!member.count(dep)) {
          fs::remove_all(dir);
          return fail("non-library name leaked into dependencies: \"" + dep + "\"");
        }
        ++dependencies_kept;
      }
    }
  }
  fs::remove_all(dir);

  return pass("10,000 trials against a stub generator emitting " +
              std::to_string(garbage_emitted) + " adversarial non-library names (90%) and " +
              std::to_string(real_emitted) + " real names: 0 non-library fqns in any output, " +
              std::to_string(dependencies_kept) + " verified dependencies kept");
}

// ---------------------------------------------------------------------------
// 10. Out-of-scope declaration plus a stub-prediction end-to-end eval.

Outcome criterion10() {
  fs::path dir = "acceptance_c10_scratch";
  fs::create_directories(dir);
  auto write = [&](const char* name, const std::string& content) {
    auto path = (dir / name).string();
    std::ofstream f(path, std::ios::trunc | std::ios::binary);
    f << content;
    return path;
  };

  // Three-sample gold set and stub predictions with hand-computable scores:
  //   s1: pred == gold                  -> (1, 1, 1)
  //   s2: one of two gold items matched -> (1, 1/2, 2/3)
  //   s3: hallucination on empty gold   -> (0, 1, 0)
  auto gold_path = write(
      "gold.jsonl",
      R"({"id":"s1","informal_statement":"a","dependencies":["Nat.sqrt"],"difficulty":0})"
      "\n"
      R"({"id":"s2","informal_statement":"b","dependencies":["Nat.sqrt","Fin.val"],"difficulty":1})"
      "\n"
      R"({"id":"s3","informal_statement":"c","dependencies":[],"difficulty":2})"
      "\n");
  auto pred_path = write("pred.jsonl",
                         R"({"id":"s1","dependencies":["Nat.sqrt"]})"
                         "\n"
                         R"({"id":"s2","dependencies":["sqrt"]})"
                         "\n"
                         R"({"id":"s3","dependencies":["Foo.bar"]})"
                         "\n");

  std::istringstream in;
  std::ostringstream out, err;
  int rc = run_cli({"eval", "--pred", pred_path, "--gold", gold_path}, in, out, err);
  fs::remove_all(dir);
  if (rc != 0) return fail("eval exited with code " + std::to_string(rc) + ": " + err.str());

  json report = json::parse(out.str());
  const double exp_mean_p = (1.0 + 1.0 + 0.0) / 3;
  const double exp_mean_r = (1.0 + 0.5 + 1.0) / 3;
  const double exp_mean_f = (1.0 + 2.0 / 3.0 + 0.0) / 3;
  auto pop_std = [](std::initializer_list<double> xs, double mean) {
    double var = 0;
    for (double x : xs) var += (x - mean) * (x - mean);
    return std::sqrt(var / xs.size());
  };
  const double exp_std_p = pop_std({1, 1, 0}, exp_mean_p);
  const double exp_std_r = pop_std({1, 0.5, 1}, exp_mean_r);
  const double exp_std_f = pop_std({1, 2.0 / 3.0, 0}, exp_mean_f);

  double worst = std::max(
      {std::abs(report["mean"]["precision"].get<double>() - exp_mean_p),
       std::abs(report["mean"]["recall"].get<double>() - exp_mean_r),
       std::abs(report["mean"]["f1"].get<double>() - exp_mean_f),
       std::abs(report["std"]["precision"].get<double>() - exp_std_p),
       std::abs(report["std"]["recall"].get<double>() - exp_std_r),
       std::abs(report["std"]["f1"].get<double>() - exp_std_f)});
  if (report["n"] != 3 || worst > 1e-12)
    return fail("stub-prediction eval deviates from the hand computation by " +
                std::to_string(worst));

  return pass("declared out of scope: the published end-task numbers (DDR precision/recall "
              "0.845/0.737 on Diff01 and all type-check/bidirectional-equivalence results) "
              "require the fine-tuned generator model and a Lean toolchain, neither of which "
              "ships here; the evaluation harness itself is validated by criteria 4-5 and by "
              "this end-to-end stub-prediction run matching hand-computed PRF "
              "(mean P=2/3, R=5/6, F1=5/9; population std checked to 1e-12)");
}

}  // namespace

int main(int argc, char** argv) {
  int criterion = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      criterion = std::atoi(argv[++i]);
    }
  }
  if (criterion < 1 || criterion > 10) {
    std::cerr << "usage: ddr_acceptance --criterion N   (N in 1..10)\n";
    return 2;
  }

  Outcome outcome;
  try {
    switch (criterion) {
      case 1: outcome = criterion1(); break;
      case 2: outcome = criterion2(); break;
      case 3: outcome = criterion3(); break;
      case 4: outcome = criterion4(); break;
      case 5: outcome = criterion5(); break;
      case 6: outcome = criterion6(); break;
      case 7: outcome = criterion7(); break;
      case 8: outcome = criterion8(); break;
      case 9: outcome = criterion9(); break;
      case 10: outcome = criterion10(); break;
    }
  } catch (const std::exception& e) {
    outcome = fail(std::string("unexpected exception: ") + e.what());
  }

  const char* verdict = outcome.pass ? "PASS" : outcome.skip ? "SKIP" : "FAIL";
  std::cout << verdict << " criterion " << criterion << ": " << outcome.detail << "\n";
  return outcome.pass || outcome.skip ? 0 : 1;
}
