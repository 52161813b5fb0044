#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "ddr/errors.hpp"
#include "ddr/generator.hpp"
#include "ddr/rng.hpp"
#include "ddr/synthetic.hpp"

using namespace ddr;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& content) : path(name) {
    std::ofstream f(path, std::ios::binary);
    f << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

DependencyIndex nat_library() {
  std::vector<LibraryItem> items;
  for (const char* f : {"Nat.factorization", "Nat.factorial", "Int.sqrt", "Nat.sqrt",
                        "Real.sqrt"}) {
    items.push_back(LibraryItem{f, {}, {}, {}});
  }
  return DependencyIndex::build(items);
}

}  // namespace

TEST_CASE("parse_candidate_response accepts every documented shape") {
  auto expect = std::vector<std::string>{"Nat.sqrt", "Fin.val"};
  CHECK(parse_candidate_response("[\"Nat.sqrt\", \"Fin.val\"]") == expect);
  CHECK(parse_candidate_response("{\"candidates\": [\"Nat.sqrt\", \"Fin.val\"]}") == expect);
  CHECK(parse_candidate_response("{\"dependencies\": [\"Nat.sqrt\", \"Fin.val\"]}") == expect);
  CHECK(parse_candidate_response("Nat.sqrt\nFin.val") == expect);
  CHECK(parse_candidate_response("Nat.sqrt, Fin.val") == expect);
  CHECK(parse_candidate_response("`Nat.sqrt`\n- `Fin.val`") == expect);
  CHECK(parse_candidate_response("```json\n[\"Nat.sqrt\", \"Fin.val\"]\n```") == expect);
  CHECK(parse_candidate_response("\"Nat.sqrt\"") == std::vector<std::string>{"Nat.sqrt"});
  CHECK(parse_candidate_response("") == std::vector<std::string>{});
  CHECK(parse_candidate_response("[]") == std::vector<std::string>{});
}

TEST_CASE("parse_candidate_response rejects JSON of the wrong shape") {
  CHECK_THROWS_AS(parse_candidate_response("{\"answer\": 42}"), Error);
  CHECK_THROWS_AS(parse_candidate_response("[1, 2, 3]"), Error);
  CHECK_THROWS_AS(parse_candidate_response("true"), Error);
}

TEST_CASE("file stub looks up verbatim, then by hash, then warns") {
  std::string informal = "the square root statement";
  TempFile mapping("test_stub_mapping.json",
                   "{\"" + informal + "\": [\"Nat.sqrt\"],"
                   " \"" + fnv1a_hex("hashed statement") + "\": [\"Nat.factorial\"]}");
  GeneratorConfig config;
  config.kind = GeneratorKind::FileStub;
  config.mapping_path = mapping.path;

  CHECK(generate_candidates(config, informal) == std::vector<std::string>{"Nat.sqrt"});
  CHECK(generate_candidates(config, "hashed statement") ==
        std::vector<std::string>{"Nat.factorial"});

  std::vector<std::string> warnings;
  CHECK(generate_candidates(config, "unknown statement", &warnings).empty());
  CHECK(warnings.size() == 1);
}

TEST_CASE("file stub accepts single-string and comma text values") {
  TempFile mapping("test_stub_shapes.json",
                   "{\"a\": \"Nat.sqrt\", \"b\": \"Nat.sqrt, Fin.val\"}");
  GeneratorConfig config;
  config.mapping_path = mapping.path;
  CHECK(generate_candidates(config, "a") == std::vector<std::string>{"Nat.sqrt"});
  CHECK(generate_candidates(config, "b") ==
        std::vector<std::string>{"Nat.sqrt", "Fin.val"});
}

TEST_CASE("file stub config errors") {
  GeneratorConfig config;
  config.mapping_path = "";
  CHECK_THROWS_AS(generate_candidates(config, "x"), Error);
  config.mapping_path = "missing_mapping.json";
  CHECK_THROWS_AS(generate_candidates(config, "x"), Error);

  TempFile mapping("test_stub_bad.json", "[1,2]");
  config.mapping_path = mapping.path;
  CHECK_THROWS_AS(generate_candidates(config, "x"), Error);
}

TEST_CASE("external generator validates its config") {
  GeneratorConfig config;
  config.kind = GeneratorKind::ExternalHttp;
  config.endpoint = "";
  CHECK_THROWS_AS(generate_candidates(config, "x"), Error);
}

TEST_CASE("retrieve_dependencies filters hallucinations") {
  auto index = nat_library();
  TempFile mapping(
      "test_retrieve_mapping.json",
      "{\"factor statement\": [\"Nat.factorization\", \"Nat.factorial\", \"Nat.bogus\"]}");
  GeneratorConfig config;
  config.mapping_path = mapping.path;

  auto result = retrieve_dependencies(index, config, "factor statement");
  CHECK(result.informal == "factor statement");
  CHECK(result.dependencies ==
        std::vector<std::string>{"Nat.factorization", "Nat.factorial"});
  REQUIRE(result.dropped.size() == 1);
  CHECK(result.dropped[0].candidate == "Nat.bogus");
  CHECK(result.dropped[0].reason == "none");
  CHECK(result.generator_latency_ms >= 0);
  CHECK(result.verify_latency_ms >= 0);
}

TEST_CASE("empty generations verify to empty dependencies") {
  auto index = nat_library();
  TempFile mapping("test_empty_mapping.json", "{\"s\": []}");
  GeneratorConfig config;
  config.mapping_path = mapping.path;
  auto result = retrieve_dependencies(index, config, "s");
  CHECK(result.dependencies.empty());
  CHECK(result.dropped.empty());
}

TEST_CASE("ambiguous short names resolve to every owner") {
  auto index = nat_library();
  auto result = verify_candidates(index, "s", {"sqrt"});
  CHECK(result.dependencies ==
        std::vector<std::string>{"Int.sqrt", "Nat.sqrt", "Real.sqrt"});
  CHECK(result.dropped.empty());
}

TEST_CASE("verify_candidates dedupes and reports drop reasons") {
  auto index = nat_library();
  auto result = verify_candidates(
      index, "s", {"Nat.sqrt", "sqrt", "Nat", "zz_nothing", "", "Nat.sqrt"});
  // Nat.sqrt exactly, then sqrt adds the other two owners; repeats add nothing.
  CHECK(result.dependencies ==
        std::vector<std::string>{"Nat.sqrt", "Int.sqrt", "Real.sqrt"});
  REQUIRE(result.dropped.size() == 3);
  CHECK(result.dropped[0].candidate == "Nat");
  CHECK(result.dropped[0].reason == "partial");
  CHECK(result.dropped[1].candidate == "zz_nothing");
  CHECK(result.dropped[1].reason == "none");
  CHECK(result.dropped[2].candidate == "");
  CHECK(result.dropped[2].reason == "invalid");
}

TEST_CASE("no unverified name ever reaches dependencies") {
  auto items = synthetic_library(120, 55);
  auto index = DependencyIndex::build(items);
  SplitMix64 rng(56);
  for (int round = 0; round < 60; ++round) {
    std::vector<std::string> candidates;
    for (int c = 0; c < 8; ++c) {
      if (rng.below(10) < 9) {
        candidates.push_back("garbage_" + std::to_string(rng.next() % 100000));
      } else {
        candidates.push_back(items[rng.below(items.size())].fqn);
      }
    }
    auto result = verify_candidates(index, "s", candidates);
    for (const auto& dep : result.dependencies) {
      bool member = false;
      for (const auto& item : items) member = member || item.fqn == dep;
      CHECK_MESSAGE(member, "leaked: ", dep);
    }
  }
}

TEST_CASE("fnv1a_hex is the documented 64-bit FNV-1a") {
  // Reference values from the FNV specification.
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
}
