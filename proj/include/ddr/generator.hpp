#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ddr/extract.hpp"
#include "ddr/index.hpp"

namespace ddr {

enum class GeneratorKind { FileStub, ExternalHttp };

// Contract for the candidate generator. The generator itself (an LLM, a
// replayed prediction file, anything) lives outside this repository; we ship
// the file stub and the HTTP client.
struct GeneratorConfig {
  GeneratorKind kind = GeneratorKind::FileStub;
  std::string mapping_path;                     // file_stub: JSON informal -> candidates
  std::string endpoint;                         // external_http: full URL
  std::optional<std::string> api_key_env;       // env var holding a bearer token
  std::optional<std::string> prompt_template_path;  // "{{informal}}" placeholder
  int timeout_ms = 10000;
  int max_retries = 0;  // extra attempts after a timeout
};

// Accepts a JSON array of strings, an object carrying one under "candidates"
// or "dependencies", or plain newline-/comma-separated text; strips backticks,
// quotes, bullets and whitespace. Throws UnparseableResponse for JSON of any
// other shape.
std::vector<std::string> parse_candidate_response(const std::string& body);

// file_stub: looks the statement up verbatim, then by the 16-hex-digit FNV-1a
// hash of it; a missing entry yields {} plus a warning. external_http: renders
// the prompt template, POSTs it, parses the response. Throws GeneratorTimeout
// (after retries), GeneratorHttpError, UnparseableResponse.
std::vector<std::string> generate_candidates(const GeneratorConfig& config,
                                             const std::string& informal,
                                             std::vector<std::string>* warnings = nullptr);

struct VerifiedDependencies {
  std::string informal;
  std::vector<std::string> dependencies;  // exact library fqns, first-resolution order
  std::vector<DroppedCandidate> dropped;  // (candidate, status) for non-resolving ones
  double generator_latency_ms = 0;
  double verify_latency_ms = 0;
};

// The full generation-plus-verification round trip for one statement:
// generate, verify every candidate against the index, keep what resolves.
VerifiedDependencies retrieve_dependencies(const DependencyIndex& index,
                                           const GeneratorConfig& config,
                                           const std::string& informal,
                                           std::vector<std::string>* warnings = nullptr);

// Verification half only, reusable without a generator.
VerifiedDependencies verify_candidates(const DependencyIndex& index,
                                       const std::string& informal,
                                       const std::vector<std::string>& candidates);

std::string fnv1a_hex(const std::string& s);

}  // namespace ddr
