#include "ddr/generator.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <unordered_set>

#include <httplib.h>

#include "ddr/errors.hpp"
#include "ddr/rng.hpp"
#include "ddr/text.hpp"

namespace ddr {

using nlohmann::json;

std::string fnv1a_hex(const std::string& s) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(s.data(), s.size())));
  return buf;
}

namespace {

std::string clean_piece(std::string_view piece) {
  std::string_view s = text::trim(piece);
  while (s.starts_with("- ") || s.starts_with("* ")) s = text::trim(s.substr(2));
  while (!s.empty() && (s.front() == '`' || s.front() == '"')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == '`' || s.back() == '"' || s.back() == ',')) s.remove_suffix(1);
  return std::string(text::trim(s));
}

std::vector<std::string> from_json_array(const json& arr) {
  std::vector<std::string> out;
  for (const auto& el : arr) {
    if (!el.is_string())
      raise(ErrorCode::UnparseableResponse, "candidate array contains a non-string");
    std::string c = clean_piece(el.get<std::string>());
    if (!c.empty()) out.push_back(std::move(c));
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::IoError, "cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

}  // namespace

std::vector<std::string> parse_candidate_response(const std::string& body) {
  std::string_view s = text::trim(body);

  // Strip a ``` fence pair, tolerating a language tag on the opening line.
  if (s.starts_with("```")) {
    auto nl = s.find('\n');
    if (nl != std::string_view::npos && s.ends_with("```"))
      s = text::trim(s.substr(nl + 1, s.size() - nl - 1 - 3));
  }

  json parsed = json::parse(s.begin(), s.end(), nullptr, false);
  if (!parsed.is_discarded()) {
    if (parsed.is_array()) return from_json_array(parsed);
    if (parsed.is_object()) {
      for (const char* key : {"candidates", "dependencies"})
        if (parsed.contains(key) && parsed[key].is_array()) return from_json_array(parsed[key]);
      raise(ErrorCode::UnparseableResponse,
            "JSON object has no candidates/dependencies array");
    }
    if (!parsed.is_string())
      raise(ErrorCode::UnparseableResponse, "JSON response is not an array of identifiers");
    s = parsed.get_ref<const json::string_t&>();
  }

  // Plain text: one identifier per line, or one comma-separated line.
  std::vector<std::string> pieces;
  auto lines = text::split(s, '\n');
  std::vector<std::string> nonempty;
  for (auto& l : lines)
    if (!text::trim(l).empty()) nonempty.push_back(l);
  if (nonempty.size() == 1 && nonempty[0].find(',') != std::string::npos)
    pieces = text::split(nonempty[0], ',');
  else
    pieces = std::move(nonempty);

  std::vector<std::string> out;
  for (const auto& p : pieces) {
    std::string c = clean_piece(p);
    if (!c.empty()) out.push_back(std::move(c));
  }
  return out;
}

namespace {

std::vector<std::string> stub_candidates(const GeneratorConfig& config,
                                         const std::string& informal,
                                         std::vector<std::string>* warnings) {
  if (config.mapping_path.empty())
    raise(ErrorCode::IoError, "file_stub generator has no mapping path");
  json mapping = json::parse(read_file(config.mapping_path), nullptr, false);
  if (mapping.is_discarded() || !mapping.is_object())
    raise(ErrorCode::UnparseableResponse, "stub mapping is not a JSON object");

  const json* entry = nullptr;
  if (auto it = mapping.find(informal); it != mapping.end()) entry = &*it;
  if (!entry)
    if (auto it = mapping.find(fnv1a_hex(informal)); it != mapping.end()) entry = &*it;
  if (!entry) {
    if (warnings) warnings->push_back("stub mapping has no entry for this statement");
    return {};
  }
  if (entry->is_array()) return from_json_array(*entry);
  if (entry->is_string()) return parse_candidate_response(entry->get<std::string>());
  raise(ErrorCode::UnparseableResponse, "stub mapping entry is neither array nor string");
}

struct SplitUrl {
  std::string base;  // scheme://host[:port]
  std::string path;  // /path or /
};

SplitUrl split_url(const std::string& url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos)
    raise(ErrorCode::GeneratorHttpError, "endpoint is not a URL: " + url);
  auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

std::vector<std::string> http_candidates(const GeneratorConfig& config,
                                         const std::string& informal) {
  if (config.endpoint.empty())
    raise(ErrorCode::GeneratorHttpError, "external_http generator has no endpoint");

  std::string prompt = informal;
  if (config.prompt_template_path) {
    prompt = read_file(*config.prompt_template_path);
    const std::string placeholder = "{{informal}}";
    for (auto at = prompt.find(placeholder); at != std::string::npos;
         at = prompt.find(placeholder, at + informal.size()))
      prompt.replace(at, placeholder.size(), informal);
  }

  SplitUrl url = split_url(config.endpoint);
  httplib::Client client(url.base);
  auto timeout = std::chrono::milliseconds(std::max(1, config.timeout_ms));
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);

  httplib::Headers headers;
  if (config.api_key_env) {
    const char* key = std::getenv(config.api_key_env->c_str());
    if (key && *key) headers.emplace("Authorization", std::string("Bearer ") + key);
  }

  int attempts = 1 + std::max(0, config.max_retries);
  for (int attempt = 0; attempt < attempts; ++attempt) {
    auto res = client.Post(url.path, headers, prompt, "text/plain; charset=utf-8");
    if (res) {
      if (res->status / 100 != 2)
        raise(ErrorCode::GeneratorHttpError,
              "generator returned HTTP " + std::to_string(res->status));
      return parse_candidate_response(res->body);
    }
    bool timeout_like = res.error() == httplib::Error::ConnectionTimeout ||
                        res.error() == httplib::Error::Read ||
                        res.error() == httplib::Error::Write;
    if (!timeout_like)
      raise(ErrorCode::GeneratorHttpError,
            "generator transport failure: " + httplib::to_string(res.error()));
  }
  raise(ErrorCode::GeneratorTimeout, "generator timed out after " +
                                         std::to_string(attempts) + " attempt(s) of " +
                                         std::to_string(config.timeout_ms) + " ms");
}

}  // namespace

std::vector<std::string> generate_candidates(const GeneratorConfig& config,
                                             const std::string& informal,
                                             std::vector<std::string>* warnings) {
  switch (config.kind) {
    case GeneratorKind::FileStub: return stub_candidates(config, informal, warnings);
    case GeneratorKind::ExternalHttp: return http_candidates(config, informal);
  }
  raise(ErrorCode::UnparseableResponse, "unknown generator kind");
}

VerifiedDependencies verify_candidates(const DependencyIndex& index, const std::string& informal,
                                       const std::vector<std::string>& candidates) {
  auto t0 = std::chrono::steady_clock::now();
  VerifiedDependencies out;
  out.informal = informal;

  std::vector<MatchResult> results = index.verify_batch(candidates);
  std::unordered_set<std::string> emitted;
  for (const auto& r : results) {
    if (!r.error.empty()) {
      out.dropped.push_back(DroppedCandidate{r.query, "invalid"});
      continue;
    }
    if (!r.resolved.empty()) {
      for (const auto& fqn : r.resolved)
        if (emitted.insert(fqn).second) out.dependencies.push_back(fqn);
    } else {
      out.dropped.push_back(DroppedCandidate{r.query, match_status_name(r.status)});
    }
  }
  out.verify_latency_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

VerifiedDependencies retrieve_dependencies(const DependencyIndex& index,
                                           const GeneratorConfig& config,
                                           const std::string& informal,
                                           std::vector<std::string>* warnings) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> raw = generate_candidates(config, informal, warnings);
  double gen_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  std::vector<std::string> candidates;
  candidates.reserve(raw.size());
  for (const auto& c : raw) {
    std::string t(text::trim(c));
    if (!t.empty()) candidates.push_back(std::move(t));
  }

  VerifiedDependencies out = verify_candidates(index, informal, candidates);
  out.generator_latency_ms = gen_ms;
  return out;
}

}  // namespace ddr
