#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "ddr/extract.hpp"
#include "ddr/generator.hpp"
#include "ddr/index.hpp"

namespace httplib {
class Server;
}

namespace ddr {

struct ServiceConfig {
  std::string index_path;
  std::string host = "127.0.0.1";
  int port = 8787;
  std::optional<GeneratorConfig> generator;
  std::optional<std::string> auth_token;  // bearer token; healthz stays open
  std::optional<std::string> keywords_path;
  int generator_concurrency = 8;
};

// Reads DDR_INDEX_PATH, DDR_BIND_ADDR (host:port), DDR_GENERATOR_URL,
// DDR_GENERATOR_API_KEY_ENV and DDR_TIMEOUT_MS into a config; explicit flags
// are applied on top by the CLI.
ServiceConfig service_config_from_env();

// HTTP face of the verification pipeline. All requests run against an
// immutable index snapshot; reload swaps the snapshot atomically while
// in-flight requests finish on the old one.
class VerifyService {
 public:
  // Loads the index from config.index_path (throws IndexLoadError).
  explicit VerifyService(ServiceConfig config);
  // For tests and embedding: use an already-built index.
  VerifyService(ServiceConfig config, DependencyIndex index);
  ~VerifyService();

  VerifyService(const VerifyService&) = delete;
  VerifyService& operator=(const VerifyService&) = delete;

  // Blocking; throws BindError if the address cannot be bound.
  void listen();
  // Binds an ephemeral port on config.host, returns it; follow with
  // listen_after_bind() on a worker thread.
  int bind_any_port();
  void listen_after_bind();
  bool is_running() const;
  void wait_until_ready() const;
  void stop();

  // Atomic snapshot replacement; throws IndexLoadError and keeps the old
  // snapshot on failure.
  void reload(const std::string& path);

  std::shared_ptr<const DependencyIndex> snapshot() const;
  const ServiceConfig& config() const { return config_; }

 private:
  void setup_routes();

  ServiceConfig config_;
  KeywordList keywords_;
  mutable std::mutex snapshot_mutex_;
  std::shared_ptr<const DependencyIndex> snapshot_;
  std::unique_ptr<httplib::Server> server_;
  std::unique_ptr<class GeneratorGate> gate_;
};

}  // namespace ddr
