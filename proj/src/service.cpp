#include "ddr/service.hpp"

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <thread>

#include <httplib.h>

#include "ddr/errors.hpp"
#include "ddr/index_io.hpp"
#include "ddr/json_io.hpp"

namespace ddr {

using nlohmann::json;

// Bounds concurrent generator calls without capping verification traffic.
class GeneratorGate {
 public:
  explicit GeneratorGate(int slots) : slots_(slots > 0 ? slots : 1) {}

  void acquire() {
    std::unique_lock lock(mutex_);
    cv_.wait(lock, [&] { return slots_ > 0; });
    --slots_;
  }
  void release() {
    {
      std::lock_guard lock(mutex_);
      ++slots_;
    }
    cv_.notify_one();
  }

 private:
  std::mutex mutex_;
  std::condition_variable cv_;
  int slots_;
};

namespace {

const char* env_or(const char* name, const char* fallback) {
  const char* v = std::getenv(name);
  return v && *v ? v : fallback;
}

void reply_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void reply_error(httplib::Response& res, int status, const std::string& message) {
  reply_json(res, status, json{{"error", message}});
}

}  // namespace

ServiceConfig service_config_from_env() {
  ServiceConfig cfg;
  cfg.index_path = env_or("DDR_INDEX_PATH", "");
  std::string bind = env_or("DDR_BIND_ADDR", "");
  if (!bind.empty()) {
    auto colon = bind.rfind(':');
    if (colon == std::string::npos) {
      cfg.host = bind;
    } else {
      cfg.host = bind.substr(0, colon);
      cfg.port = std::atoi(bind.c_str() + colon + 1);
    }
  }
  std::string gen_url = env_or("DDR_GENERATOR_URL", "");
  if (!gen_url.empty()) {
    GeneratorConfig gen;
    gen.kind = GeneratorKind::ExternalHttp;
    gen.endpoint = gen_url;
    std::string key_env = env_or("DDR_GENERATOR_API_KEY_ENV", "");
    if (!key_env.empty()) gen.api_key_env = key_env;
    gen.timeout_ms = std::atoi(env_or("DDR_TIMEOUT_MS", "10000"));
    cfg.generator = std::move(gen);
  }
  return cfg;
}

VerifyService::VerifyService(ServiceConfig config)
    : config_(std::move(config)),
      keywords_(config_.keywords_path ? KeywordList::load_file(*config_.keywords_path)
                                      : KeywordList::defaults()),
      server_(std::make_unique<httplib::Server>()),
      gate_(std::make_unique<GeneratorGate>(config_.generator_concurrency)) {
  try {
    snapshot_ = std::make_shared<const DependencyIndex>(load_index_file(config_.index_path));
  } catch (const Error& e) {
    raise(ErrorCode::IndexLoadError, e.what());
  }
  setup_routes();
}

VerifyService::VerifyService(ServiceConfig config, DependencyIndex index)
    : config_(std::move(config)),
      keywords_(config_.keywords_path ? KeywordList::load_file(*config_.keywords_path)
                                      : KeywordList::defaults()),
      snapshot_(std::make_shared<const DependencyIndex>(std::move(index))),
      server_(std::make_unique<httplib::Server>()),
      gate_(std::make_unique<GeneratorGate>(config_.generator_concurrency)) {
  setup_routes();
}

VerifyService::~VerifyService() {
  if (server_ && server_->is_running()) server_->stop();
}

std::shared_ptr<const DependencyIndex> VerifyService::snapshot() const {
  std::lock_guard lock(snapshot_mutex_);
  return snapshot_;
}

void VerifyService::reload(const std::string& path) {
  std::shared_ptr<const DependencyIndex> fresh;
  try {
    fresh = std::make_shared<const DependencyIndex>(load_index_file(path));
  } catch (const Error& e) {
    raise(ErrorCode::IndexLoadError, e.what());
  }
  std::lock_guard lock(snapshot_mutex_);
  snapshot_ = std::move(fresh);
}

void VerifyService::setup_routes() {
  // Verification calls are cheap and IO-bound, so size the worker pool for
  // connection count rather than core count, and let keep-alive connections
  // serve long request streams instead of reconnecting every few calls.
  server_->new_task_queue = [] {
    unsigned hw = std::thread::hardware_concurrency();
    return new httplib::ThreadPool(std::max(64u, hw > 0 ? 2 * hw : 0u));
  };
  server_->set_keep_alive_max_count(1024);

  if (config_.auth_token) {
    std::string expected = "Bearer " + *config_.auth_token;
    server_->set_pre_routing_handler(
        [expected](const httplib::Request& req, httplib::Response& res) {
          if (req.path == "/v1/healthz") return httplib::Server::HandlerResponse::Unhandled;
          if (req.get_header_value("Authorization") != expected) {
            reply_error(res, 401, "unauthorized");
            return httplib::Server::HandlerResponse::Handled;
          }
          return httplib::Server::HandlerResponse::Unhandled;
        });
  }

  server_->Get("/v1/healthz", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("ok", "text/plain");
  });

  server_->Get("/v1/index/info", [this](const httplib::Request&, httplib::Response& res) {
    reply_json(res, 200, to_json(snapshot()->info()));
  });

  server_->Post("/v1/verify", [this](const httplib::Request& req, httplib::Response& res) {
    json body = json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.is_object() || !body.contains("candidates") ||
        !body["candidates"].is_array()) {
      reply_error(res, 400, "body must be a JSON object with a 'candidates' array");
      return;
    }
    std::vector<std::string> candidates;
    for (const auto& el : body["candidates"]) {
      if (!el.is_string()) {
        reply_error(res, 422, "candidates must be strings");
        return;
      }
      candidates.push_back(el.get<std::string>());
    }
    for (const auto& c : candidates) {
      if (c.empty() || c.find(kDelimiter) != std::string::npos) {
        reply_error(res, 422, "invalid candidate: empty or contains the delimiter byte");
        return;
      }
    }
    reply_json(res, 200, to_json(snapshot()->verify_batch(candidates)));
  });

  server_->Post("/v1/extract", [this](const httplib::Request& req, httplib::Response& res) {
    json body = json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.is_object() || !body.contains("formal_code") ||
        !body["formal_code"].is_string()) {
      reply_error(res, 400, "body must be a JSON object with a 'formal_code' string");
      return;
    }
    auto idx = snapshot();
    CandidateSet cs = extract_candidates(body["formal_code"].get<std::string>(), keywords_);
    json out = to_json(resolve_dependencies(*idx, cs));
    out["candidates"] = cs.candidates;
    reply_json(res, 200, out);
  });

  server_->Post("/v1/retrieve", [this](const httplib::Request& req, httplib::Response& res) {
    json body = json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.is_object() || !body.contains("informal") ||
        !body["informal"].is_string()) {
      reply_error(res, 400, "body must be a JSON object with an 'informal' string");
      return;
    }
    if (!config_.generator) {
      reply_error(res, 502, "no generator configured");
      return;
    }
    gate_->acquire();
    struct Release {
      GeneratorGate* g;
      ~Release() { g->release(); }
    } release{gate_.get()};

    auto idx = snapshot();
    try {
      reply_json(res, 200,
                 to_json(retrieve_dependencies(*idx, *config_.generator,
                                               body["informal"].get<std::string>())));
    } catch (const Error& e) {
      int status = e.code() == ErrorCode::GeneratorTimeout ? 504 : 502;
      reply_error(res, status, e.what());
    }
  });

  server_->Post("/v1/index/reload", [this](const httplib::Request& req, httplib::Response& res) {
    std::string path = config_.index_path;
    if (!req.body.empty()) {
      json body = json::parse(req.body, nullptr, false);
      if (body.is_discarded() || !body.is_object()) {
        reply_error(res, 400, "body must be empty or a JSON object");
        return;
      }
      if (body.contains("path")) {
        if (!body["path"].is_string()) {
          reply_error(res, 400, "'path' must be a string");
          return;
        }
        path = body["path"].get<std::string>();
      }
    }
    if (path.empty()) {
      reply_error(res, 400, "no index path configured or given");
      return;
    }
    try {
      reload(path);
    } catch (const Error& e) {
      reply_error(res, 500, e.what());
      return;
    }
    reply_json(res, 200, to_json(snapshot()->info()));
  });
}

void VerifyService::listen() {
  if (!server_->listen(config_.host, config_.port))
    raise(ErrorCode::BindError,
          "cannot bind " + config_.host + ":" + std::to_string(config_.port));
}

int VerifyService::bind_any_port() {
  int port = server_->bind_to_any_port(config_.host);
  if (port <= 0) raise(ErrorCode::BindError, "cannot bind an ephemeral port on " + config_.host);
  config_.port = port;
  return port;
}

void VerifyService::listen_after_bind() {
  if (!server_->listen_after_bind())
    raise(ErrorCode::BindError, "listen_after_bind failed");
}

bool VerifyService::is_running() const { return server_->is_running(); }

void VerifyService::wait_until_ready() const {
  while (!server_->is_running()) std::this_thread::sleep_for(std::chrono::milliseconds(1));
}

void VerifyService::stop() { server_->stop(); }

}  // namespace ddr
