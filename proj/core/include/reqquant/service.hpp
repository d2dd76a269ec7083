#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "reqquant/pipeline.hpp"
#include "reqquant/session.hpp"
#include "reqquant/store.hpp"

namespace reqquant {

struct ServiceConfig {
    std::string host = "127.0.0.1";
    int port = 8080;  // 0 picks a free port
    std::filesystem::path store_path;
    PipelineConfig pipeline;
    std::size_t default_rounds = kDefaultMaxRounds;
    std::string cors_origin = "*";
    // Live sessions are written here on stop() and read back on start.
    std::optional<std::filesystem::path> session_snapshot_path;

    void validate() const;
};

struct ApiResponse {
    int status = 200;
    nlohmann::json body;
};

// JSON API under /v1:
//   GET  /v1/health
//   POST /v1/quantify                {text}
//   POST /v1/sessions                {text, n?}
//   GET  /v1/sessions/{id}
//   POST /v1/sessions/{id}/answer    {path}
//   POST /v1/sessions/{id}/finalize
//   POST /v1/evaluate                {dataset | records, produced}
// Errors carry {"error": <reason code>, "message": ...}.
class Service {
public:
    Service(ServiceConfig config, std::shared_ptr<KnowledgeStore> store);
    explicit Service(ServiceConfig config);
    ~Service();

    Service(const Service&) = delete;
    Service& operator=(const Service&) = delete;

    // Transport-free dispatch; the HTTP server forwards to this.
    ApiResponse handle(const std::string& method, const std::string& path, const std::string& body);

    // Binds and serves until stop(). Returns the bound port via bound_port()
    // once listening. listen() blocks; start() runs on a background thread.
    void listen();
    int start();
    void stop();
    int bound_port() const noexcept;

    const SessionRegistry& sessions() const noexcept { return registry_; }
    KnowledgeStore& store() const noexcept { return pipeline_.store(); }

private:
    ApiResponse quantify(const nlohmann::json& body);
    ApiResponse create_session(const nlohmann::json& body);
    ApiResponse get_session(const std::string& id);
    ApiResponse answer_session(const std::string& id, const nlohmann::json& body);
    ApiResponse finalize_session(const std::string& id);
    ApiResponse evaluate(const nlohmann::json& body);
    void persist_sessions() const;
    void bind();

    struct Server;

    ServiceConfig config_;
    Pipeline pipeline_;
    SessionRegistry registry_;
    std::unique_ptr<Server> server_;
};

}  // namespace reqquant
