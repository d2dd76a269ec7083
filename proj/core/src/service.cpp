#include "reqquant/service.hpp"

#include <fstream>
#include <regex>
#include <sstream>
#include <thread>

#include <httplib.h>

#include "reqquant/error.hpp"
#include "reqquant/evaluation.hpp"
#include "reqquant/json_io.hpp"

namespace reqquant {

namespace {

ApiResponse error_response(int status, std::string_view reason, const std::string& message) {
    return {status, {{"error", std::string(reason)}, {"message", message}}};
}

int status_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NotFound: return 404;
        case ErrorKind::SessionExhausted:
        case ErrorKind::SessionFinalized:
        case ErrorKind::DuplicateId: return 409;
        case ErrorKind::Transport:
        case ErrorKind::BadResponse: return 502;
        case ErrorKind::Io: return 500;
        default: return 422;
    }
}

std::string required_text(const nlohmann::json& body) {
    if (!body.is_object() || !body.contains("text") || !body["text"].is_string()) {
        throw Error(ErrorKind::Parse, "body needs a string 'text'");
    }
    auto text = body["text"].get<std::string>();
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) throw Error(ErrorKind::Parse, "'text' is empty");
    return text;
}

}  // namespace

struct Service::Server {
    httplib::Server http;
    std::thread thread;
    int port = 0;
};

void ServiceConfig::validate() const {
    if (port < 0 || port > 65535) throw Error(ErrorKind::InvalidArgument, "port out of range");
    if (default_rounds == 0) throw Error(ErrorKind::InvalidArgument, "default round bound must be positive");
}

Service::Service(ServiceConfig config, std::shared_ptr<KnowledgeStore> store)
    : config_(std::move(config)), pipeline_(config_.pipeline, std::move(store)), server_(std::make_unique<Server>()) {
    config_.validate();
    if (config_.session_snapshot_path && std::filesystem::exists(*config_.session_snapshot_path)) {
        std::ifstream in(*config_.session_snapshot_path);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            registry_.insert(Session::from_json(nlohmann::json::parse(line)));
        }
    }
}

Service::Service(ServiceConfig config)
    : Service(config, [&] {
          if (config.store_path.empty()) throw Error(ErrorKind::InvalidArgument, "service needs a store path");
          return std::make_shared<KnowledgeStore>(KnowledgeStore::load(config.store_path));
      }()) {}

Service::~Service() {
    stop();
}

ApiResponse Service::handle(const std::string& method, const std::string& path, const std::string& body) {
    static const std::regex session_re(R"(^/v1/sessions/([^/]+)(/answer|/finalize)?$)");
    try {
        nlohmann::json json_body = nlohmann::json::object();
        if (method == "POST" && !body.empty()) {
            try {
                json_body = nlohmann::json::parse(body);
            } catch (const nlohmann::json::exception& e) {
                return error_response(400, "malformed-json", e.what());
            }
        }
        if (path == "/v1/health" && method == "GET") return {200, {{"status", "ok"}}};
        if (path == "/v1/quantify" && method == "POST") return quantify(json_body);
        if (path == "/v1/sessions" && method == "POST") return create_session(json_body);
        if (path == "/v1/evaluate" && method == "POST") return evaluate(json_body);
        std::smatch m;
        if (std::regex_match(path, m, session_re)) {
            const std::string id = m[1].str();
            const std::string action = m[2].str();
            if (action.empty() && method == "GET") return get_session(id);
            if (action == "/answer" && method == "POST") return answer_session(id, json_body);
            if (action == "/finalize" && method == "POST") return finalize_session(id);
            return error_response(405, "method-not-allowed", method + " " + path);
        }
        return error_response(404, "not-found", "no route for " + method + " " + path);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Parse) return error_response(400, e.reason(), e.what());
        return error_response(status_for(e.kind()), e.reason(), e.what());
    } catch (const std::exception& e) {
        return error_response(500, "internal", e.what());
    }
}

ApiResponse Service::quantify(const nlohmann::json& body) {
    const std::string text = required_text(body);
    auto draft = pipeline_.quantify(text);
    return {200,
                {{"pattern", std::string(to_string(draft.classification.pattern))},
                 {"threshold", draft.threshold},
                 {"points", to_json(draft.quantification)},
                 {"anchor", draft.classification.best_anchor.phrase},
                 {"similarity", draft.classification.similarity},
                 {"exact_match", draft.classification.exact_match}}};
}

ApiResponse Service::create_session(const nlohmann::json& body) {
    const std::string text = required_text(body);
    std::size_t rounds = config_.default_rounds;
    if (body.contains("n")) {
        if (!body["n"].is_number_integer() || body["n"].get<long long>() < 1) {
            throw Error(ErrorKind::Parse, "'n' must be a positive integer");
        }
        rounds = body["n"].get<std::size_t>();
    }
    Session session = start_session(registry_.next_id(), text, pipeline_, rounds);
    auto snapshot = session.to_json();
    registry_.insert(std::move(session));
    return {201, snapshot};
}

ApiResponse Service::get_session(const std::string& id) {
    auto s = registry_.snapshot(id);
    if (!s) return error_response(404, "not-found", "no session '" + id + "'");
    return {200, s->to_json()};
}

ApiResponse Service::answer_session(const std::string& id, const nlohmann::json& body) {
    const nlohmann::json& path_json = body.contains("path") ? body["path"] : body;
    AnswerPath path;
    try {
        path = answer_path_from_json(path_json);
    } catch (const Error& e) {
        return error_response(422, "invalid-path", e.what());
    }
    return registry_.mutate(id, [&](Session& s) {
        auto outcome = s.answer(path);
        s = std::move(outcome.session);
        return ApiResponse{200, {{"session", s.to_json()}, {"operation", to_json(outcome.operation)}}};
    });
}

ApiResponse Service::finalize_session(const std::string& id) {
    return registry_.mutate(id, [&](Session& s) {
        auto example = finalize(s, pipeline_.store());
        return ApiResponse{200, {{"example_id", example.id}, {"preferred", to_json(example.preferred)}}};
    });
}

ApiResponse Service::evaluate(const nlohmann::json& body) {
    if (!body.is_object()) throw Error(ErrorKind::Parse, "body must be a JSON object");
    std::vector<DatasetRecord> dataset;
    if (body.contains("records")) {
        if (!body["records"].is_array()) throw Error(ErrorKind::Parse, "'records' must be an array");
        std::string lines;
        for (const auto& r : body["records"]) lines += r.dump() + "\n";
        dataset = parse_dataset(lines, "records");
    } else if (body.contains("dataset") && body["dataset"].is_string()) {
        dataset = import_dataset(body["dataset"].get<std::string>());
    } else {
        throw Error(ErrorKind::Parse, "body needs 'records' or 'dataset'");
    }
    if (!body.contains("produced") || !body["produced"].is_object()) {
        throw Error(ErrorKind::Parse, "body needs a 'produced' object mapping ids to points");
    }
    std::map<std::string, Quantification> produced;
    for (const auto& [id, pts] : body["produced"].items()) produced.emplace(id, quantification_from_json(pts));
    try {
        return {200, to_json(evaluate_produced(dataset, produced))};
    } catch (const Error& e) {
        return error_response(422, e.reason(), e.what());
    }
}

void Service::bind() {
    auto& http = server_->http;
    auto forward = [this](const httplib::Request& req, httplib::Response& res) {
        auto out = handle(req.method, req.path, req.body);
        res.status = out.status;
        res.set_content(out.body.dump(), "application/json");
    };
    http.set_default_headers({{"Access-Control-Allow-Origin", config_.cors_origin},
                              {"Access-Control-Allow-Headers", "Content-Type"},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
    http.Get(R"(/v1/.*)", forward);
    http.Post(R"(/v1/.*)", forward);
    http.Options(R"(/v1/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

    if (config_.port == 0) {
        server_->port = http.bind_to_any_port(config_.host);
    } else {
        server_->port = http.bind_to_port(config_.host, config_.port) ? config_.port : -1;
    }
    if (server_->port < 0) throw Error(ErrorKind::Io, "cannot bind " + config_.host + ":" + std::to_string(config_.port));
}

void Service::listen() {
    bind();
    server_->http.listen_after_bind();
}

int Service::start() {
    bind();
    server_->thread = std::thread([this] { server_->http.listen_after_bind(); });
    server_->http.wait_until_ready();
    return server_->port;
}

void Service::stop() {
    if (!server_) return;
    if (server_->http.is_running()) server_->http.stop();
    if (server_->thread.joinable()) server_->thread.join();
    persist_sessions();
}

int Service::bound_port() const noexcept {
    return server_ ? server_->port : -1;
}

void Service::persist_sessions() const {
    if (!config_.session_snapshot_path) return;
    std::ofstream out(*config_.session_snapshot_path, std::ios::trunc);
    for (const auto& s : registry_.snapshots()) out << s.to_json().dump() << "\n";
}

}  // namespace reqquant
