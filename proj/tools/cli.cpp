#include "cli.hpp"

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <pthread.h>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "reqquant/error.hpp"
#include "reqquant/evaluation.hpp"
#include "reqquant/json_io.hpp"
#include "reqquant/pipeline.hpp"
#include "reqquant/service.hpp"
#include "reqquant/session.hpp"
#include "reqquant/store.hpp"

namespace reqquant::cli {

namespace {

using nlohmann::json;

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string> non_empty_lines(const std::string& contents) {
    std::vector<std::string> lines;
    std::istringstream in(contents);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") != std::string::npos) lines.push_back(line);
    }
    return lines;
}

ProviderConfig provider_from_json(const json& j) {
    ProviderConfig c;
    const auto kind = j.value("provider", std::string("builtin"));
    if (kind == "remote") {
        c.kind = ProviderKind::Remote;
    } else if (kind != "builtin") {
        throw Error(ErrorKind::Parse, "unknown embedding provider '" + kind + "'");
    }
    c.endpoint = j.value("endpoint", std::string());
    c.dimension = j.value("dimension", c.dimension);
    c.timeout = std::chrono::milliseconds(j.value("timeout_ms", static_cast<long long>(c.timeout.count())));
    c.cache_enabled = j.value("cache", true);
    c.validate();
    return c;
}

// Settings shared by every command, merged from --config and flags.
struct Settings {
    json file = json::object();
    std::string store_flag;
    std::string config_path;

    void load() {
        if (config_path.empty()) return;
        try {
            file = json::parse(read_text_file(config_path));
        } catch (const json::exception& e) {
            throw Error(ErrorKind::Parse, "config " + config_path + ": " + e.what());
        }
        if (!file.is_object()) throw Error(ErrorKind::Parse, "config " + config_path + " must be a JSON object");
    }

    std::filesystem::path store_path() const {
        if (!store_flag.empty()) return store_flag;
        if (file.contains("store")) return file["store"].get<std::string>();
        if (const char* env = std::getenv("REQQUANT_STORE"); env && *env) return env;
        return {};
    }

    std::shared_ptr<KnowledgeStore> open_store() const {
        const auto path = store_path();
        if (path.empty()) return std::make_shared<KnowledgeStore>();
        return std::make_shared<KnowledgeStore>(KnowledgeStore::load(path));
    }

    PipelineConfig pipeline() const {
        PipelineConfig c;
        if (file.contains("embedding")) c.classification_provider = provider_from_json(file["embedding"]);
        c.retrieval_provider = file.contains("retrieval_embedding") ? provider_from_json(file["retrieval_embedding"])
                                                                    : c.classification_provider;
        if (file.contains("extraction")) {
            const auto& e = file["extraction"];
            const auto mode = e.value("mode", std::string("rules"));
            if (mode == "remote-llm") {
                c.extraction.mode = ExtractionMode::RemoteLlm;
            } else if (mode != "rules") {
                throw Error(ErrorKind::Parse, "unknown extraction mode '" + mode + "'");
            }
            c.extraction.endpoint = e.value("endpoint", std::string());
            c.extraction.delta_fraction = e.value("delta", c.extraction.delta_fraction);
            c.extraction.timeout =
                std::chrono::milliseconds(e.value("timeout_ms", static_cast<long long>(c.extraction.timeout.count())));
        }
        if (file.contains("anchors")) c.anchors = load_anchors(file["anchors"].get<std::string>());
        c.extraction.validate();
        return c;
    }
};

std::string points_string(const Quantification& q) {
    return to_json(q).dump();
}

std::string fixed(double v) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(3) << v;
    return s.str();
}

std::string mean_dev(const Aggregate& a) {
    return fixed(a.mean) + " (" + fixed(a.deviation) + ")";
}

void print_aggregate_row(std::ostream& out, const std::string& label, const MetricAggregates& a) {
    out << std::left << std::setw(12) << label << std::setw(18) << mean_dev(a.p2p) << std::setw(18)
        << mean_dev(a.chebyshev) << std::setw(18) << mean_dev(a.rmse) << mean_dev(a.iad) << "\n";
}

void print_aggregate_header(std::ostream& out, const std::string& label) {
    out << std::left << std::setw(12) << label << std::setw(18) << "P2P" << std::setw(18) << "Chebyshev"
        << std::setw(18) << "RMSE" << "IAD" << "\n";
}

// --- quantify ---------------------------------------------------------------

struct QuantifyArgs {
    std::string text;
    std::string file;
    bool no_analogy = false;
    bool json_out = false;
};

json quantify_json(const Pipeline::Result& r) {
    json ops = json::array();
    for (const auto& op : r.reasoning.operations) ops.push_back(to_json(op));
    return {{"pattern", std::string(to_string(r.draft.classification.pattern))},
            {"threshold", r.draft.threshold},
            {"anchor", r.draft.classification.best_anchor.phrase},
            {"initial", to_json(r.draft.quantification)},
            {"reasoned", to_json(r.reasoning.reasoned)},
            {"analogy", r.reasoning.example_id ? json(*r.reasoning.example_id) : json(nullptr)},
            {"operations", ops}};
}

int cmd_quantify(const Settings& settings, const QuantifyArgs& a, std::ostream& out) {
    std::vector<std::string> texts;
    if (!a.text.empty()) texts.push_back(a.text);
    if (!a.file.empty()) {
        for (auto& line : non_empty_lines(read_text_file(a.file))) texts.push_back(std::move(line));
    }
    if (texts.empty()) throw Error(ErrorKind::EmptyText, "no requirement text given");

    auto config = settings.pipeline();
    config.use_analogy = !a.no_analogy;
    const Pipeline pipeline(config, a.no_analogy ? std::make_shared<KnowledgeStore>() : settings.open_store());
    for (const auto& text : texts) {
        const auto r = pipeline.run(text);
        if (a.json_out) {
            out << quantify_json(r).dump() << "\n";
            continue;
        }
        out << "pattern:   " << to_string(r.draft.classification.pattern) << " (anchor \""
            << r.draft.classification.best_anchor.phrase << "\")\n"
            << "threshold: " << json(r.draft.threshold).dump() << "\n"
            << "points:    " << points_string(r.draft.quantification) << "\n";
        if (!a.no_analogy) {
            out << "reasoned:  " << points_string(r.reasoning.reasoned);
            if (r.reasoning.example_id) out << " (analogy " << *r.reasoning.example_id << ")";
            out << "\n";
        }
    }
    return kExitOk;
}

// --- session ----------------------------------------------------------------

struct SessionArgs {
    std::string text;
    std::size_t rounds = kDefaultMaxRounds;
    std::string start;
    std::string script;
    bool finalize = false;
    bool json_out = false;
};

const char* path_key(const std::string& question_id) {
    if (question_id == "precision-action") return "action";
    if (question_id == "interval") return "interval";
    if (question_id == "intent") return "intent";
    if (question_id == "endpoint") return "endpoint";
    if (question_id == "field") return "field";
    return "direction";
}

void print_question(std::ostream& out, const QuestionNode& q) {
    out << q.text << "\n";
    for (const auto& c : q.choices) out << "  " << c.value << ") " << c.label << "\n";
}

// Each input line is either a full AnswerPath JSON object or the value of one
// choice for the question currently shown.
int cmd_session(const Settings& settings, const SessionArgs& a, std::istream& in, std::ostream& out,
                std::ostream& err) {
    if (a.rounds == 0) throw Error(ErrorKind::InvalidArgument, "--rounds must be positive");
    auto store = settings.open_store();
    const Pipeline pipeline(settings.pipeline(), store);
    Session session = start_session("cli", a.text, pipeline, a.rounds);
    if (!a.start.empty()) {
        Quantification seed = quantification_from_json(json::parse(a.start));
        Session seeded("cli", a.text, session.pattern(), session.initial(), std::move(seed), a.rounds);
        seeded.set_analogy_id(session.analogy_id());
        session = std::move(seeded);
    }

    std::ifstream script_file;
    if (!a.script.empty()) {
        script_file.open(a.script);
        if (!script_file) throw Error(ErrorKind::Io, "cannot open answer script " + a.script);
    }
    std::istream& input = a.script.empty() ? in : script_file;

    out << "pattern: " << to_string(session.pattern()) << "\n";
    out << "initial: " << points_string(session.initial()) << "\n";
    out << "round 0: " << points_string(session.current()) << "\n";

    json partial = json::object();
    std::string line;
    while (!session.exhausted()) {
        const auto question = session.current_question(answer_path_from_json(partial));
        if (question) print_question(out, *question);
        if (!std::getline(input, line)) break;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        if (line.substr(first) == "done") break;

        try {
            if (line[first] == '{') {
                partial = json::parse(line);
            } else {
                const std::string token = line.substr(first, line.find_last_not_of(" \t") - first + 1);
                const char* key = path_key(question ? question->id : "");
                if (std::string(key) == "interval") {
                    partial[key] = std::stoul(token);
                } else {
                    partial[key] = token;
                }
            }
            const auto path = answer_path_from_json(partial);
            if (session.current_question(path)) continue;  // more questions on this branch
            partial = json::object();
            auto outcome = session.answer(path);
            session = std::move(outcome.session);
            out << "round " << session.round() << ": " << points_string(session.current()) << "\n";
        } catch (const Error& e) {
            err << "rejected: " << e.reason() << ": " << e.what() << "\n";
            partial = json::object();
        } catch (const std::exception& e) {
            err << "rejected: " << e.what() << "\n";
            partial = json::object();
        }
    }

    if (a.finalize) {
        const auto ex = finalize(session, *store);
        out << "stored: " << ex.id << "\n";
    }
    if (a.json_out) out << session.to_json().dump() << "\n";
    out << "final: " << points_string(session.current()) << "\n";
    return kExitOk;
}

// --- evaluate ---------------------------------------------------------------

struct EvaluateArgs {
    std::string dataset;
    std::string produced;
    bool pipeline = false;
    std::string script;
    std::size_t rounds = kDefaultMaxRounds;
    std::size_t repeats = 1;
    bool json_out = false;
};

std::map<std::string, Quantification> load_produced(const std::string& path) {
    const std::string contents = read_text_file(path);
    std::map<std::string, Quantification> produced;
    const json whole = json::parse(contents, nullptr, false);
    if (!whole.is_discarded() && whole.is_object() && !whole.contains("id")) {
        for (const auto& [id, pts] : whole.items()) produced.emplace(id, quantification_from_json(pts));
        return produced;
    }
    std::size_t line_no = 0;
    for (const auto& line : non_empty_lines(contents)) {
        ++line_no;
        try {
            const auto j = json::parse(line);
            produced.emplace(j.at("id").get<std::string>(), quantification_from_json(j.at("points")));
        } catch (const json::exception& e) {
            throw Error(ErrorKind::Parse, path + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return produced;
}

void print_report(std::ostream& out, const EvaluationReport& report) {
    out << std::left << std::setw(16) << "id" << std::setw(10) << "P2P" << std::setw(11) << "Chebyshev"
        << std::setw(10) << "RMSE" << std::setw(10) << "IAD" << "points\n";
    for (const auto& r : report.records) {
        out << std::left << std::setw(16) << r.id << std::setw(10) << fixed(r.report.p2p) << std::setw(11)
            << fixed(r.report.chebyshev) << std::setw(10) << fixed(r.report.rmse) << std::setw(10)
            << fixed(r.report.iad) << points_string(r.produced) << "\n";
    }
}

int cmd_evaluate(const Settings& settings, const EvaluateArgs& a, std::ostream& out) {
    if (a.repeats == 0) throw Error(ErrorKind::InvalidArgument, "--repeats must be positive");
    if (a.produced.empty() == !a.pipeline) {
        throw Error(ErrorKind::InvalidArgument, "give exactly one of --produced or --pipeline");
    }
    const auto dataset = import_dataset(a.dataset);

    std::vector<EvaluationReport> runs;
    if (a.pipeline) {
        const auto script = a.script.empty() ? std::vector<ScriptedAnswer>{} : load_answer_script(a.script);
        const Pipeline pipeline(settings.pipeline(), settings.open_store());
        for (std::size_t k = 0; k < a.repeats; ++k) runs.push_back(evaluate_pipeline(dataset, pipeline, script, a.rounds));
    } else {
        const auto produced = load_produced(a.produced);
        for (std::size_t k = 0; k < a.repeats; ++k) runs.push_back(evaluate_produced(dataset, produced));
    }

    // One repeat reports spread across records; several report spread across
    // the per-repeat means.
    MetricAggregates aggregates = runs.front().aggregates;
    if (runs.size() > 1) {
        std::vector<double> p2p, cheb, rmse_v, iad_v;
        for (const auto& r : runs) {
            p2p.push_back(r.aggregates.p2p.mean);
            cheb.push_back(r.aggregates.chebyshev.mean);
            rmse_v.push_back(r.aggregates.rmse.mean);
            iad_v.push_back(r.aggregates.iad.mean);
        }
        aggregates = {aggregate(p2p), aggregate(cheb), aggregate(rmse_v), aggregate(iad_v)};
    }

    if (a.json_out) {
        auto j = to_json(runs.front());
        j["aggregate"] = to_json(aggregates);
        j["repeats"] = a.repeats;
        out << j.dump() << "\n";
        return kExitOk;
    }
    print_report(out, runs.front());
    out << "\n";
    print_aggregate_header(out, "aggregate");
    print_aggregate_row(out, "mean (dev)", aggregates);
    return kExitOk;
}

// --- sweep ------------------------------------------------------------------

struct SweepArgs {
    std::string param;
    std::string values;
    std::string dataset;
    std::string script;
    std::size_t rounds = kDefaultMaxRounds;
    bool json_out = false;
};

// "1,2,3" or an inclusive integer range "1..9".
std::vector<double> parse_values(const std::string& spec) {
    std::vector<double> values;
    if (const auto dots = spec.find(".."); dots != std::string::npos) {
        const int lo = std::stoi(spec.substr(0, dots));
        const int hi = std::stoi(spec.substr(dots + 2));
        if (hi < lo) throw Error(ErrorKind::InvalidArgument, "empty range " + spec);
        for (int v = lo; v <= hi; ++v) values.push_back(v);
        return values;
    }
    std::stringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        try {
            values.push_back(std::stod(item, &used));
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos) {
            throw Error(ErrorKind::InvalidArgument, "bad value '" + item + "' in --values");
        }
    }
    if (values.empty()) throw Error(ErrorKind::InvalidArgument, "--values is empty");
    return values;
}

int cmd_sweep(const Settings& settings, const SweepArgs& a, std::ostream& out) {
    SweepParam param;
    if (a.param == "N" || a.param == "n") {
        param = SweepParam::MaxRounds;
    } else if (a.param == "delta") {
        param = SweepParam::Delta;
    } else {
        throw Error(ErrorKind::InvalidArgument, "unknown sweep parameter '" + a.param + "' (use N or delta)");
    }
    const auto values = parse_values(a.values);
    const auto dataset = import_dataset(a.dataset);
    const auto script = a.script.empty() ? std::vector<ScriptedAnswer>{} : load_answer_script(a.script);
    const auto rows = run_sweep(param, values, dataset, settings.pipeline(), settings.open_store(), script, a.rounds);

    if (a.json_out) {
        json j = json::array();
        for (const auto& row : rows) j.push_back({{"value", row.value}, {"aggregate", to_json(row.report.aggregates)}});
        out << json{{"param", param == SweepParam::MaxRounds ? "N" : "delta"}, {"rows", j}}.dump() << "\n";
        return kExitOk;
    }
    print_aggregate_header(out, param == SweepParam::MaxRounds ? "N" : "delta");
    for (const auto& row : rows) print_aggregate_row(out, json(row.value).dump(), row.report.aggregates);
    return kExitOk;
}

// --- import -----------------------------------------------------------------

// Store-format lines are added as they are; dataset lines (with ground_truth)
// get their initial curve from the pipeline and the ground truth as preferred.
int cmd_import(const Settings& settings, const std::string& file, std::ostream& out) {
    auto store = settings.open_store();
    if (store->path().empty()) throw Error(ErrorKind::InvalidArgument, "import needs --store or REQQUANT_STORE");
    const Pipeline pipeline(settings.pipeline(), store);

    std::vector<RequirementExample> incoming;
    std::size_t line_no = 0;
    for (const auto& line : non_empty_lines(read_text_file(file))) {
        ++line_no;
        const std::string where = file + ":" + std::to_string(line_no);
        try {
            auto j = json::parse(line);
            if (j.is_object() && j.contains("ground_truth") && !j.contains("preferred")) {
                const auto text = j.at("text").get<std::string>();
                auto truth = quantification_from_json(j["ground_truth"]);
                std::string id = j.value("id", std::string());
                incoming.push_back({id, text, pipeline.quantify(text).quantification, std::move(truth), std::nullopt});
            } else {
                if (j.is_object() && !j.contains("id")) j["id"] = "";
                incoming.push_back(example_from_json(j));
            }
        } catch (const json::exception& e) {
            throw Error(ErrorKind::Parse, where + ": " + e.what());
        } catch (const Error& e) {
            throw Error(e.kind() == ErrorKind::Parse ? ErrorKind::Parse : e.kind(), where + ": " + e.what());
        }
    }
    const std::size_t before = store->size();
    for (auto& ex : incoming) {
        if (ex.id.empty()) ex.id = store->next_id();
        store->add_example(std::move(ex));
    }
    out << "imported " << store->size() - before << " examples into " << store->path().string() << " (now "
        << store->size() << ")\n";
    return kExitOk;
}

// --- serve ------------------------------------------------------------------

struct ServeArgs {
    std::string host;
    int port = -1;
    std::string sessions;
};

int cmd_serve(const Settings& settings, const ServeArgs& a, std::ostream& out) {
    ServiceConfig config;
    const auto& f = settings.file;
    config.host = !a.host.empty() ? a.host : f.value("host", config.host);
    config.port = a.port >= 0 ? a.port : f.value("port", config.port);
    config.default_rounds = f.value("rounds", config.default_rounds);
    config.cors_origin = f.value("cors_origin", config.cors_origin);
    if (!a.sessions.empty()) {
        config.session_snapshot_path = a.sessions;
    } else if (f.contains("sessions")) {
        config.session_snapshot_path = f["sessions"].get<std::string>();
    }
    config.pipeline = settings.pipeline();
    config.store_path = settings.store_path();

    // Server threads inherit the blocked mask, so SIGINT/SIGTERM reach sigwait
    // below and shutdown runs the normal stop() path (sessions persisted).
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    Service service(config, settings.open_store());
    const int port = service.start();
    out << "listening on http://" << config.host << ":" << port << std::endl;
    int received = 0;
    sigwait(&signals, &received);
    service.stop();
    out << "stopped\n";
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Requirements quantification: draft, reason, tune and score satisfaction curves", "reqquant"};
    app.require_subcommand(1);
    Settings settings;
    app.add_option("--config", settings.config_path, "JSON config (store, embedding, extraction, serve settings)");

    QuantifyArgs qa;
    auto* quantify = app.add_subcommand("quantify", "Draft a quantification for requirement text");
    auto* text_opt = quantify->add_option("--text", qa.text, "Requirement text");
    auto* file_opt = quantify->add_option("--file", qa.file, "File with one requirement per line");
    text_opt->excludes(file_opt);
    quantify->add_option("--store", settings.store_flag, "Knowledge store (default $REQQUANT_STORE)");
    quantify->add_flag("--no-analogy", qa.no_analogy, "Skip analogy reasoning");
    quantify->add_flag("--json", qa.json_out, "One JSON object per requirement");

    SessionArgs sa;
    auto* session = app.add_subcommand("session", "Tune a quantification by answering the question tree");
    session->add_option("--text", sa.text, "Requirement text")->required();
    session->add_option("--store", settings.store_flag, "Knowledge store (default $REQQUANT_STORE)");
    session->add_option("--rounds,-N", sa.rounds, "Round bound N");
    session->add_option("--start", sa.start, "Starting points as JSON, overriding the reasoned curve");
    session->add_option("--script", sa.script, "Answer file (default: stdin)");
    session->add_flag("--finalize", sa.finalize, "Store the final curve as a new example");
    session->add_flag("--json", sa.json_out, "Print the final session snapshot as JSON");

    EvaluateArgs ea;
    auto* evaluate = app.add_subcommand("evaluate", "Score curves against a ground-truth dataset");
    evaluate->add_option("--dataset", ea.dataset, "Dataset JSONL {id, text, ground_truth}")->required();
    auto* produced_opt = evaluate->add_option("--produced", ea.produced, "Produced curves: JSONL {id, points} or {id: points}");
    auto* pipeline_opt = evaluate->add_flag("--pipeline", ea.pipeline, "Produce curves with the pipeline");
    produced_opt->excludes(pipeline_opt);
    evaluate->add_option("--script", ea.script, "Scripted answers for --pipeline");
    evaluate->add_option("--store", settings.store_flag, "Knowledge store (default $REQQUANT_STORE)");
    evaluate->add_option("--rounds,-N", ea.rounds, "Round bound N for --pipeline");
    evaluate->add_option("--repeats", ea.repeats, "Repeat the evaluation k times");
    evaluate->add_flag("--json", ea.json_out, "JSON report");

    SweepArgs wa;
    auto* sweep = app.add_subcommand("sweep", "Re-run a scripted evaluation over N or delta values");
    sweep->add_option("--param", wa.param, "N or delta")->required();
    sweep->add_option("--values", wa.values, "Comma list or integer range lo..hi")->required();
    sweep->add_option("--dataset", wa.dataset, "Dataset JSONL")->required();
    sweep->add_option("--script", wa.script, "Scripted answers");
    sweep->add_option("--store", settings.store_flag, "Knowledge store (default $REQQUANT_STORE)");
    sweep->add_option("--rounds,-N", wa.rounds, "Round bound when sweeping delta");
    sweep->add_flag("--json", wa.json_out, "JSON rows");

    std::string import_file;
    auto* import = app.add_subcommand("import", "Load examples or dataset records into the store");
    import->add_option("--file", import_file, "JSONL of examples or dataset records")->required();
    import->add_option("--store", settings.store_flag, "Knowledge store (default $REQQUANT_STORE)");

    ServeArgs va;
    auto* serve = app.add_subcommand("serve", "Run the HTTP service");
    serve->add_option("--host", va.host, "Bind address");
    serve->add_option("--port", va.port, "Port (0 picks a free one)");
    serve->add_option("--store", settings.store_flag, "Knowledge store (default $REQQUANT_STORE)");
    serve->add_option("--sessions", va.sessions, "Session snapshot file");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }

    try {
        settings.load();
        if (*quantify) {
            if (qa.text.empty() && qa.file.empty()) throw Error(ErrorKind::EmptyText, "give --text or --file");
            return cmd_quantify(settings, qa, out);
        }
        if (*session) return cmd_session(settings, sa, in, out, err);
        if (*evaluate) return cmd_evaluate(settings, ea, out);
        if (*sweep) return cmd_sweep(settings, wa, out);
        if (*import) return cmd_import(settings, import_file, out);
        if (*serve) return cmd_serve(settings, va, out);
    } catch (const Error& e) {
        err << "error: " << e.reason() << ": " << e.what() << "\n";
        return kExitFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitFailure;
}

}  // namespace reqquant::cli
