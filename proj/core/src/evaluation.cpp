#include "reqquant/evaluation.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "reqquant/error.hpp"
#include "reqquant/json_io.hpp"

namespace reqquant {

Aggregate aggregate(const std::vector<double>& values) {
    if (values.empty()) return {};
    const double n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    if (values.size() == 1) return {mean, 0.0};
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / (n - 1.0))};
}

MetricAggregates aggregate_reports(const std::vector<RecordEvaluation>& records) {
    std::vector<double> p2p, cheb, rmse_v, iad_v;
    for (const auto& r : records) {
        p2p.push_back(r.report.p2p);
        cheb.push_back(r.report.chebyshev);
        rmse_v.push_back(r.report.rmse);
        iad_v.push_back(r.report.iad);
    }
    return {aggregate(p2p), aggregate(cheb), aggregate(rmse_v), aggregate(iad_v)};
}

EvaluationReport evaluate_produced(const std::vector<DatasetRecord>& dataset,
                                   const std::map<std::string, Quantification>& produced,
                                   std::size_t rmse_samples) {
    for (const auto& [id, q] : produced) {
        bool known = false;
        for (const auto& r : dataset) known = known || r.id == id;
        if (!known) throw Error(ErrorKind::NotFound, "produced id '" + id + "' is not in the dataset");
    }
    EvaluationReport report;
    for (const auto& record : dataset) {
        auto it = produced.find(record.id);
        if (it == produced.end()) throw Error(ErrorKind::NotFound, "no produced curve for '" + record.id + "'");
        report.records.push_back({record.id, it->second, compare(it->second, record.ground_truth, rmse_samples), 0, 0});
    }
    report.aggregates = aggregate_reports(report.records);
    return report;
}

std::vector<ScriptedAnswer> parse_answer_script(const std::string& contents) {
    std::vector<ScriptedAnswer> out;
    std::istringstream in(contents);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const auto j = nlohmann::json::parse(line);
            ScriptedAnswer a;
            a.path = answer_path_from_json(j);
            if (j.contains("record")) {
                if (!j["record"].is_string()) throw Error(ErrorKind::Parse, "'record' must be a string");
                a.record = j["record"].get<std::string>();
            }
            out.push_back(std::move(a));
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorKind::Parse, "answer script line " + std::to_string(line_no) + ": " + e.what());
        } catch (const Error& e) {
            throw Error(ErrorKind::Parse, "answer script line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

std::vector<ScriptedAnswer> load_answer_script(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open answer script " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_answer_script(buf.str());
}

EvaluationReport evaluate_pipeline(const std::vector<DatasetRecord>& dataset, const Pipeline& pipeline,
                                   const std::vector<ScriptedAnswer>& script, std::size_t max_rounds,
                                   std::size_t rmse_samples) {
    EvaluationReport report;
    for (const auto& record : dataset) {
        Session session = start_session(record.id, record.text, pipeline, max_rounds);
        std::size_t rejected = 0;
        for (const auto& a : script) {
            if (session.exhausted()) break;
            if (a.record && *a.record != record.id) continue;
            try {
                session = session.answer(a.path).session;
            } catch (const Error&) {
                ++rejected;
            }
        }
        report.records.push_back({record.id, session.current(),
                                  compare(session.current(), record.ground_truth, rmse_samples), session.round(),
                                  rejected});
    }
    report.aggregates = aggregate_reports(report.records);
    return report;
}

std::vector<SweepRow> run_sweep(SweepParam param, const std::vector<double>& values,
                                const std::vector<DatasetRecord>& dataset, const PipelineConfig& base,
                                std::shared_ptr<KnowledgeStore> store, const std::vector<ScriptedAnswer>& script,
                                std::size_t max_rounds) {
    std::vector<SweepRow> rows;
    for (double v : values) {
        PipelineConfig config = base;
        std::size_t rounds = max_rounds;
        if (param == SweepParam::MaxRounds) {
            if (!(v >= 1.0) || v != std::floor(v)) {
                throw Error(ErrorKind::InvalidArgument, "N must be a positive integer");
            }
            rounds = static_cast<std::size_t>(v);
        } else {
            config.extraction.delta_fraction = v;
        }
        Pipeline pipeline(std::move(config), store);
        rows.push_back({v, evaluate_pipeline(dataset, pipeline, script, rounds)});
    }
    return rows;
}

nlohmann::json to_json(const Aggregate& a) {
    return {{"mean", a.mean}, {"deviation", a.deviation}};
}

nlohmann::json to_json(const MetricAggregates& a) {
    return {{"p2p", to_json(a.p2p)}, {"chebyshev", to_json(a.chebyshev)}, {"rmse", to_json(a.rmse)}, {"iad", to_json(a.iad)}};
}

nlohmann::json to_json(const EvaluationReport& r) {
    nlohmann::json records = nlohmann::json::array();
    for (const auto& rec : r.records) {
        nlohmann::json j{{"id", rec.id},
                         {"points", to_json(rec.produced)},
                         {"p2p", rec.report.p2p},
                         {"chebyshev", rec.report.chebyshev},
                         {"rmse", rec.report.rmse},
                         {"iad", rec.report.iad}};
        if (rec.rounds || rec.rejected) {
            j["rounds"] = rec.rounds;
            j["rejected"] = rec.rejected;
        }
        records.push_back(std::move(j));
    }
    return {{"records", records}, {"aggregate", to_json(r.aggregates)}};
}

}  // namespace reqquant
