#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "reqquant/metrics.hpp"
#include "reqquant/pipeline.hpp"
#include "reqquant/session.hpp"
#include "reqquant/store.hpp"

namespace reqquant {

struct Aggregate {
    double mean = 0.0;
    double deviation = 0.0;  // sample standard deviation; 0 for a single value
};

Aggregate aggregate(const std::vector<double>& values);

struct MetricAggregates {
    Aggregate p2p;
    Aggregate chebyshev;
    Aggregate rmse;
    Aggregate iad;
};

struct RecordEvaluation {
    std::string id;
    Quantification produced;
    MetricReport report;
    std::size_t rounds = 0;   // interaction rounds applied (pipeline runs only)
    std::size_t rejected = 0; // scripted answers the session refused
};

struct EvaluationReport {
    std::vector<RecordEvaluation> records;
    MetricAggregates aggregates;
};

MetricAggregates aggregate_reports(const std::vector<RecordEvaluation>& records);

// Scores `produced[id]` against each record's ground truth. Throws
// Error(NotFound) when an id is missing from either side.
EvaluationReport evaluate_produced(const std::vector<DatasetRecord>& dataset,
                                   const std::map<std::string, Quantification>& produced,
                                   std::size_t rmse_samples = kDefaultRmseSamples);

// One scripted answer. Lines without a record id apply to every record.
struct ScriptedAnswer {
    std::optional<std::string> record;
    AnswerPath path;
};

// One AnswerPath JSON object per line, optionally with a "record" member.
std::vector<ScriptedAnswer> parse_answer_script(const std::string& contents);
std::vector<ScriptedAnswer> load_answer_script(const std::string& path);

// Runs pipeline + scripted session for each record and scores the final
// curves. Answers are fed in file order until the session runs out of rounds;
// answers the session rejects are counted and skipped.
EvaluationReport evaluate_pipeline(const std::vector<DatasetRecord>& dataset, const Pipeline& pipeline,
                                   const std::vector<ScriptedAnswer>& script,
                                   std::size_t max_rounds = kDefaultMaxRounds,
                                   std::size_t rmse_samples = kDefaultRmseSamples);

enum class SweepParam { MaxRounds, Delta };

struct SweepRow {
    double value = 0.0;
    EvaluationReport report;
};

// Re-runs evaluate_pipeline once per value, overriding either the round
// bound N or the tolerance fraction.
std::vector<SweepRow> run_sweep(SweepParam param, const std::vector<double>& values,
                                const std::vector<DatasetRecord>& dataset, const PipelineConfig& base,
                                std::shared_ptr<KnowledgeStore> store, const std::vector<ScriptedAnswer>& script,
                                std::size_t max_rounds = kDefaultMaxRounds);

nlohmann::json to_json(const Aggregate& a);
nlohmann::json to_json(const MetricAggregates& a);
nlohmann::json to_json(const EvaluationReport& r);

}  // namespace reqquant
