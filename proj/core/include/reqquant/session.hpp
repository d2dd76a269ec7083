#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "reqquant/pipeline.hpp"
#include "reqquant/quantification.hpp"

namespace reqquant {

inline constexpr std::size_t kDefaultMaxRounds = 5;

enum class Intent { Precision, Difficulty };
enum class PrecisionAction { Add, Remove };
enum class Endpoint { Left, Right };

// One root-to-leaf walk of the question tree:
//
//   Interval to modify? -> Adjustment intent?
//     precision  -> Add or delete? -> add
//                                  -> delete -> Which end point?
//     difficulty -> Which end point? -> x or y? -> Increase or decrease?
//
// Fields not on the chosen branch stay empty.
struct AnswerPath {
    std::optional<std::size_t> interval;  // gap i, i.e. [x_i, x_{i+1}]
    std::optional<Intent> intent;
    std::optional<PrecisionAction> precision_action;
    std::optional<Endpoint> endpoint;
    std::optional<Field> field;
    std::optional<Direction> direction;

    friend bool operator==(const AnswerPath&, const AnswerPath&) = default;
};

struct Choice {
    std::string value;  // what goes into the AnswerPath JSON
    std::string label;
};

struct QuestionNode {
    std::string id;  // interval | intent | precision-action | endpoint | field | direction
    std::string text;
    std::vector<Choice> choices;
    std::size_t level = 0;  // 1-based depth in the tree
};

// Next question for a partially answered path, or nullopt once the path
// reaches a leaf. Throws Error(InvalidPath) if the partial path already
// holds an answer that is off its branch or out of range.
std::optional<QuestionNode> next_question(const Quantification& q, const AnswerPath& partial);

// Throws Error(InvalidPath) unless `path` is a complete, on-branch leaf for `q`.
void validate_answer(const Quantification& q, const AnswerPath& path);

struct HistoryEntry {
    AnswerPath path;
    Operation operation;
    Quantification result;
};

// Step size remembered per (point, coordinate).
struct StepState {
    Direction last_direction = Direction::Increase;
    double fraction = 0.10;

    friend bool operator==(const StepState&, const StepState&) = default;
};

class Session {
public:
    using StepKey = std::pair<std::uint64_t, Field>;

    // A fresh session at round 0 whose working curve is `start`.
    Session(std::string id, std::string requirement_text, PatternType pattern, Quantification initial,
            Quantification start, std::size_t max_rounds = kDefaultMaxRounds);

    const std::string& id() const noexcept { return id_; }
    const std::string& requirement_text() const noexcept { return text_; }
    PatternType pattern() const noexcept { return pattern_; }
    const Quantification& initial() const noexcept { return initial_; }  // f_{t,0}
    const Quantification& start() const noexcept { return start_; }      // f'_{t,0}
    const Quantification& current() const noexcept { return current_; }
    std::size_t round() const noexcept { return history_.size(); }
    std::size_t max_rounds() const noexcept { return max_rounds_; }
    bool exhausted() const noexcept { return round() >= max_rounds_; }
    bool finalized() const noexcept { return finalized_; }
    const std::vector<HistoryEntry>& history() const noexcept { return history_; }
    const std::map<StepKey, StepState>& step_memory() const noexcept { return step_memory_; }
    const std::vector<std::uint64_t>& point_ids() const noexcept { return point_ids_; }
    const std::optional<std::string>& analogy_id() const noexcept { return analogy_id_; }
    void set_analogy_id(std::optional<std::string> id) { analogy_id_ = std::move(id); }

    // Throws Error(SessionExhausted / SessionFinalized) when no round is left.
    std::optional<QuestionNode> current_question(const AnswerPath& partial = {}) const;

    struct Outcome;
    // Applies one leaf. Errors leave the session untouched:
    // SessionExhausted, SessionFinalized, InvalidPath, BelowMinimumPoints,
    // and NoOp when a CHANGE clamps back to the current value.
    Outcome answer(const AnswerPath& path) const;

    // Marks the session finalized and returns the example to persist.
    // Throws Error(SessionFinalized) on a second call.
    RequirementExample finalize(std::string example_id);

    nlohmann::json to_json() const;
    static Session from_json(const nlohmann::json& j);

private:
    std::string id_;
    std::string text_;
    PatternType pattern_;
    Quantification initial_;
    Quantification start_;
    Quantification current_;
    std::size_t max_rounds_;
    std::vector<HistoryEntry> history_;
    std::map<StepKey, StepState> step_memory_;
    std::vector<std::uint64_t> point_ids_;  // stable identity of each current point
    std::uint64_t next_point_id_ = 0;
    bool finalized_ = false;
    std::optional<std::string> analogy_id_;
};

struct Session::Outcome {
    Session session;
    Operation operation;
};

// Runs the pipeline on `text` and opens a session on the reasoned curve.
Session start_session(std::string id, std::string_view text, const Pipeline& pipeline,
                      std::size_t max_rounds = kDefaultMaxRounds);

std::optional<QuestionNode> current_question(const Session& session, const AnswerPath& partial = {});
Session::Outcome answer(const Session& session, const AnswerPath& path);
// Stores {text, f_{t,0}, current} as a new example. The example id is the
// session id unless that is taken, in which case the store picks one.
RequirementExample finalize(Session& session, KnowledgeStore& store);

nlohmann::json to_json(const AnswerPath& path);
AnswerPath answer_path_from_json(const nlohmann::json& j);
nlohmann::json to_json(const QuestionNode& node);

// Thread-safe collection of live sessions; each session is mutated under
// its own lock and readers get copies.
class SessionRegistry {
public:
    std::string next_id();
    void insert(Session session);
    std::optional<Session> snapshot(const std::string& id) const;
    std::vector<Session> snapshots() const;
    std::size_t size() const;

    // Runs `fn(Session&)` under the session's lock. The session is replaced
    // only if fn returns without throwing. Throws Error(NotFound).
    template <typename Fn>
    auto mutate(const std::string& id, Fn&& fn) {
        auto entry = find_entry(id);
        std::unique_lock lock(entry->mutex);
        Session working = entry->session;
        auto result = fn(working);
        entry->session = std::move(working);
        return result;
    }

private:
    struct Entry {
        explicit Entry(Session s) : session(std::move(s)) {}
        mutable std::mutex mutex;
        Session session;
    };
    std::shared_ptr<Entry> find_entry(const std::string& id) const;

    mutable std::shared_mutex mutex_;
    std::map<std::string, std::shared_ptr<Entry>> sessions_;
    std::uint64_t counter_ = 0;
};

}  // namespace reqquant
