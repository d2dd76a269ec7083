#include "reqquant/session.hpp"

#include <cmath>
#include <sstream>

#include "reqquant/error.hpp"
#include "reqquant/json_io.hpp"
#include "reqquant/reasoner.hpp"

namespace reqquant {

namespace {

std::string format_number(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

[[noreturn]] void invalid(const std::string& why) {
    throw Error(ErrorKind::InvalidPath, why);
}

// Index of the point an endpoint answer refers to.
std::size_t endpoint_index(const AnswerPath& path) {
    return *path.interval + (*path.endpoint == Endpoint::Right ? 1 : 0);
}

template <typename E>
std::string enum_name(E value);

template <>
std::string enum_name(Intent v) { return v == Intent::Precision ? "precision" : "difficulty"; }
template <>
std::string enum_name(PrecisionAction v) { return v == PrecisionAction::Add ? "add" : "remove"; }
template <>
std::string enum_name(Endpoint v) { return v == Endpoint::Left ? "left" : "right"; }
template <>
std::string enum_name(Field v) { return std::string(to_string(v)); }
template <>
std::string enum_name(Direction v) { return std::string(to_string(v)); }

template <typename E>
E parse_enum(const nlohmann::json& j, const char* key, std::initializer_list<E> values) {
    if (!j[key].is_string()) throw Error(ErrorKind::Parse, std::string("'") + key + "' must be a string");
    const auto s = j[key].get<std::string>();
    for (E v : values) {
        if (enum_name(v) == s) return v;
    }
    throw Error(ErrorKind::Parse, std::string("unknown ") + key + " '" + s + "'");
}

}  // namespace

std::optional<QuestionNode> next_question(const Quantification& q, const AnswerPath& p) {
    const std::size_t gaps = q.size() - 1;
    if (!p.interval) {
        QuestionNode node{"interval", "Interval to modify?", {}, 1};
        for (std::size_t i = 0; i < gaps; ++i) {
            node.choices.push_back({std::to_string(i), "Select interval [" + format_number(q[i].x) + ", " +
                                                           format_number(q[i + 1].x) + "]"});
        }
        return node;
    }
    if (*p.interval >= gaps) invalid("interval " + std::to_string(*p.interval) + " does not exist");
    if (!p.intent) {
        if (p.precision_action || p.endpoint || p.field || p.direction) invalid("answers given before the intent");
        return QuestionNode{"intent", "Adjustment Intent?",
                            {{"precision", "Adjust Precision"}, {"difficulty", "Adjust Difficulty"}}, 2};
    }
    if (*p.intent == Intent::Precision) {
        if (p.field || p.direction) invalid("precision answers take no field or direction");
        if (!p.precision_action) {
            if (p.endpoint) invalid("end point given before add/delete");
            return QuestionNode{"precision-action", "Add or Delete?", {{"add", "Add point"}, {"remove", "Delete point"}}, 3};
        }
        if (*p.precision_action == PrecisionAction::Add) {
            if (p.endpoint) invalid("adding a point takes no end point");
            return std::nullopt;
        }
        if (!p.endpoint) {
            return QuestionNode{"endpoint", "Which end point?", {{"left", "Left Endpoint"}, {"right", "Right Endpoint"}}, 4};
        }
        return std::nullopt;
    }
    if (p.precision_action) invalid("difficulty answers take no add/delete choice");
    if (!p.endpoint) {
        if (p.field || p.direction) invalid("answers given before the end point");
        return QuestionNode{"endpoint", "Which end point?", {{"left", "Left Endpoint"}, {"right", "Right Endpoint"}}, 3};
    }
    if (!p.field) {
        if (p.direction) invalid("direction given before the value");
        return QuestionNode{"field", "x (T or \xce\x94) or y (satisfaction)?",
                            {{"x", "Select x"}, {"y", "Select y"}}, 4};
    }
    if (!p.direction) {
        return QuestionNode{"direction", "Increase or Decrease?", {{"increase", "Increase"}, {"decrease", "Decrease"}}, 5};
    }
    return std::nullopt;
}

void validate_answer(const Quantification& q, const AnswerPath& path) {
    if (next_question(q, path)) invalid("answer path stops before a leaf");
}

Session::Session(std::string id, std::string requirement_text, PatternType pattern, Quantification initial,
                 Quantification start, std::size_t max_rounds)
    : id_(std::move(id)),
      text_(std::move(requirement_text)),
      pattern_(pattern),
      initial_(std::move(initial)),
      start_(start),
      current_(std::move(start)),
      max_rounds_(max_rounds) {
    if (max_rounds_ == 0) throw Error(ErrorKind::InvalidArgument, "a session needs at least one round");
    for (std::size_t i = 0; i < current_.size(); ++i) point_ids_.push_back(next_point_id_++);
}

std::optional<QuestionNode> Session::current_question(const AnswerPath& partial) const {
    if (finalized_) throw Error(ErrorKind::SessionFinalized, "session " + id_ + " is finalized");
    if (exhausted()) throw Error(ErrorKind::SessionExhausted, "session " + id_ + " has used all rounds");
    return next_question(current_, partial);
}

Session::Outcome Session::answer(const AnswerPath& path) const {
    if (finalized_) throw Error(ErrorKind::SessionFinalized, "session " + id_ + " is finalized");
    if (exhausted()) throw Error(ErrorKind::SessionExhausted, "session " + id_ + " has used all rounds");
    validate_answer(current_, path);

    Session next = *this;
    Operation op;
    if (*path.intent == Intent::Precision && *path.precision_action == PrecisionAction::Add) {
        const std::size_t at = *path.interval + 1;
        op = AddOp{interpolated_point(current_, at), at};
        next.current_ = apply_operation(current_, op);
        next.point_ids_.insert(next.point_ids_.begin() + static_cast<std::ptrdiff_t>(at), next.next_point_id_++);
    } else if (*path.intent == Intent::Precision) {
        const std::size_t at = endpoint_index(path);
        op = RemoveOp{at};
        next.current_ = apply_operation(current_, op);
        next.point_ids_.erase(next.point_ids_.begin() + static_cast<std::ptrdiff_t>(at));
    } else {
        const std::size_t at = endpoint_index(path);
        const StepKey key{point_ids_[at], *path.field};
        StepState state{*path.direction, kInitialStepFraction};
        if (auto it = step_memory_.find(key); it != step_memory_.end()) {
            state.fraction = it->second.last_direction == *path.direction ? it->second.fraction
                                                                          : it->second.fraction / 2.0;
        }
        auto change = nudge(current_, at, *path.field, *path.direction, state.fraction);
        if (!change) {
            throw Error(ErrorKind::NoOp, "the " + enum_name(*path.field) + " value cannot move further in that direction");
        }
        op = *change;
        next.current_ = apply_operation(current_, op);
        next.step_memory_[key] = state;
    }
    next.history_.push_back({path, op, next.current_});
    return {std::move(next), std::move(op)};
}

RequirementExample Session::finalize(std::string example_id) {
    if (finalized_) throw Error(ErrorKind::SessionFinalized, "session " + id_ + " is already finalized");
    finalized_ = true;
    return {std::move(example_id), text_, initial_, current_, std::nullopt};
}

nlohmann::json Session::to_json() const {
    nlohmann::json history = nlohmann::json::array();
    for (const auto& h : history_) {
        history.push_back({{"path", reqquant::to_json(h.path)},
                           {"operation", reqquant::to_json(h.operation)},
                           {"points", reqquant::to_json(h.result)}});
    }
    nlohmann::json memory = nlohmann::json::array();
    for (const auto& [key, state] : step_memory_) {
        memory.push_back({{"point", key.first},
                          {"field", enum_name(key.second)},
                          {"direction", enum_name(state.last_direction)},
                          {"step", state.fraction}});
    }
    nlohmann::json question = nullptr;
    if (!finalized_ && !exhausted()) question = reqquant::to_json(*next_question(current_, {}));
    nlohmann::json j{{"id", id_},
                     {"text", text_},
                     {"pattern", std::string(to_string(pattern_))},
                     {"initial", reqquant::to_json(initial_)},
                     {"start", reqquant::to_json(start_)},
                     {"points", reqquant::to_json(current_)},
                     {"point_ids", point_ids_},
                     {"next_point_id", next_point_id_},
                     {"round", round()},
                     {"max_rounds", max_rounds_},
                     {"finalized", finalized_},
                     {"history", history},
                     {"step_memory", memory},
                     {"question", question}};
    j["analogy"] = analogy_id_ ? nlohmann::json(*analogy_id_) : nlohmann::json(nullptr);
    return j;
}

Session Session::from_json(const nlohmann::json& j) {
    try {
        Session s(j.at("id").get<std::string>(), j.at("text").get<std::string>(),
                  parse_pattern(j.at("pattern").get<std::string>()), quantification_from_json(j.at("initial")),
                  quantification_from_json(j.at("start")), j.at("max_rounds").get<std::size_t>());
        for (const auto& h : j.at("history")) {
            s.history_.push_back({answer_path_from_json(h.at("path")), operation_from_json(h.at("operation")),
                                  quantification_from_json(h.at("points"))});
        }
        s.current_ = quantification_from_json(j.at("points"));
        s.point_ids_ = j.at("point_ids").get<std::vector<std::uint64_t>>();
        s.next_point_id_ = j.at("next_point_id").get<std::uint64_t>();
        if (s.point_ids_.size() != s.current_.size()) throw Error(ErrorKind::Parse, "point_ids do not match points");
        if (s.history_.size() > s.max_rounds_) throw Error(ErrorKind::Parse, "history longer than max_rounds");
        for (const auto& m : j.at("step_memory")) {
            const Field f = parse_enum<Field>(m, "field", {Field::X, Field::Y});
            const Direction d = parse_enum<Direction>(m, "direction", {Direction::Increase, Direction::Decrease});
            s.step_memory_[{m.at("point").get<std::uint64_t>(), f}] = {d, m.at("step").get<double>()};
        }
        s.finalized_ = j.at("finalized").get<bool>();
        if (j.contains("analogy") && j["analogy"].is_string()) s.analogy_id_ = j["analogy"].get<std::string>();
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, std::string("malformed session: ") + e.what());
    }
}

Session start_session(std::string id, std::string_view text, const Pipeline& pipeline, std::size_t max_rounds) {
    auto result = pipeline.run(text);
    Session s(std::move(id), std::string(text), result.draft.classification.pattern, result.draft.quantification,
              result.reasoning.reasoned, max_rounds);
    s.set_analogy_id(result.reasoning.example_id);
    return s;
}

std::optional<QuestionNode> current_question(const Session& session, const AnswerPath& partial) {
    return session.current_question(partial);
}

Session::Outcome answer(const Session& session, const AnswerPath& path) {
    return session.answer(path);
}

RequirementExample finalize(Session& session, KnowledgeStore& store) {
    if (session.finalized()) throw Error(ErrorKind::SessionFinalized, "session " + session.id() + " is already finalized");
    std::string id = store.contains(session.id()) ? store.next_id() : session.id();
    Session working = session;
    auto example = working.finalize(std::move(id));
    store.add_example(example);
    session = std::move(working);
    return example;
}

nlohmann::json to_json(const AnswerPath& p) {
    nlohmann::json j = nlohmann::json::object();
    if (p.interval) j["interval"] = *p.interval;
    if (p.intent) j["intent"] = enum_name(*p.intent);
    if (p.precision_action) j["action"] = enum_name(*p.precision_action);
    if (p.endpoint) j["endpoint"] = enum_name(*p.endpoint);
    if (p.field) j["field"] = enum_name(*p.field);
    if (p.direction) j["direction"] = enum_name(*p.direction);
    return j;
}

AnswerPath answer_path_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw Error(ErrorKind::Parse, "answer path must be a JSON object");
    AnswerPath p;
    if (j.contains("interval")) {
        const auto& v = j["interval"];
        if (!v.is_number_integer() || v.get<long long>() < 0) {
            throw Error(ErrorKind::Parse, "'interval' must be a non-negative integer");
        }
        p.interval = v.get<std::size_t>();
    }
    if (j.contains("intent")) p.intent = parse_enum<Intent>(j, "intent", {Intent::Precision, Intent::Difficulty});
    if (j.contains("action")) {
        p.precision_action = parse_enum<PrecisionAction>(j, "action", {PrecisionAction::Add, PrecisionAction::Remove});
    }
    if (j.contains("endpoint")) p.endpoint = parse_enum<Endpoint>(j, "endpoint", {Endpoint::Left, Endpoint::Right});
    if (j.contains("field")) p.field = parse_enum<Field>(j, "field", {Field::X, Field::Y});
    if (j.contains("direction")) {
        p.direction = parse_enum<Direction>(j, "direction", {Direction::Increase, Direction::Decrease});
    }
    return p;
}

nlohmann::json to_json(const QuestionNode& node) {
    nlohmann::json choices = nlohmann::json::array();
    for (const auto& c : node.choices) choices.push_back({{"value", c.value}, {"label", c.label}});
    return {{"id", node.id}, {"text", node.text}, {"level", node.level}, {"choices", choices}};
}

std::string SessionRegistry::next_id() {
    std::unique_lock lock(mutex_);
    return "s-" + std::to_string(++counter_);
}

void SessionRegistry::insert(Session session) {
    std::unique_lock lock(mutex_);
    const std::string id = session.id();
    if (sessions_.contains(id)) throw Error(ErrorKind::DuplicateId, "session " + id + " already exists");
    sessions_.emplace(id, std::make_shared<Entry>(std::move(session)));
}

std::shared_ptr<SessionRegistry::Entry> SessionRegistry::find_entry(const std::string& id) const {
    std::shared_lock lock(mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw Error(ErrorKind::NotFound, "no session '" + id + "'");
    return it->second;
}

std::optional<Session> SessionRegistry::snapshot(const std::string& id) const {
    std::shared_ptr<Entry> entry;
    {
        std::shared_lock lock(mutex_);
        auto it = sessions_.find(id);
        if (it == sessions_.end()) return std::nullopt;
        entry = it->second;
    }
    std::unique_lock lock(entry->mutex);
    return entry->session;
}

std::vector<Session> SessionRegistry::snapshots() const {
    std::vector<std::shared_ptr<Entry>> entries;
    {
        std::shared_lock lock(mutex_);
        for (const auto& [id, e] : sessions_) entries.push_back(e);
    }
    std::vector<Session> out;
    for (const auto& e : entries) {
        std::unique_lock lock(e->mutex);
        out.push_back(e->session);
    }
    return out;
}

std::size_t SessionRegistry::size() const {
    std::shared_lock lock(mutex_);
    return sessions_.size();
}

}  // namespace reqquant
