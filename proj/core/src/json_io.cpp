#include "reqquant/json_io.hpp"

#include <string>

#include "reqquant/error.hpp"

namespace reqquant {

namespace {

const Json& member(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::Parse, std::string("missing field '") + key + "'");
    return j.at(key);
}

std::string string_member(const Json& j, const char* key) {
    const Json& v = member(j, key);
    if (!v.is_string()) throw Error(ErrorKind::Parse, std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

double number(const Json& v, const char* what) {
    if (!v.is_number()) throw Error(ErrorKind::Parse, std::string(what) + " must be a number");
    return v.get<double>();
}

std::size_t index_member(const Json& j, const char* key) {
    const Json& v = member(j, key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
        throw Error(ErrorKind::Parse, std::string("field '") + key + "' must be a non-negative integer");
    }
    return v.get<std::size_t>();
}

Field parse_field(const std::string& s) {
    if (s == "x") return Field::X;
    if (s == "y") return Field::Y;
    throw Error(ErrorKind::Parse, "field must be 'x' or 'y'");
}

}  // namespace

Json to_json(const Quantification& q) {
    Json arr = Json::array();
    for (const auto& p : q.points()) arr.push_back({p.x, p.y});
    return arr;
}

Quantification quantification_from_json(const Json& j) {
    if (!j.is_array()) throw Error(ErrorKind::Parse, "quantification must be an array of [x, y] pairs");
    std::vector<Point> pts;
    pts.reserve(j.size());
    for (const auto& pair : j) {
        if (!pair.is_array() || pair.size() != 2) {
            throw Error(ErrorKind::Parse, "quantification entries must be [x, y] pairs");
        }
        pts.push_back({number(pair[0], "x"), number(pair[1], "y")});
    }
    return Quantification(std::move(pts));
}

Json to_json(const Operation& op) {
    if (const auto* add = std::get_if<AddOp>(&op)) {
        return {{"op", "ADD"}, {"index", add->index}, {"point", {add->point.x, add->point.y}}};
    }
    if (const auto* remove = std::get_if<RemoveOp>(&op)) {
        return {{"op", "REMOVE"}, {"index", remove->index}};
    }
    const auto& change = std::get<ChangeOp>(op);
    Json j{{"op", "CHANGE"},
           {"index", change.index},
           {"field", std::string(to_string(change.field))},
           {"value", change.new_value}};
    if (change.previous) j["previous"] = *change.previous;
    return j;
}

Operation operation_from_json(const Json& j) {
    const std::string kind = string_member(j, "op");
    const std::size_t index = index_member(j, "index");
    if (kind == "ADD") {
        const Json& p = member(j, "point");
        if (!p.is_array() || p.size() != 2) throw Error(ErrorKind::Parse, "ADD point must be [x, y]");
        return AddOp{{number(p[0], "x"), number(p[1], "y")}, index};
    }
    if (kind == "REMOVE") return RemoveOp{index};
    if (kind == "CHANGE") {
        ChangeOp c{index, parse_field(string_member(j, "field")), number(member(j, "value"), "value"), std::nullopt};
        if (j.contains("previous")) c.previous = number(j["previous"], "previous");
        return c;
    }
    throw Error(ErrorKind::Parse, "unknown operation '" + kind + "'");
}

Json to_json(const Matching& m) {
    Json pairs = Json::array();
    for (const auto& [i, j] : m.pairs) pairs.push_back({i, j});
    return {{"pairs", pairs},
            {"unmatched_source", m.unmatched_source},
            {"unmatched_target", m.unmatched_target},
            {"total_weight", m.total_weight}};
}

Json to_json(const MetricReport& r) {
    return {{"p2p", r.p2p}, {"chebyshev", r.chebyshev}, {"rmse", r.rmse}, {"iad", r.iad}, {"matching", to_json(r.matching)}};
}

Json to_json(const RequirementExample& ex) {
    Json j{{"id", ex.id}, {"text", ex.text}, {"initial", to_json(ex.initial)}, {"preferred", to_json(ex.preferred)}};
    if (ex.embedding) j["embedding"] = ex.embedding->values();
    return j;
}

RequirementExample example_from_json(const Json& j) {
    RequirementExample ex{string_member(j, "id"), string_member(j, "text"),
                          quantification_from_json(member(j, "initial")),
                          quantification_from_json(member(j, "preferred")), std::nullopt};
    if (j.contains("embedding")) {
        try {
            ex.embedding = EmbeddingVector(j["embedding"].get<std::vector<double>>());
        } catch (const Json::exception&) {
            throw Error(ErrorKind::Parse, "embedding must be a numeric array");
        }
    }
    return ex;
}

}  // namespace reqquant
