#include "reqquant/quantification.hpp"

#include <cmath>
#include <string>

#include "reqquant/error.hpp"

namespace reqquant {

namespace {

void validate_point(const Point& p, std::size_t index) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
        throw Error(ErrorKind::InvalidQuantification,
                    "point " + std::to_string(index) + " has a non-finite coordinate");
    }
    if (p.y < 0.0 || p.y > 1.0) {
        throw Error(ErrorKind::ValueOutOfRange,
                    "point " + std::to_string(index) + " has y outside [0, 1]");
    }
}

}  // namespace

std::string_view to_string(PatternType pattern) noexcept {
    switch (pattern) {
        case PatternType::P1: return "P1";
        case PatternType::P2: return "P2";
        case PatternType::P3: return "P3";
    }
    return "?";
}

PatternType parse_pattern(std::string_view text) {
    if (text == "P1") return PatternType::P1;
    if (text == "P2") return PatternType::P2;
    if (text == "P3") return PatternType::P3;
    throw Error(ErrorKind::Parse, "unknown pattern '" + std::string(text) + "'");
}

std::string_view to_string(Field field) noexcept {
    return field == Field::X ? "x" : "y";
}

std::string_view to_string(Direction direction) noexcept {
    return direction == Direction::Increase ? "increase" : "decrease";
}

Quantification::Quantification(std::vector<Point> points) : points_(std::move(points)) {
    if (points_.size() < kMinPoints) {
        throw Error(ErrorKind::BelowMinimumPoints, "a quantification needs at least 2 points");
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        validate_point(points_[i], i);
        if (i > 0 && !(points_[i - 1].x < points_[i].x)) {
            throw Error(ErrorKind::OrderingViolation,
                        "x values must be strictly increasing (at point " + std::to_string(i) + ")");
        }
    }
}

std::optional<Direction> ChangeOp::direction() const {
    if (!previous || *previous == new_value) return std::nullopt;
    return new_value > *previous ? Direction::Increase : Direction::Decrease;
}

Quantification from_pattern(PatternType pattern, double threshold, double delta,
                            double y_low, double y_high) {
    if (!std::isfinite(threshold) || !std::isfinite(delta) || !std::isfinite(y_low) ||
        !std::isfinite(y_high)) {
        throw Error(ErrorKind::InvalidArgument, "pattern parameters must be finite");
    }
    if (!(delta > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "delta must be positive");
    }
    if (!(y_low < y_high)) {
        throw Error(ErrorKind::InvalidArgument, "y_low must be below y_high");
    }
    switch (pattern) {
        case PatternType::P1:
            return Quantification({{threshold - delta, y_low}, {threshold, y_high}});
        case PatternType::P2:
            return Quantification({{threshold, y_high}, {threshold + delta, y_low}});
        case PatternType::P3:
            return Quantification(
                {{threshold - delta, y_low}, {threshold, y_high}, {threshold + delta, y_low}});
    }
    throw Error(ErrorKind::InvalidArgument, "unknown pattern");
}

double evaluate(const Quantification& q, double x) {
    const auto& pts = q.points();
    if (x <= pts.front().x) return pts.front().y;
    if (x >= pts.back().x) return pts.back().y;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (x == pts[i].x) return pts[i].y;
        if (x < pts[i].x) {
            const Point& a = pts[i - 1];
            const Point& b = pts[i];
            const double t = (x - a.x) / (b.x - a.x);
            return a.y + t * (b.y - a.y);
        }
    }
    return pts.back().y;
}

Quantification apply_operation(const Quantification& q, const Operation& op) {
    std::vector<Point> pts = q.points();
    if (const auto* add = std::get_if<AddOp>(&op)) {
        if (add->index > pts.size()) {
            throw Error(ErrorKind::IndexOutOfRange,
                        "ADD index " + std::to_string(add->index) + " out of range");
        }
        pts.insert(pts.begin() + static_cast<std::ptrdiff_t>(add->index), add->point);
    } else if (const auto* remove = std::get_if<RemoveOp>(&op)) {
        if (remove->index >= pts.size()) {
            throw Error(ErrorKind::IndexOutOfRange,
                        "REMOVE index " + std::to_string(remove->index) + " out of range");
        }
        if (pts.size() <= Quantification::kMinPoints) {
            throw Error(ErrorKind::BelowMinimumPoints,
                        "REMOVE would leave fewer than 2 points");
        }
        pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(remove->index));
    } else {
        const auto& change = std::get<ChangeOp>(op);
        if (change.index >= pts.size()) {
            throw Error(ErrorKind::IndexOutOfRange,
                        "CHANGE index " + std::to_string(change.index) + " out of range");
        }
        if (!std::isfinite(change.new_value)) {
            throw Error(ErrorKind::InvalidArgument, "CHANGE value must be finite");
        }
        if (change.field == Field::Y && (change.new_value < 0.0 || change.new_value > 1.0)) {
            throw Error(ErrorKind::ValueOutOfRange, "CHANGE on y must stay within [0, 1]");
        }
        Point& p = pts[change.index];
        (change.field == Field::X ? p.x : p.y) = change.new_value;
    }
    return Quantification(std::move(pts));
}

Quantification apply_operations(const Quantification& q, std::span<const Operation> ops) {
    Quantification current = q;
    for (const auto& op : ops) current = apply_operation(current, op);
    return current;
}

std::size_t operation_cost(std::span<const Operation> ops) noexcept {
    // Each operation edits exactly one point or one value.
    return ops.size();
}

bool is_change(const Operation& op) noexcept {
    return std::holds_alternative<ChangeOp>(op);
}

}  // namespace reqquant
