#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace reqquant {

// One inflection point: x in the requirement's native unit, y a satisfaction
// level in [0, 1].
struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

enum class PatternType { P1, P2, P3 };

std::string_view to_string(PatternType pattern) noexcept;
// Throws Error(Parse) for anything other than "P1", "P2" or "P3".
PatternType parse_pattern(std::string_view text);

// A piecewise-linear satisfaction function given by its inflection points.
// Always holds at least two points with strictly increasing, finite x and
// y in [0, 1]; every constructor path validates.
class Quantification {
public:
    static constexpr std::size_t kMinPoints = 2;

    explicit Quantification(std::vector<Point> points);

    const std::vector<Point>& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    const Point& operator[](std::size_t i) const { return points_[i]; }
    const Point& front() const { return points_.front(); }
    const Point& back() const { return points_.back(); }

    friend bool operator==(const Quantification&, const Quantification&) = default;

private:
    std::vector<Point> points_;
};

enum class Field { X, Y };
enum class Direction { Increase, Decrease };

std::string_view to_string(Field field) noexcept;
std::string_view to_string(Direction direction) noexcept;

struct AddOp {
    Point point;
    std::size_t index = 0;  // position the new point occupies after insertion

    friend bool operator==(const AddOp&, const AddOp&) = default;
};

struct RemoveOp {
    std::size_t index = 0;

    friend bool operator==(const RemoveOp&, const RemoveOp&) = default;
};

struct ChangeOp {
    std::size_t index = 0;
    Field field = Field::X;
    double new_value = 0.0;
    // Value before the edit, when the producer knows it. Analogy replay uses
    // it to recover the direction of the change.
    std::optional<double> previous;

    std::optional<Direction> direction() const;

    friend bool operator==(const ChangeOp&, const ChangeOp&) = default;
};

using Operation = std::variant<AddOp, RemoveOp, ChangeOp>;

// Builds the canonical curve for a pattern:
//   P1 -> [(T-d, lo), (T, hi)]
//   P2 -> [(T, hi), (T+d, lo)]
//   P3 -> [(T-d, lo), (T, hi), (T+d, lo)]
Quantification from_pattern(PatternType pattern, double threshold, double delta,
                            double y_low = 0.0, double y_high = 1.0);

// Flat outside the first/last inflection point, linear in between.
double evaluate(const Quantification& q, double x);

Quantification apply_operation(const Quantification& q, const Operation& op);
Quantification apply_operations(const Quantification& q, std::span<const Operation> ops);

// ADD and REMOVE cost 1; each CHANGE costs 1 (it edits a single value).
std::size_t operation_cost(std::span<const Operation> ops) noexcept;

bool is_change(const Operation& op) noexcept;

}  // namespace reqquant
