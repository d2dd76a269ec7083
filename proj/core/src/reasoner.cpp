#include "reqquant/reasoner.hpp"

#include <algorithm>
#include <cmath>

#include "reqquant/error.hpp"

namespace reqquant {

std::optional<RequirementExample> retrieve_analogy(std::string_view target_text,
                                                   const Quantification& target_initial,
                                                   std::span<const RequirementExample> examples,
                                                   const EmbeddingProvider& provider) {
    const RequirementExample* best = nullptr;
    double best_sim = -2.0;
    std::optional<EmbeddingVector> target_vec;
    for (const auto& ex : examples) {
        if (ex.initial.size() != target_initial.size()) continue;
        if (!target_vec) target_vec = provider.embed(target_text);
        const EmbeddingVector vec = (ex.embedding && ex.embedding->dimension() == provider.dimension())
                                        ? *ex.embedding
                                        : provider.embed(ex.text);
        const double sim = cosine_similarity(*target_vec, vec);
        if (sim > best_sim) {
            best_sim = sim;
            best = &ex;
        }
    }
    if (!best) return std::nullopt;
    return *best;
}

Point interpolated_point(const Quantification& q, std::size_t index) {
    const auto& pts = q.points();
    if (index > pts.size()) throw Error(ErrorKind::IndexOutOfRange, "insertion gap out of range");
    if (index > 0 && index < pts.size()) {
        const Point& a = pts[index - 1];
        const Point& b = pts[index];
        return {(a.x + b.x) / 2.0, (a.y + b.y) / 2.0};
    }
    const double width = (pts.back().x - pts.front().x) / static_cast<double>(pts.size() - 1);
    if (index == 0) return {pts.front().x - width, pts.front().y};
    return {pts.back().x + width, pts.back().y};
}

std::vector<Operation> extract_operations(const Quantification& initial, const Quantification& preferred) {
    const auto& src = initial.points();
    const auto& dst = preferred.points();
    const Matching alignment = km_match(src, dst);

    std::vector<Operation> ops;
    Quantification aligned = initial;

    if (src.size() > dst.size()) {
        // Indices shift left as earlier points disappear.
        std::size_t removed = 0;
        for (std::size_t i : alignment.unmatched_source) {
            RemoveOp op{i - removed};
            aligned = apply_operation(aligned, op);
            ops.emplace_back(op);
            ++removed;
        }
    } else if (src.size() < dst.size()) {
        std::vector<char> matched(dst.size(), 0);
        for (const auto& [i, j] : alignment.pairs) matched[j] = 1;
        // After alignment, position j of the working list pairs with preferred point j.
        for (std::size_t j = 0; j < dst.size(); ++j) {
            if (matched[j]) continue;
            AddOp op{interpolated_point(aligned, j), j};
            aligned = apply_operation(aligned, op);
            ops.emplace_back(op);
        }
    }

    // A crossing optimum cannot be realized by in-place CHANGEs on a strictly
    // ordered list, so the re-match only counts when it is positional; for
    // equal-length sorted lists that is the one order-preserving pairing.
    const Matching rematch = km_match(aligned.points(), dst);
    std::vector<std::pair<std::size_t, std::size_t>> pairs = rematch.pairs;
    const bool positional = std::all_of(pairs.begin(), pairs.end(), [](const auto& p) { return p.first == p.second; });
    if (!positional || pairs.size() != dst.size()) {
        pairs.clear();
        for (std::size_t i = 0; i < dst.size(); ++i) pairs.emplace_back(i, i);
    }

    // Leftward x moves and y edits ascending, then rightward x moves
    // descending, so every intermediate curve keeps strictly increasing x.
    std::vector<ChangeOp> forward;
    std::vector<ChangeOp> rightward;
    for (const auto& [i, j] : pairs) {
        const Point& from = aligned[i];
        const Point& to = dst[j];
        if (from.x != to.x) {
            ChangeOp c{i, Field::X, to.x, from.x};
            (to.x > from.x ? rightward : forward).push_back(c);
        }
        if (from.y != to.y) forward.push_back(ChangeOp{i, Field::Y, to.y, from.y});
    }
    std::stable_sort(forward.begin(), forward.end(),
                     [](const ChangeOp& a, const ChangeOp& b) { return a.index < b.index; });
    std::stable_sort(rightward.begin(), rightward.end(),
                     [](const ChangeOp& a, const ChangeOp& b) { return a.index > b.index; });
    for (auto& c : forward) ops.emplace_back(std::move(c));
    for (auto& c : rightward) ops.emplace_back(std::move(c));
    return ops;
}

std::optional<ChangeOp> nudge(const Quantification& q, std::size_t index, Field field, Direction direction,
                              double fraction) {
    if (index >= q.size()) throw Error(ErrorKind::IndexOutOfRange, "point index out of range");
    if (!(fraction > 0.0)) throw Error(ErrorKind::InvalidArgument, "step fraction must be positive");
    const Point& p = q[index];
    const double value = field == Field::X ? p.x : p.y;
    double base = std::abs(value);
    if (base == 0.0) base = field == Field::Y ? 1.0 : q.back().x - q.front().x;
    const double step = fraction * base;
    double next = direction == Direction::Increase ? value + step : value - step;

    if (field == Field::Y) {
        next = std::clamp(next, 0.0, 1.0);
    } else {
        if (index + 1 < q.size() && next >= q[index + 1].x) next = (value + q[index + 1].x) / 2.0;
        if (index > 0 && next <= q[index - 1].x) next = (value + q[index - 1].x) / 2.0;
    }
    if (next == value) return std::nullopt;
    return ChangeOp{index, field, next, value};
}

ReplayResult replay_analogy(const Quantification& target, std::span<const Operation> ops) {
    ReplayResult out{target, {}};
    Quantification& cur = out.quantification;
    for (std::size_t pos = 0; pos < ops.size(); ++pos) {
        try {
            if (const auto* add = std::get_if<AddOp>(&ops[pos])) {
                cur = apply_operation(cur, AddOp{interpolated_point(cur, add->index), add->index});
            } else if (const auto* remove = std::get_if<RemoveOp>(&ops[pos])) {
                cur = apply_operation(cur, *remove);
            } else {
                const auto& change = std::get<ChangeOp>(ops[pos]);
                const auto direction = change.direction();
                if (!direction) {
                    out.skipped.push_back({pos, "change has no direction"});
                    continue;
                }
                auto step = nudge(cur, change.index, change.field, *direction);
                if (!step) {
                    out.skipped.push_back({pos, "change clamped to no-op"});
                    continue;
                }
                cur = apply_operation(cur, *step);
            }
        } catch (const Error& e) {
            out.skipped.push_back({pos, e.what()});
        }
    }
    return out;
}

Quantification apply_analogy(const Quantification& target, std::span<const Operation> ops) {
    return replay_analogy(target, ops).quantification;
}

ReasoningResult reason(std::string_view target_text, const Quantification& target_initial,
                       std::span<const RequirementExample> examples, const EmbeddingProvider& provider) {
    auto example = retrieve_analogy(target_text, target_initial, examples, provider);
    if (!example) return {std::nullopt, {}, target_initial, {}};
    auto ops = extract_operations(example->initial, example->preferred);
    auto replay = replay_analogy(target_initial, ops);
    return {example->id, std::move(ops), std::move(replay.quantification), std::move(replay.skipped)};
}

}  // namespace reqquant
