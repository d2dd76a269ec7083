#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "reqquant/embeddings.hpp"
#include "reqquant/matching.hpp"
#include "reqquant/quantification.hpp"

namespace reqquant {

// A past requirement with the draft it started from and the curve the
// stakeholder finally accepted.
struct RequirementExample {
    std::string id;
    std::string text;
    Quantification initial;
    Quantification preferred;
    std::optional<EmbeddingVector> embedding;
};

// Most similar example (cosine over text embeddings) among those whose
// initial curve has as many points as `target_initial`. Earlier examples win
// ties. Stored embeddings are reused when their dimension matches the provider.
std::optional<RequirementExample> retrieve_analogy(std::string_view target_text,
                                                   const Quantification& target_initial,
                                                   std::span<const RequirementExample> examples,
                                                   const EmbeddingProvider& provider);

// Edit script turning `initial` into `preferred`:
//   1. points alignment: a max-weight matching of the two point sets; surplus
//      initial points become REMOVE, surplus preferred points become ADD with
//      coordinates interpolated between the neighbouring initial points;
//   2. changes identification: the aligned list is re-matched and every
//      pair that differs yields one CHANGE per differing coordinate;
//   3. ADD/REMOVE come before any CHANGE.
// Replaying the result with apply_operations reproduces `preferred` exactly.
std::vector<Operation> extract_operations(const Quantification& initial, const Quantification& preferred);

// Fraction of a value moved by one CHANGE step when first touched.
inline constexpr double kInitialStepFraction = 0.10;

// Moves one coordinate by `fraction` of its own magnitude (or of the value's
// scale when it is zero: 1 for y, the curve's x span for x), then clamps y
// into [0, 1] and keeps x strictly between its neighbours by stopping halfway
// to a neighbour it would otherwise reach. Returns nullopt if the clamped
// value equals the current one.
std::optional<ChangeOp> nudge(const Quantification& q, std::size_t index, Field field, Direction direction,
                              double fraction = kInitialStepFraction);

// Point inserted at `index` of `q` (before the point currently there): the
// average of its two neighbours, or at a boundary the end point shifted
// outward by one mean segment width.
Point interpolated_point(const Quantification& q, std::size_t index);

struct SkippedOperation {
    std::size_t position = 0;  // index in the op sequence
    std::string reason;
};

struct ReplayResult {
    Quantification quantification;
    std::vector<SkippedOperation> skipped;
};

// Replays an analogy's ops onto a target of the same point count. ADD takes
// its coordinates from the target's own neighbours; CHANGE moves the target's
// value by 10% in the source change's direction (see nudge). Ops that cannot
// apply are skipped and reported.
ReplayResult replay_analogy(const Quantification& target, std::span<const Operation> ops);
Quantification apply_analogy(const Quantification& target, std::span<const Operation> ops);

struct ReasoningResult {
    std::optional<std::string> example_id;
    std::vector<Operation> operations;
    Quantification reasoned;
    std::vector<SkippedOperation> skipped;
};

// Retrieve, extract and replay. Without a candidate example the draft is
// returned unchanged.
ReasoningResult reason(std::string_view target_text, const Quantification& target_initial,
                       std::span<const RequirementExample> examples, const EmbeddingProvider& provider);

}  // namespace reqquant
