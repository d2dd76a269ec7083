#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "reqquant/embeddings.hpp"
#include "reqquant/quantification.hpp"

namespace reqquant {

struct Anchor {
    std::string phrase;
    PatternType pattern = PatternType::P1;

    friend bool operator==(const Anchor&, const Anchor&) = default;
};

// The shipped set: ten comparative phrases per pattern, P1 first.
const std::vector<Anchor>& default_anchors();

// Parses [{"phrase": "...", "pattern": "P1|P2|P3"}, ...].
std::vector<Anchor> parse_anchors(std::string_view json_text);
std::vector<Anchor> load_anchors(const std::string& path);

// Half-open character range [begin, end) in the classified text.
using CharSpan = std::pair<std::size_t, std::size_t>;

struct ClassificationResult {
    PatternType pattern = PatternType::P1;
    Anchor best_anchor;
    double similarity = 0.0;
    bool exact_match = false;
    // Where the winning anchor occurs in the text; only set for exact matches.
    std::optional<CharSpan> anchor_span;
};

// Where an anchor phrase occurs in a text. Matching is token based and
// case-insensitive, with three allowances: "no" in the anchor also accepts
// "not", auxiliary verbs (be/is/are/was/were/been) may sit between anchor
// words, and adjacent anchor words may be written as one ("with in" ~ "within").
std::optional<CharSpan> find_anchor(std::string_view text, std::string_view phrase);

// Anchor-similarity classifier with the anchor embeddings computed once.
class AnchorClassifier {
public:
    AnchorClassifier(std::vector<Anchor> anchors, std::shared_ptr<const EmbeddingProvider> provider);

    // An anchor found verbatim wins outright (longest phrase first, similarity
    // 1); otherwise the anchor with the highest cosine similarity wins. Ties go
    // to P1 < P2 < P3, then to list order.
    ClassificationResult classify(std::string_view text) const;

    const std::vector<Anchor>& anchors() const noexcept { return anchors_; }

private:
    std::vector<Anchor> anchors_;
    std::vector<std::size_t> order_;  // anchors sorted by (pattern, list index)
    std::shared_ptr<const EmbeddingProvider> provider_;
    std::vector<EmbeddingVector> anchor_vectors_;
};

ClassificationResult classify(std::string_view text, const std::vector<Anchor>& anchors,
                              std::shared_ptr<const EmbeddingProvider> provider);

struct LossItem {
    std::string sample_id;
    std::vector<PatternType> matching;  // non-empty
};

// Similarities of every sample against every column. By default there is
// one column per pattern (P1, P2, P3); passing per-anchor columns with their
// patterns is accepted too, in which case a sample's matching columns are all
// columns whose pattern it matches.
struct LossBatch {
    std::vector<LossItem> items;
    std::vector<std::vector<double>> similarity;  // items.size() x columns.size()
    std::vector<PatternType> columns{PatternType::P1, PatternType::P2, PatternType::P3};
    double temperature = 0.07;
};

// Sum over samples of the mean, over matching columns p, of
//   -log( exp(sim(s, p) / t) / sum_a exp(sim(s, a) / t) ).
double contrastive_loss(const LossBatch& batch);

}  // namespace reqquant
