#include "reqquant/classifier.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "reqquant/error.hpp"

namespace reqquant {

namespace {

struct Token {
    std::string text;
    std::size_t begin = 0;
    std::size_t end = 0;
};

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        if (!std::isalnum(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        Token t;
        t.begin = i;
        while (i < text.size() && std::isalnum(static_cast<unsigned char>(text[i]))) {
            t.text.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(text[i]))));
            ++i;
        }
        t.end = i;
        tokens.push_back(std::move(t));
    }
    return tokens;
}

bool is_auxiliary(const std::string& word) {
    static constexpr std::array<std::string_view, 6> kAux{"be", "is", "are", "was", "were", "been"};
    return std::find(kAux.begin(), kAux.end(), word) != kAux.end();
}

bool word_matches(const std::string& anchor_word, const std::string& text_word) {
    return anchor_word == text_word || (anchor_word == "no" && text_word == "not");
}

// Tries to match `phrase` starting exactly at text token `start`.
std::optional<std::size_t> match_at(const std::vector<Token>& text, std::size_t start,
                                    const std::vector<Token>& phrase) {
    std::size_t ti = start;
    std::size_t pi = 0;
    while (pi < phrase.size()) {
        if (pi > 0) {
            while (ti < text.size() && is_auxiliary(text[ti].text) &&
                   !word_matches(phrase[pi].text, text[ti].text)) {
                ++ti;
            }
        }
        if (ti >= text.size()) return std::nullopt;
        if (word_matches(phrase[pi].text, text[ti].text)) {
            ++pi;
            ++ti;
            continue;
        }
        // Several anchor words written as a single text word.
        std::string joined = phrase[pi].text;
        std::size_t pj = pi + 1;
        while (pj < phrase.size() && joined.size() < text[ti].text.size()) {
            joined += phrase[pj].text;
            ++pj;
            if (joined == text[ti].text) break;
        }
        if (pj - pi < 2 || joined != text[ti].text) return std::nullopt;
        pi = pj;
        ++ti;
    }
    return ti - 1;  // index of the last consumed token
}

}  // namespace

const std::vector<Anchor>& default_anchors() {
    static const std::vector<Anchor> kAnchors = [] {
        std::vector<Anchor> a;
        for (const char* p : {"no less than", "at least", "greater than", "minimum of", "not below",
                              "above", "exceeding", "no fewer than", "greater than or equal to",
                              "at minimum"}) {
            a.push_back({p, PatternType::P1});
        }
        for (const char* p : {"no more than", "at most", "less than", "maximum of", "not exceeding",
                              "under", "below", "up to", "at maximum", "with in"}) {
            a.push_back({p, PatternType::P2});
        }
        for (const char* p : {"exactly", "equal to", "precisely", "specifically", "fixed at", "set to",
                              "equivalent to", "identical to", "precisely at", "designated as"}) {
            a.push_back({p, PatternType::P3});
        }
        return a;
    }();
    return kAnchors;
}

std::vector<Anchor> parse_anchors(std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, std::string("anchor file is not JSON: ") + e.what());
    }
    if (!doc.is_array()) throw Error(ErrorKind::Parse, "anchor file must hold a JSON array");
    std::vector<Anchor> anchors;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& item = doc[i];
        if (!item.is_object() || !item.contains("phrase") || !item["phrase"].is_string() ||
            !item.contains("pattern") || !item["pattern"].is_string()) {
            throw Error(ErrorKind::Parse, "anchor " + std::to_string(i) + " needs string phrase and pattern");
        }
        Anchor a{item["phrase"].get<std::string>(), parse_pattern(item["pattern"].get<std::string>())};
        if (tokenize(a.phrase).empty()) {
            throw Error(ErrorKind::Parse, "anchor " + std::to_string(i) + " has an empty phrase");
        }
        anchors.push_back(std::move(a));
    }
    return anchors;
}

std::vector<Anchor> load_anchors(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open anchor file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_anchors(buf.str());
}

std::optional<CharSpan> find_anchor(std::string_view text, std::string_view phrase) {
    const auto text_tokens = tokenize(text);
    const auto phrase_tokens = tokenize(phrase);
    if (phrase_tokens.empty()) return std::nullopt;
    for (std::size_t s = 0; s < text_tokens.size(); ++s) {
        if (auto last = match_at(text_tokens, s, phrase_tokens)) {
            return CharSpan{text_tokens[s].begin, text_tokens[*last].end};
        }
    }
    return std::nullopt;
}

AnchorClassifier::AnchorClassifier(std::vector<Anchor> anchors,
                                   std::shared_ptr<const EmbeddingProvider> provider)
    : anchors_(std::move(anchors)), provider_(std::move(provider)) {
    if (anchors_.empty()) throw Error(ErrorKind::InvalidArgument, "anchor set is empty");
    if (!provider_) throw Error(ErrorKind::InvalidArgument, "classifier needs an embedding provider");
    order_.resize(anchors_.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
        return anchors_[a].pattern < anchors_[b].pattern;
    });
    std::vector<std::string> phrases;
    for (const auto& a : anchors_) phrases.push_back(a.phrase);
    anchor_vectors_ = provider_->embed_many(phrases);
}

ClassificationResult AnchorClassifier::classify(std::string_view text) const {
    if (tokenize(text).empty()) throw Error(ErrorKind::EmptyText, "cannot classify empty text");

    std::optional<std::size_t> exact;
    CharSpan exact_span{};
    for (std::size_t idx : order_) {
        auto span = find_anchor(text, anchors_[idx].phrase);
        if (!span) continue;
        if (!exact || anchors_[idx].phrase.size() > anchors_[*exact].phrase.size()) {
            exact = idx;
            exact_span = *span;
        }
    }
    if (exact) {
        return {anchors_[*exact].pattern, anchors_[*exact], 1.0, true, exact_span};
    }

    const auto v = provider_->embed(text);
    std::size_t best = order_.front();
    double best_sim = -2.0;
    for (std::size_t idx : order_) {
        const double sim = cosine_similarity(v, anchor_vectors_[idx]);
        if (sim > best_sim) {
            best_sim = sim;
            best = idx;
        }
    }
    return {anchors_[best].pattern, anchors_[best], best_sim, false, std::nullopt};
}

ClassificationResult classify(std::string_view text, const std::vector<Anchor>& anchors,
                              std::shared_ptr<const EmbeddingProvider> provider) {
    return AnchorClassifier(anchors, std::move(provider)).classify(text);
}

double contrastive_loss(const LossBatch& batch) {
    if (!(batch.temperature > 0.0) || !std::isfinite(batch.temperature)) {
        throw Error(ErrorKind::InvalidArgument, "temperature must be positive");
    }
    if (batch.columns.empty()) throw Error(ErrorKind::InvalidArgument, "loss batch has no columns");
    if (batch.similarity.size() != batch.items.size()) {
        throw Error(ErrorKind::DimensionMismatch, "similarity rows do not match the number of samples");
    }

    double total = 0.0;
    for (std::size_t i = 0; i < batch.items.size(); ++i) {
        const auto& item = batch.items[i];
        const auto& row = batch.similarity[i];
        if (row.size() != batch.columns.size()) {
            throw Error(ErrorKind::DimensionMismatch,
                        "similarity row for '" + item.sample_id + "' has the wrong length");
        }
        if (item.matching.empty()) {
            throw Error(ErrorKind::InvalidArgument, "sample '" + item.sample_id + "' has no matching pattern");
        }
        for (double s : row) {
            if (!std::isfinite(s)) throw Error(ErrorKind::InvalidArgument, "similarity is not finite");
        }

        // log-sum-exp over every column, shifted by the row maximum.
        const double peak = *std::max_element(row.begin(), row.end()) / batch.temperature;
        double denom = 0.0;
        for (double s : row) denom += std::exp(s / batch.temperature - peak);
        const double log_denom = peak + std::log(denom);

        double sum = 0.0;
        std::size_t count = 0;
        for (std::size_t c = 0; c < batch.columns.size(); ++c) {
            const bool matches = std::find(item.matching.begin(), item.matching.end(),
                                           batch.columns[c]) != item.matching.end();
            if (!matches) continue;
            sum += log_denom - row[c] / batch.temperature;
            ++count;
        }
        if (count == 0) {
            throw Error(ErrorKind::InvalidArgument,
                        "sample '" + item.sample_id + "' matches no column of the batch");
        }
        total += sum / static_cast<double>(count);
    }
    return total;
}

}  // namespace reqquant
