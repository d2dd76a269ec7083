#include "reqquant/extractor.hpp"

#include <cctype>
#include <cmath>
#include <regex>

#include "http_post.hpp"
#include "reqquant/error.hpp"

namespace reqquant {

namespace {

// A grouped integer ("1,000,000") or plain digits, an optional fraction, or
// a bare fraction (".5"); then an optional unit.
const std::regex& number_pattern() {
    static const std::regex re(
        R"((\d{1,3}(?:,\d{3})+(?:\.\d+)?|\d+(?:\.\d+)?|\.\d+))"
        R"((\s?(%|[A-Za-z]+/[A-Za-z]+\b|(?:ms|s|secs?|seconds?|min|minutes?|h|hours?|[kMG]?Hz|[KMGT]B|fps|rps|qps|tps)\b))?)");
    return re;
}

std::size_t span_distance(CharSpan a, CharSpan b) {
    if (a.second <= b.first) return b.first - a.second;
    if (b.second <= a.first) return a.first - b.second;
    return 0;
}

std::string strip_commas(std::string s) {
    std::erase(s, ',');
    return s;
}

}  // namespace

void ExtractionConfig::validate() const {
    if (!(delta_fraction > 0.0 && delta_fraction < 1.0)) {
        throw Error(ErrorKind::InvalidArgument, "delta_fraction must lie in (0, 1)");
    }
    if (mode == ExtractionMode::RemoteLlm && endpoint.empty()) {
        throw Error(ErrorKind::InvalidArgument, "remote-llm extraction requires an endpoint");
    }
}

std::vector<ThresholdCandidate> find_numbers(std::string_view text) {
    auto is_letter = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_'; };
    std::vector<ThresholdCandidate> out;
    const std::string s(text);
    for (auto it = std::sregex_iterator(s.begin(), s.end(), number_pattern()); it != std::sregex_iterator();
         ++it) {
        const auto& m = *it;
        auto begin = static_cast<std::size_t>(m.position(0));
        const auto end = begin + static_cast<std::size_t>(m.length(0));
        bool negative = false;
        if (begin > 0) {
            const char prev = s[begin - 1];
            if (is_letter(prev)) continue;  // "P1", "MP3"
            if (prev == '-') {
                if (begin > 1 && is_letter(s[begin - 2])) continue;  // "GPT-2"
                // A minus after a digit is a range dash, not a sign.
                negative = begin == 1 || !std::isdigit(static_cast<unsigned char>(s[begin - 2]));
            }
        }
        ThresholdCandidate c;
        c.value = std::stod(strip_commas(m[1].str()));
        if (negative) {
            c.value = -c.value;
            --begin;
        }
        c.unit = m[3].matched ? m[3].str() : std::string();
        c.span = {begin, end};
        out.push_back(std::move(c));
    }
    return out;
}

std::string threshold_prompt(std::string_view requirement) {
    return "Please extract the numeric threshold from the following performance requirements: \"" +
           std::string(requirement) + "\"";
}

double extract_threshold(std::string_view text, const ClassificationResult& classification,
                         const ExtractionConfig& config) {
    config.validate();
    if (config.mode == ExtractionMode::RemoteLlm) {
        const auto reply = detail::post_json(config.endpoint, {{"prompt", threshold_prompt(text)}}, config.timeout);
        if (!reply.is_object() || !reply.contains("text") || !reply["text"].is_string()) {
            throw Error(ErrorKind::BadResponse, "extraction reply lacks a 'text' string");
        }
        const auto numbers = find_numbers(reply["text"].get<std::string>());
        if (numbers.empty()) throw Error(ErrorKind::BadResponse, "extraction reply contains no number");
        return numbers.front().value;
    }

    auto numbers = find_numbers(text);
    if (numbers.empty()) throw Error(ErrorKind::NoThreshold, "requirement contains no number");
    if (!classification.anchor_span) return numbers.front().value;

    const ThresholdCandidate* best = nullptr;
    for (auto& c : numbers) {
        c.distance_to_anchor = span_distance(c.span, *classification.anchor_span);
        if (!best || c.distance_to_anchor < best->distance_to_anchor) best = &c;
    }
    return best->value;
}

InitialDraft initial_quantification(std::string_view text, const AnchorClassifier& classifier,
                                    const ExtractionConfig& config) {
    config.validate();
    auto classification = classifier.classify(text);
    const double threshold = extract_threshold(text, classification, config);
    const double delta = config.delta_fraction * std::abs(threshold);
    if (!(delta > 0.0)) {
        throw Error(ErrorKind::DegenerateThreshold, "threshold 0 leaves no tolerance band");
    }
    auto q = from_pattern(classification.pattern, threshold, delta);
    return {std::move(q), std::move(classification), threshold};
}

}  // namespace reqquant
