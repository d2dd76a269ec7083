#pragma once

#include <chrono>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "reqquant/classifier.hpp"
#include "reqquant/quantification.hpp"

namespace reqquant {

struct ThresholdCandidate {
    double value = 0.0;
    std::string unit;  // as written, possibly empty; display only
    CharSpan span{};
    std::size_t distance_to_anchor = 0;
};

enum class ExtractionMode { Rules, RemoteLlm };

struct ExtractionConfig {
    ExtractionMode mode = ExtractionMode::Rules;
    std::string endpoint;  // remote-llm only
    std::chrono::milliseconds timeout{10000};
    double delta_fraction = 0.10;  // tolerance band as a fraction of |T|

    void validate() const;
};

// Every numeric literal in `text`: integers, decimals, "1,000"-style
// thousands separators, optionally followed by a unit such as %, ms, s, Hz
// or req/s. Numbers glued to a preceding letter (e.g. "GPT-2", "P1") are
// not candidates. Distances are left at zero.
std::vector<ThresholdCandidate> find_numbers(std::string_view text);

// The instruction sent to a remote extraction model, followed by the quoted requirement.
std::string threshold_prompt(std::string_view requirement);

// Rules mode: the number nearest (in characters) to the winning anchor
// occurrence, or the first number when the anchor is not present verbatim.
// Remote mode: first number in the model's reply.
double extract_threshold(std::string_view text, const ClassificationResult& classification,
                         const ExtractionConfig& config = {});

struct InitialDraft {
    Quantification quantification;
    ClassificationResult classification;
    double threshold = 0.0;
};

// Classifies, extracts T and instantiates the pattern with
// delta = delta_fraction * |T| and satisfaction extremes 0 and 1.
InitialDraft initial_quantification(std::string_view text, const AnchorClassifier& classifier,
                                    const ExtractionConfig& config = {});

}  // namespace reqquant
