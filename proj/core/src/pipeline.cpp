#include "reqquant/pipeline.hpp"

#include "reqquant/error.hpp"

namespace reqquant {

Pipeline::Pipeline(PipelineConfig config, std::shared_ptr<KnowledgeStore> store)
    : config_(std::move(config)), store_(std::move(store)) {
    if (!store_) store_ = std::make_shared<KnowledgeStore>();
    config_.extraction.validate();
    auto cache = store_->cache();
    auto classification = make_provider(config_.classification_provider, cache);
    retrieval_ = make_provider(config_.retrieval_provider, cache);
    classifier_ = std::make_unique<AnchorClassifier>(config_.anchors, std::move(classification));
}

InitialDraft Pipeline::quantify(std::string_view text) const {
    return initial_quantification(text, *classifier_, config_.extraction);
}

Pipeline::Result Pipeline::run(std::string_view text) const {
    InitialDraft draft = quantify(text);
    if (!config_.use_analogy) {
        return {draft, ReasoningResult{std::nullopt, {}, draft.quantification, {}}};
    }
    const auto examples = store_->examples();
    auto reasoning = reason(text, draft.quantification, examples, *retrieval_);
    return {std::move(draft), std::move(reasoning)};
}

}  // namespace reqquant
