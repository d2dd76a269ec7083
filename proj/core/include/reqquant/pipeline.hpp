#pragma once

#include <memory>
#include <string_view>
#include <vector>

#include "reqquant/classifier.hpp"
#include "reqquant/embeddings.hpp"
#include "reqquant/extractor.hpp"
#include "reqquant/reasoner.hpp"
#include "reqquant/store.hpp"

namespace reqquant {

struct PipelineConfig {
    ProviderConfig classification_provider;
    ProviderConfig retrieval_provider;
    ExtractionConfig extraction;
    std::vector<Anchor> anchors = default_anchors();
    bool use_analogy = true;
};

// Draft quantification followed by analogy reasoning against a store.
class Pipeline {
public:
    struct Result {
        InitialDraft draft;         // f_{t,0}
        ReasoningResult reasoning;  // reasoning.reasoned is f'_{t,0}
    };

    Pipeline(PipelineConfig config, std::shared_ptr<KnowledgeStore> store);

    InitialDraft quantify(std::string_view text) const;
    Result run(std::string_view text) const;

    const PipelineConfig& config() const noexcept { return config_; }
    KnowledgeStore& store() const noexcept { return *store_; }
    std::shared_ptr<KnowledgeStore> shared_store() const noexcept { return store_; }

private:
    PipelineConfig config_;
    std::shared_ptr<KnowledgeStore> store_;
    std::shared_ptr<const EmbeddingProvider> retrieval_;
    std::unique_ptr<AnchorClassifier> classifier_;
};

}  // namespace reqquant
