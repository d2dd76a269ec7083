#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "reqquant/embeddings.hpp"
#include "reqquant/reasoner.hpp"

namespace reqquant {

// Quantified examples, one JSON object per line:
//   {"id": ..., "text": ..., "initial": [[x,y],...], "preferred": [[x,y],...]}
// The embedding cache lives in "<path>.cache.jsonl" next to it as
//   {"provider": ..., "text": ..., "vector": [...]}
// Insertion order is preserved; retrieval ties depend on it.
class KnowledgeStore {
public:
    // An unbacked, in-memory store.
    KnowledgeStore();
    // A store bound to `path`; nothing is read until load().
    explicit KnowledgeStore(std::filesystem::path path);

    KnowledgeStore(KnowledgeStore&& other) noexcept;
    KnowledgeStore& operator=(KnowledgeStore&& other) noexcept;
    KnowledgeStore(const KnowledgeStore&) = delete;
    KnowledgeStore& operator=(const KnowledgeStore&) = delete;

    // Reads `path` (a missing file is an empty store). Malformed lines throw
    // Error(Parse) naming the line number and, when readable, the record id.
    static KnowledgeStore load(const std::filesystem::path& path);

    // Rewrites the backing file and the cache file.
    void save() const;

    // Appends and, when backed, flushes one line to the file.
    // Throws Error(DuplicateId) if the id is taken.
    void add_example(RequirementExample example);

    std::vector<RequirementExample> examples() const;  // snapshot in insertion order
    std::optional<RequirementExample> find(const std::string& id) const;
    bool contains(const std::string& id) const;
    std::size_t size() const;

    // Fresh id of the form "ex-<n>" not yet in the store.
    std::string next_id() const;

    const std::filesystem::path& path() const noexcept { return path_; }
    std::filesystem::path cache_path() const;
    std::shared_ptr<EmbeddingCache> cache() const noexcept { return cache_; }

private:
    std::filesystem::path path_;
    std::shared_ptr<EmbeddingCache> cache_;
    mutable std::shared_mutex mutex_;
    std::vector<RequirementExample> examples_;
};

struct DatasetRecord {
    std::string id;
    std::string text;
    Quantification ground_truth;
};

// Same line format with "ground_truth" in place of initial/preferred.
std::vector<DatasetRecord> import_dataset(const std::filesystem::path& path);
std::vector<DatasetRecord> parse_dataset(const std::string& contents, const std::string& source = "<inline>");

// Reads an example file (store line format) without binding a store to it.
std::vector<RequirementExample> read_examples(const std::filesystem::path& path);

}  // namespace reqquant
