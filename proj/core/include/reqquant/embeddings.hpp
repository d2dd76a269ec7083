#pragma once

#include <chrono>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace reqquant {

// Dense embedding with finite entries.
class EmbeddingVector {
public:
    EmbeddingVector() = default;
    explicit EmbeddingVector(std::vector<double> values);

    const std::vector<double>& values() const noexcept { return values_; }
    std::size_t dimension() const noexcept { return values_.size(); }
    double norm() const noexcept;

    friend bool operator==(const EmbeddingVector&, const EmbeddingVector&) = default;

private:
    std::vector<double> values_;
};

enum class ProviderKind { BuiltinLexical, Remote };

struct ProviderConfig {
    ProviderKind kind = ProviderKind::BuiltinLexical;
    std::size_t dimension = 256;
    std::string endpoint;  // remote only, e.g. "http://127.0.0.1:8000/embed"
    std::chrono::milliseconds timeout{5000};
    bool cache_enabled = true;

    // Throws Error(InvalidArgument) when the combination is unusable.
    void validate() const;
};

class EmbeddingProvider {
public:
    virtual ~EmbeddingProvider() = default;

    // Returns an L2-normalized vector. Throws Error(EmptyText) for blank input.
    virtual EmbeddingVector embed(std::string_view text) const = 0;
    virtual std::vector<EmbeddingVector> embed_many(const std::vector<std::string>& texts) const;

    virtual std::size_t dimension() const noexcept = 0;
    // Stable identity used as the cache namespace.
    virtual std::string identity() const = 0;
};

// Lowercased character trigrams hashed (FNV-1a) into `dimension` buckets.
class BuiltinLexicalProvider final : public EmbeddingProvider {
public:
    explicit BuiltinLexicalProvider(std::size_t dimension = 256);

    EmbeddingVector embed(std::string_view text) const override;
    std::size_t dimension() const noexcept override { return dimension_; }
    std::string identity() const override;

private:
    std::size_t dimension_;
};

// Speaks the JSON contract
//   POST {endpoint} {"texts": [...]} -> {"vectors": [[...], ...], "dimension": n}
class RemoteProvider final : public EmbeddingProvider {
public:
    RemoteProvider(std::string endpoint, std::size_t dimension, std::chrono::milliseconds timeout);

    EmbeddingVector embed(std::string_view text) const override;
    std::vector<EmbeddingVector> embed_many(const std::vector<std::string>& texts) const override;
    std::size_t dimension() const noexcept override { return dimension_; }
    std::string identity() const override;

private:
    std::string endpoint_;
    std::size_t dimension_;
    std::chrono::milliseconds timeout_;
};

// (provider identity, exact text) -> vector. Concurrent readers, serialized writers.
class EmbeddingCache {
public:
    using Key = std::pair<std::string, std::string>;

    std::optional<EmbeddingVector> find(const std::string& provider, const std::string& text) const;
    void insert(const std::string& provider, const std::string& text, EmbeddingVector vector);
    std::size_t size() const;
    std::map<Key, EmbeddingVector> snapshot() const;

private:
    mutable std::shared_mutex mutex_;
    std::map<Key, EmbeddingVector> entries_;
};

class CachingProvider final : public EmbeddingProvider {
public:
    CachingProvider(std::shared_ptr<const EmbeddingProvider> inner, std::shared_ptr<EmbeddingCache> cache);

    EmbeddingVector embed(std::string_view text) const override;
    std::size_t dimension() const noexcept override { return inner_->dimension(); }
    std::string identity() const override { return inner_->identity(); }

private:
    std::shared_ptr<const EmbeddingProvider> inner_;
    std::shared_ptr<EmbeddingCache> cache_;
};

// Builds the provider described by `config`, wrapped in a cache when
// `config.cache_enabled` and a cache is supplied.
std::shared_ptr<const EmbeddingProvider> make_provider(const ProviderConfig& config,
                                                       std::shared_ptr<EmbeddingCache> cache = nullptr);

EmbeddingVector embed(std::string_view text, const ProviderConfig& config);

// dot(u, v) / (|u| |v|), clamped to [-1, 1].
double cosine_similarity(const EmbeddingVector& u, const EmbeddingVector& v);

// Both classification and retrieval may use distinct encoders.
struct Providers {
    std::shared_ptr<const EmbeddingProvider> classification;
    std::shared_ptr<const EmbeddingProvider> retrieval;

    static Providers builtin(std::size_t dimension = 256);
};

}  // namespace reqquant
