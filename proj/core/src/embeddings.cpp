#include "reqquant/embeddings.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <mutex>

#include "http_post.hpp"
#include "reqquant/error.hpp"

namespace reqquant {

namespace {

bool is_blank(std::string_view text) {
    return std::all_of(text.begin(), text.end(),
                       [](unsigned char c) { return std::isspace(c) != 0; });
}

void require_text(std::string_view text) {
    if (is_blank(text)) throw Error(ErrorKind::EmptyText, "cannot embed empty text");
}

std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::vector<double> normalized(std::vector<double> values) {
    double sq = 0.0;
    for (double v : values) sq += v * v;
    const double n = std::sqrt(sq);
    if (!(n > 0.0)) throw Error(ErrorKind::ZeroNorm, "embedding has zero norm");
    for (double& v : values) v /= n;
    return values;
}

}  // namespace

EmbeddingVector::EmbeddingVector(std::vector<double> values) : values_(std::move(values)) {
    for (double v : values_) {
        if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "embedding entry is not finite");
    }
}

double EmbeddingVector::norm() const noexcept {
    double sq = 0.0;
    for (double v : values_) sq += v * v;
    return std::sqrt(sq);
}

void ProviderConfig::validate() const {
    if (dimension == 0) throw Error(ErrorKind::InvalidArgument, "embedding dimension must be positive");
    if (kind == ProviderKind::Remote && endpoint.empty()) {
        throw Error(ErrorKind::InvalidArgument, "remote provider requires an endpoint");
    }
}

std::vector<EmbeddingVector> EmbeddingProvider::embed_many(const std::vector<std::string>& texts) const {
    std::vector<EmbeddingVector> out;
    out.reserve(texts.size());
    for (const auto& t : texts) out.push_back(embed(t));
    return out;
}

BuiltinLexicalProvider::BuiltinLexicalProvider(std::size_t dimension) : dimension_(dimension) {
    if (dimension_ == 0) throw Error(ErrorKind::InvalidArgument, "embedding dimension must be positive");
}

EmbeddingVector BuiltinLexicalProvider::embed(std::string_view text) const {
    require_text(text);
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });

    std::vector<double> counts(dimension_, 0.0);
    if (lower.size() < 3) {
        // Too short for a trigram: the whole string is the only feature.
        counts[fnv1a(lower) % dimension_] += 1.0;
    } else {
        for (std::size_t i = 0; i + 3 <= lower.size(); ++i) {
            counts[fnv1a(std::string_view(lower).substr(i, 3)) % dimension_] += 1.0;
        }
    }
    return EmbeddingVector(normalized(std::move(counts)));
}

std::string BuiltinLexicalProvider::identity() const {
    return "builtin-lexical:" + std::to_string(dimension_);
}

RemoteProvider::RemoteProvider(std::string endpoint, std::size_t dimension,
                               std::chrono::milliseconds timeout)
    : endpoint_(std::move(endpoint)), dimension_(dimension), timeout_(timeout) {
    detail::split_endpoint(endpoint_);
    if (dimension_ == 0) throw Error(ErrorKind::InvalidArgument, "embedding dimension must be positive");
}

EmbeddingVector RemoteProvider::embed(std::string_view text) const {
    return embed_many({std::string(text)}).front();
}

std::vector<EmbeddingVector> RemoteProvider::embed_many(const std::vector<std::string>& texts) const {
    for (const auto& t : texts) require_text(t);
    const auto reply = detail::post_json(endpoint_, {{"texts", texts}}, timeout_);

    if (!reply.is_object() || !reply.contains("vectors") || !reply["vectors"].is_array()) {
        throw Error(ErrorKind::BadResponse, "embedding reply lacks a 'vectors' array");
    }
    if (reply.contains("dimension") &&
        (!reply["dimension"].is_number_unsigned() || reply["dimension"].get<std::size_t>() != dimension_)) {
        throw Error(ErrorKind::DimensionMismatch, "embedding reply dimension differs from configuration");
    }
    const auto& vectors = reply["vectors"];
    if (vectors.size() != texts.size()) {
        throw Error(ErrorKind::BadResponse, "embedding reply has the wrong number of vectors");
    }
    std::vector<EmbeddingVector> out;
    out.reserve(vectors.size());
    for (const auto& v : vectors) {
        std::vector<double> values;
        try {
            values = v.get<std::vector<double>>();
        } catch (const nlohmann::json::exception&) {
            throw Error(ErrorKind::BadResponse, "embedding vector is not a numeric array");
        }
        if (values.size() != dimension_) {
            throw Error(ErrorKind::DimensionMismatch,
                        "embedding vector has dimension " + std::to_string(values.size()) +
                            ", expected " + std::to_string(dimension_));
        }
        out.emplace_back(normalized(EmbeddingVector(std::move(values)).values()));
    }
    return out;
}

std::string RemoteProvider::identity() const {
    return "remote:" + endpoint_ + ":" + std::to_string(dimension_);
}

std::optional<EmbeddingVector> EmbeddingCache::find(const std::string& provider,
                                                    const std::string& text) const {
    std::shared_lock lock(mutex_);
    auto it = entries_.find({provider, text});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void EmbeddingCache::insert(const std::string& provider, const std::string& text, EmbeddingVector vector) {
    std::unique_lock lock(mutex_);
    entries_.insert_or_assign({provider, text}, std::move(vector));
}

std::size_t EmbeddingCache::size() const {
    std::shared_lock lock(mutex_);
    return entries_.size();
}

std::map<EmbeddingCache::Key, EmbeddingVector> EmbeddingCache::snapshot() const {
    std::shared_lock lock(mutex_);
    return entries_;
}

CachingProvider::CachingProvider(std::shared_ptr<const EmbeddingProvider> inner,
                                 std::shared_ptr<EmbeddingCache> cache)
    : inner_(std::move(inner)), cache_(std::move(cache)) {}

EmbeddingVector CachingProvider::embed(std::string_view text) const {
    const std::string key(text);
    const std::string id = inner_->identity();
    if (auto hit = cache_->find(id, key)) return *hit;
    auto v = inner_->embed(text);
    cache_->insert(id, key, v);
    return v;
}

std::shared_ptr<const EmbeddingProvider> make_provider(const ProviderConfig& config,
                                                       std::shared_ptr<EmbeddingCache> cache) {
    config.validate();
    std::shared_ptr<const EmbeddingProvider> provider;
    if (config.kind == ProviderKind::Remote) {
        provider = std::make_shared<RemoteProvider>(config.endpoint, config.dimension, config.timeout);
    } else {
        provider = std::make_shared<BuiltinLexicalProvider>(config.dimension);
    }
    if (config.cache_enabled && cache) {
        provider = std::make_shared<CachingProvider>(std::move(provider), std::move(cache));
    }
    return provider;
}

EmbeddingVector embed(std::string_view text, const ProviderConfig& config) {
    return make_provider(config)->embed(text);
}

double cosine_similarity(const EmbeddingVector& u, const EmbeddingVector& v) {
    if (u.dimension() != v.dimension()) {
        throw Error(ErrorKind::DimensionMismatch, "cosine similarity of vectors with different dimensions");
    }
    const double nu = u.norm();
    const double nv = v.norm();
    if (!(nu > 0.0) || !(nv > 0.0)) {
        throw Error(ErrorKind::ZeroNorm, "cosine similarity of a zero vector");
    }
    double dot = 0.0;
    for (std::size_t i = 0; i < u.dimension(); ++i) dot += u.values()[i] * v.values()[i];
    return std::clamp(dot / (nu * nv), -1.0, 1.0);
}

Providers Providers::builtin(std::size_t dimension) {
    auto p = std::make_shared<BuiltinLexicalProvider>(dimension);
    return {p, p};
}

}  // namespace reqquant
