#include "reqquant/store.hpp"

#include <fstream>
#include <sstream>

#include "reqquant/error.hpp"
#include "reqquant/json_io.hpp"

namespace reqquant {

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Calls `fn(json, line_number)` for every non-blank line; parse and
// validation failures are rethrown with the location attached.
template <typename Fn>
void for_each_record(const std::string& contents, const std::string& source, Fn fn) {
    std::istringstream in(contents);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        Json j;
        try {
            j = Json::parse(line);
        } catch (const Json::exception& e) {
            throw Error(ErrorKind::Parse, source + ":" + std::to_string(line_no) + ": not JSON: " + e.what());
        }
        try {
            fn(j, line_no);
        } catch (const Error& e) {
            std::string where = source + ":" + std::to_string(line_no);
            if (j.is_object() && j.contains("id") && j["id"].is_string()) {
                where += " (record '" + j["id"].get<std::string>() + "')";
            }
            throw Error(e.kind() == ErrorKind::DuplicateId ? e.kind() : ErrorKind::Parse, where + ": " + e.what());
        }
    }
}

void write_atomically(const std::filesystem::path& path, const std::string& contents) {
    const auto tmp = std::filesystem::path(path.string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorKind::Io, "cannot write " + tmp.string());
        out << contents;
        if (!out.flush()) throw Error(ErrorKind::Io, "write to " + tmp.string() + " failed");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot replace " + path.string() + ": " + ec.message());
}

}  // namespace

KnowledgeStore::KnowledgeStore() : cache_(std::make_shared<EmbeddingCache>()) {}

KnowledgeStore::KnowledgeStore(std::filesystem::path path)
    : path_(std::move(path)), cache_(std::make_shared<EmbeddingCache>()) {}

KnowledgeStore::KnowledgeStore(KnowledgeStore&& other) noexcept {
    std::unique_lock lock(other.mutex_);
    path_ = std::move(other.path_);
    cache_ = std::move(other.cache_);
    examples_ = std::move(other.examples_);
}

KnowledgeStore& KnowledgeStore::operator=(KnowledgeStore&& other) noexcept {
    if (this != &other) {
        std::scoped_lock lock(mutex_, other.mutex_);
        path_ = std::move(other.path_);
        cache_ = std::move(other.cache_);
        examples_ = std::move(other.examples_);
    }
    return *this;
}

std::filesystem::path KnowledgeStore::cache_path() const {
    return path_.empty() ? path_ : std::filesystem::path(path_.string() + ".cache.jsonl");
}

KnowledgeStore KnowledgeStore::load(const std::filesystem::path& path) {
    KnowledgeStore store(path);
    if (std::filesystem::exists(path)) {
        for_each_record(read_file(path), path.string(), [&](const Json& j, std::size_t) {
            auto ex = example_from_json(j);
            if (store.contains(ex.id)) throw Error(ErrorKind::DuplicateId, "duplicate id '" + ex.id + "'");
            store.examples_.push_back(std::move(ex));
        });
    }
    const auto cache_file = store.cache_path();
    if (std::filesystem::exists(cache_file)) {
        for_each_record(read_file(cache_file), cache_file.string(), [&](const Json& j, std::size_t) {
            if (!j.is_object() || !j.contains("provider") || !j.contains("text") || !j.contains("vector") ||
                !j["provider"].is_string() || !j["text"].is_string()) {
                throw Error(ErrorKind::Parse, "cache entries need provider, text and vector");
            }
            std::vector<double> v;
            try {
                v = j["vector"].get<std::vector<double>>();
            } catch (const Json::exception&) {
                throw Error(ErrorKind::Parse, "cache vector must be numeric");
            }
            store.cache_->insert(j["provider"].get<std::string>(), j["text"].get<std::string>(),
                                 EmbeddingVector(std::move(v)));
        });
    }
    return store;
}

void KnowledgeStore::save() const {
    if (path_.empty()) throw Error(ErrorKind::Io, "store has no backing path");
    std::shared_lock lock(mutex_);
    std::string body;
    for (const auto& ex : examples_) body += to_json(ex).dump() + "\n";
    write_atomically(path_, body);

    std::string cache_body;
    for (const auto& [key, vec] : cache_->snapshot()) {
        cache_body += Json{{"provider", key.first}, {"text", key.second}, {"vector", vec.values()}}.dump() + "\n";
    }
    write_atomically(cache_path(), cache_body);
}

void KnowledgeStore::add_example(RequirementExample example) {
    std::unique_lock lock(mutex_);
    for (const auto& ex : examples_) {
        if (ex.id == example.id) throw Error(ErrorKind::DuplicateId, "example id '" + example.id + "' already stored");
    }
    if (!path_.empty()) {
        std::ofstream out(path_, std::ios::binary | std::ios::app);
        if (!out) throw Error(ErrorKind::Io, "cannot append to " + path_.string());
        // One write per record keeps the append atomic at line granularity.
        out << (to_json(example).dump() + "\n");
        if (!out.flush()) throw Error(ErrorKind::Io, "append to " + path_.string() + " failed");
    }
    examples_.push_back(std::move(example));
}

std::vector<RequirementExample> KnowledgeStore::examples() const {
    std::shared_lock lock(mutex_);
    return examples_;
}

std::optional<RequirementExample> KnowledgeStore::find(const std::string& id) const {
    std::shared_lock lock(mutex_);
    for (const auto& ex : examples_) {
        if (ex.id == id) return ex;
    }
    return std::nullopt;
}

bool KnowledgeStore::contains(const std::string& id) const {
    return find(id).has_value();
}

std::size_t KnowledgeStore::size() const {
    std::shared_lock lock(mutex_);
    return examples_.size();
}

std::string KnowledgeStore::next_id() const {
    std::shared_lock lock(mutex_);
    for (std::size_t n = examples_.size() + 1;; ++n) {
        std::string candidate = "ex-" + std::to_string(n);
        bool taken = false;
        for (const auto& ex : examples_) taken = taken || ex.id == candidate;
        if (!taken) return candidate;
    }
}

std::vector<DatasetRecord> parse_dataset(const std::string& contents, const std::string& source) {
    std::vector<DatasetRecord> records;
    for_each_record(contents, source, [&](const Json& j, std::size_t) {
        if (!j.is_object() || !j.contains("id") || !j["id"].is_string()) throw Error(ErrorKind::Parse, "missing field 'id'");
        if (!j.contains("text") || !j["text"].is_string()) throw Error(ErrorKind::Parse, "missing field 'text'");
        if (!j.contains("ground_truth")) throw Error(ErrorKind::Parse, "missing field 'ground_truth'");
        DatasetRecord r{j["id"].get<std::string>(), j["text"].get<std::string>(),
                        quantification_from_json(j["ground_truth"])};
        for (const auto& existing : records) {
            if (existing.id == r.id) throw Error(ErrorKind::DuplicateId, "duplicate id '" + r.id + "'");
        }
        records.push_back(std::move(r));
    });
    return records;
}

std::vector<DatasetRecord> import_dataset(const std::filesystem::path& path) {
    return parse_dataset(read_file(path), path.string());
}

std::vector<RequirementExample> read_examples(const std::filesystem::path& path) {
    std::vector<RequirementExample> out;
    for_each_record(read_file(path), path.string(), [&](const Json& j, std::size_t) {
        out.push_back(example_from_json(j));
    });
    return out;
}

}  // namespace reqquant
