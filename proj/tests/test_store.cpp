#include <gtest/gtest.h>

#include <fstream>
#include <thread>

#include "reqquant/error.hpp"
#include "reqquant/json_io.hpp"
#include "reqquant/store.hpp"
#include "support/generators.hpp"
#include "support/temp_dir.hpp"

namespace rq = reqquant;
using rq::Quantification;

namespace {

void write(const std::filesystem::path& p, const std::string& s) {
    std::ofstream(p) << s;
}

rq::RequirementExample example(std::string id, rq::testing::Gen& gen) {
    return {std::move(id), "Latency shall be at most 40 ms", gen.curve(), gen.curve(), std::nullopt};
}

}  // namespace

TEST(Store, MissingFileLoadsEmpty) {
    rq::testing::TempDir dir;
    const auto store = rq::KnowledgeStore::load(dir / "none.jsonl");
    EXPECT_EQ(store.size(), 0u);
    EXPECT_EQ(store.next_id(), "ex-1");
}

TEST(Store, SaveLoadIdentity) {
    rq::testing::TempDir dir;
    rq::testing::Gen gen(91);
    rq::KnowledgeStore store(dir / "store.jsonl");
    for (int i = 1; i <= 20; ++i) store.add_example(example("ex-" + std::to_string(i), gen));
    rq::EmbeddingVector v({0.6, 0.8});
    store.cache()->insert("builtin-lexical:2", "hello", v);
    store.save();

    const auto back = rq::KnowledgeStore::load(dir / "store.jsonl");
    ASSERT_EQ(back.size(), store.size());
    const auto a = store.examples();
    const auto b = back.examples();
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(rq::to_json(a[i]), rq::to_json(b[i]));
        EXPECT_EQ(a[i].preferred, b[i].preferred);
    }
    EXPECT_EQ(back.cache()->find("builtin-lexical:2", "hello"), v);
    EXPECT_EQ(back.next_id(), "ex-21");
}

TEST(Store, AppendsArePersistedImmediately) {
    rq::testing::TempDir dir;
    rq::testing::Gen gen(92);
    {
        rq::KnowledgeStore store(dir / "store.jsonl");
        store.add_example(example("a", gen));
        store.add_example(example("b", gen));
    }
    EXPECT_EQ(rq::KnowledgeStore::load(dir / "store.jsonl").size(), 2u);
}

TEST(Store, DuplicateIdsRejected) {
    rq::testing::Gen gen(93);
    rq::KnowledgeStore store;
    store.add_example(example("a", gen));
    try {
        store.add_example(example("a", gen));
        FAIL();
    } catch (const rq::Error& e) {
        EXPECT_EQ(e.kind(), rq::ErrorKind::DuplicateId);
    }
}

TEST(Store, ParseErrorsNameTheLine) {
    rq::testing::TempDir dir;
    write(dir / "bad.jsonl",
          R"({"id":"a","text":"t 1","initial":[[0,0],[1,1]],"preferred":[[0,0],[1,1]]})"
          "\n{oops\n");
    try {
        rq::KnowledgeStore::load(dir / "bad.jsonl");
        FAIL();
    } catch (const rq::Error& e) {
        EXPECT_EQ(e.kind(), rq::ErrorKind::Parse);
        EXPECT_NE(std::string(e.what()).find(":2"), std::string::npos) << e.what();
    }
    write(dir / "bad2.jsonl", R"({"id":"a","text":"t 1","initial":[[1,0],[0,1]],"preferred":[[0,0],[1,1]]})");
    EXPECT_THROW(rq::KnowledgeStore::load(dir / "bad2.jsonl"), rq::Error);
}

TEST(Store, ConcurrentAppends) {
    rq::testing::TempDir dir;
    rq::KnowledgeStore store(dir / "store.jsonl");
    std::vector<std::thread> threads;
    for (int t = 0; t < 4; ++t) {
        threads.emplace_back([&, t] {
            rq::testing::Gen gen(100 + t);
            for (int i = 0; i < 25; ++i) store.add_example(example(std::to_string(t) + "-" + std::to_string(i), gen));
        });
    }
    for (auto& t : threads) t.join();
    EXPECT_EQ(store.size(), 100u);
    EXPECT_EQ(rq::KnowledgeStore::load(dir / "store.jsonl").size(), 100u);
}

TEST(Dataset, ParsesAndValidates) {
    const auto d = rq::parse_dataset(
        R"({"id":"r1","text":"at least 5","ground_truth":[[4.5,0],[5,1]]})"
        "\n\n"
        R"({"id":"r2","text":"at most 5","ground_truth":[[5,1],[5.5,0]]})");
    ASSERT_EQ(d.size(), 2u);
    EXPECT_EQ(d[1].ground_truth, Quantification({{5, 1}, {5.5, 0}}));
    EXPECT_THROW(rq::parse_dataset(R"({"id":"r1","text":"x"})"), rq::Error);
    EXPECT_THROW(rq::parse_dataset(R"({"id":"r1","text":"x","ground_truth":[[0,0]]})"), rq::Error);
    EXPECT_THROW(rq::import_dataset("/nonexistent/dataset.jsonl"), rq::Error);
}

TEST(JsonIo, OperationRoundTrip) {
    const std::vector<rq::Operation> ops{rq::AddOp{{1.5, 0.25}, 1}, rq::RemoveOp{2},
                                        rq::ChangeOp{0, rq::Field::Y, 0.3, 0.5},
                                        rq::ChangeOp{1, rq::Field::X, 7.0, std::nullopt}};
    for (const auto& op : ops) EXPECT_EQ(rq::operation_from_json(rq::to_json(op)), op);
    EXPECT_THROW(rq::operation_from_json(nlohmann::json{{"op", "MOVE"}}), rq::Error);
}

TEST(JsonIoProperty, QuantificationRoundTripIsLossless) {
    rq::testing::Gen gen(94);
    for (int trial = 0; trial < 200; ++trial) {
        const auto q = gen.curve();
        EXPECT_EQ(rq::quantification_from_json(nlohmann::json::parse(rq::to_json(q).dump())), q);
    }
}
