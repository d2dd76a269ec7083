#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include <httplib.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include "cli.hpp"
#include "reqquant/json_io.hpp"
#include "reqquant/store.hpp"
#include "support/temp_dir.hpp"

namespace rq = reqquant;
using nlohmann::json;

namespace {

const char* kEcg =
    "In the scenario of real-time electrocardiogram (ECG) monitoring, the software shall receive and process "
    "ECG signal data at a sampling frequency no lower than 1000 Hz.";
const char* kRequests = "The system requests per second (req/s) shall support at least 200.";

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args, const std::string& input = "") {
    std::istringstream in(input);
    std::ostringstream out, err;
    const int code = rq::cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

void write(const std::filesystem::path& p, const std::string& s) {
    std::ofstream(p) << s;
}

std::string dataset_line(const std::string& id, const std::string& text, const json& truth) {
    return json{{"id", id}, {"text", text}, {"ground_truth", truth}}.dump() + "\n";
}

}  // namespace

TEST(Cli, QuantifyEcg) {
    const auto r = run({"quantify", "--no-analogy", "--json", "--text", kEcg});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_EQ(rq::quantification_from_json(j["initial"]), rq::Quantification({{900, 0}, {1000, 1}}));
    EXPECT_EQ(j["pattern"], "P1");
}

TEST(Cli, QuantifyFailures) {
    EXPECT_EQ(run({"quantify", "--file", "/nonexistent/reqs.txt"}).code, 2);
    const auto r = run({"quantify", "--no-analogy", "--text", "The system shall be fast."});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("no-threshold"), std::string::npos);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
}

TEST(Cli, NoAnalogyEqualsEmptyStore) {
    rq::testing::TempDir dir;
    const auto empty = run({"quantify", "--json", "--store", (dir / "empty.jsonl").string(), "--text", kRequests});
    const auto bypass = run({"quantify", "--json", "--no-analogy", "--text", kRequests});
    ASSERT_EQ(empty.code, 0);
    ASSERT_EQ(bypass.code, 0);
    EXPECT_EQ(json::parse(empty.out)["reasoned"], json::parse(bypass.out)["initial"]);
    EXPECT_EQ(json::parse(empty.out)["initial"], json::parse(bypass.out)["initial"]);
}

TEST(Cli, ImportGrowsStore) {
    rq::testing::TempDir dir;
    const auto store = (dir / "store.jsonl").string();
    write(dir / "examples.jsonl",
          R"({"id":"ex-1","text":"The number of concurrent users shall reach 100","initial":[[90,0],[100,1]],"preferred":[[98,0],[100,1]]})"
          "\n" +
              dataset_line("d-1", "Latency shall be at most 40 ms", json{{40, 1}, {50, 0}}));
    const auto r = run({"import", "--store", store, "--file", (dir / "examples.jsonl").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto loaded = rq::KnowledgeStore::load(store);
    EXPECT_EQ(loaded.size(), 2u);
    EXPECT_EQ(loaded.find("d-1")->initial, rq::Quantification({{40, 1}, {44, 0}}));

    const auto q = run({"quantify", "--json", "--store", store, "--text", kRequests});
    EXPECT_EQ(rq::quantification_from_json(json::parse(q.out)["reasoned"]), rq::Quantification({{198, 0}, {200, 1}}));

    write(dir / "bad.jsonl", "{\"id\":\"x\"}\n");
    EXPECT_EQ(run({"import", "--store", store, "--file", (dir / "bad.jsonl").string()}).code, 2);
}

TEST(Cli, ScriptedAppendixESession) {
    const std::string answers =
        "0\ndifficulty\nleft\nx\ndecrease\n"
        R"({"interval":0,"intent":"difficulty","endpoint":"left","field":"x","direction":"increase"})"
        "\n"
        R"({"interval":0,"intent":"precision","action":"add"})"
        "\n"
        R"({"interval":1,"intent":"precision","action":"add"})"
        "\n"
        R"({"interval":1,"intent":"difficulty","endpoint":"left","field":"y","direction":"increase"})"
        "\n"
        R"({"interval":0,"intent":"precision","action":"add"})"
        "\n";
    const auto r = run({"session", "--json", "--no-analogy-placeholder"}, answers);
    EXPECT_EQ(r.code, 2);  // unknown flag

    const auto s = run({"session", "--json", "--text", kRequests, "--start", "[[195,0],[200,1]]"}, answers);
    ASSERT_EQ(s.code, 0) << s.err;
    std::istringstream lines(s.out);
    std::string line, snapshot;
    while (std::getline(lines, line)) {
        if (!line.empty() && line.front() == '{') snapshot = line;
    }
    const auto j = json::parse(snapshot);
    const auto points = rq::quantification_from_json(j["points"]);
    ASSERT_EQ(points.size(), 4u);
    EXPECT_NEAR(points[0].x, 184.275, 1e-9);
    EXPECT_NEAR(points[1].x, 192.1375, 1e-9);
    EXPECT_NEAR(points[1].y, 0.55, 1e-12);
    EXPECT_NEAR(points[2].x, 196.06875, 1e-9);
    EXPECT_EQ(j["round"], 5);
    EXPECT_NE(s.out.find("round 1: [[175.5,0.0],[200.0,1.0]]"), std::string::npos);
}

TEST(Cli, SessionFinalizeStoresExample) {
    rq::testing::TempDir dir;
    const auto store = (dir / "store.jsonl").string();
    const auto r = run({"session", "--store", store, "--finalize", "--text", kRequests},
                       R"({"interval":0,"intent":"difficulty","endpoint":"left","field":"x","direction":"increase"})"
                       "\n");
    ASSERT_EQ(r.code, 0) << r.err;
    const auto loaded = rq::KnowledgeStore::load(store);
    ASSERT_EQ(loaded.size(), 1u);
    EXPECT_EQ(loaded.examples()[0].preferred, rq::Quantification({{198, 0}, {200, 1}}));
}

TEST(Cli, EvaluateProduced) {
    rq::testing::TempDir dir;
    write(dir / "data.jsonl", dataset_line("r", "ramp 1", json{{0, 0}, {1, 1}}));
    write(dir / "same.jsonl", R"({"id":"r","points":[[0,0],[1,1]]})" "\n");
    write(dir / "flat.json", R"({"r": [[0,0],[1,0]]})");

    auto r = run({"evaluate", "--dataset", (dir / "data.jsonl").string(), "--produced", (dir / "same.jsonl").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("0.000 (0.000)"), std::string::npos);

    r = run({"evaluate", "--json", "--repeats", "5", "--dataset", (dir / "data.jsonl").string(), "--produced",
             (dir / "flat.json").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_DOUBLE_EQ(j["aggregate"]["p2p"]["mean"].get<double>(), 1.0);
    EXPECT_DOUBLE_EQ(j["aggregate"]["p2p"]["deviation"].get<double>(), 0.0);
    EXPECT_EQ(j["repeats"], 5);

    write(dir / "bad.jsonl", "{oops\n");
    EXPECT_EQ(run({"evaluate", "--dataset", (dir / "bad.jsonl").string(), "--produced",
                   (dir / "same.jsonl").string()}).code,
              2);
}

TEST(Cli, Sweep) {
    rq::testing::TempDir dir;
    write(dir / "data.jsonl", dataset_line("r1", kRequests, json{{190, 0}, {200, 1}}) +
                                  dataset_line("r2", "Response time is less than 5s", json{{5, 1}, {6, 0}}));
    write(dir / "empty.jsonl", "");
    const auto data = (dir / "data.jsonl").string();

    auto r = run({"sweep", "--json", "--param", "N", "--values", "1..3", "--dataset", data, "--script",
                  (dir / "empty.jsonl").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = json::parse(r.out)["rows"];
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0]["aggregate"], rows[2]["aggregate"]);

    r = run({"sweep", "--param", "delta", "--values", "0.05,0.10", "--dataset", data});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("0.05"), std::string::npos);

    EXPECT_EQ(run({"sweep", "--param", "gamma", "--values", "1", "--dataset", data}).code, 2);
    EXPECT_EQ(run({"sweep", "--param", "N", "--values", "1", "--dataset", data, "--script", "/nonexistent"}).code, 2);
}

TEST(Cli, ServeAnswersHealth) {
    int pipe_fds[2];
    ASSERT_EQ(pipe(pipe_fds), 0);
    const pid_t pid = fork();
    ASSERT_GE(pid, 0);
    if (pid == 0) {
        dup2(pipe_fds[1], STDOUT_FILENO);
        close(pipe_fds[0]);
        execl(REQQUANT_CLI_PATH, REQQUANT_CLI_PATH, "serve", "--port", "0", static_cast<char*>(nullptr));
        _exit(127);
    }
    close(pipe_fds[1]);
    std::string banner;
    char c;
    while (read(pipe_fds[0], &c, 1) == 1 && c != '\n') banner += c;
    const auto colon = banner.rfind(':');
    ASSERT_NE(colon, std::string::npos) << banner;
    const int port = std::stoi(banner.substr(colon + 1));

    httplib::Client client("127.0.0.1", port);
    auto res = client.Get("/v1/health");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 200);
    EXPECT_EQ(json::parse(res->body)["status"], "ok");

    kill(pid, SIGTERM);
    int status = 0;
    waitpid(pid, &status, 0);
    close(pipe_fds[0]);
    EXPECT_TRUE(WIFEXITED(status));
    EXPECT_EQ(WEXITSTATUS(status), 0);
}
