// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure. Each criterion collects the individual checks that back it and
// prints the first few mismatches.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "reqquant/classifier.hpp"
#include "reqquant/error.hpp"
#include "reqquant/evaluation.hpp"
#include "reqquant/extractor.hpp"
#include "reqquant/json_io.hpp"
#include "reqquant/matching.hpp"
#include "reqquant/metrics.hpp"
#include "reqquant/reasoner.hpp"
#include "reqquant/session.hpp"
#include "reqquant/store.hpp"
#include "support/generators.hpp"
#include "support/temp_dir.hpp"

namespace rq = reqquant;
using rq::Quantification;

namespace {

class Criterion {
public:
    explicit Criterion(std::string name) : name_(std::move(name)) {}

    void check(bool ok, const std::string& what) {
        ++checks_;
        if (!ok) failures_.push_back(what);
    }

    void near(double got, double want, double tol, const std::string& what) {
        std::ostringstream s;
        s.precision(17);
        s << what << ": got " << got << ", want " << want << " +/- " << tol;
        check(std::abs(got - want) <= tol, s.str());
    }

    void note(std::string text) { notes_.push_back(std::move(text)); }

    bool report() const {
        const bool ok = failures_.empty() && checks_ > 0;
        std::cout << (ok ? "PASS " : "FAIL ") << name_ << " (" << checks_ - failures_.size() << "/" << checks_
                  << " checks)";
        for (const auto& n : notes_) std::cout << " [" << n << "]";
        std::cout << "\n";
        for (std::size_t i = 0; i < failures_.size() && i < 5; ++i) std::cout << "    - " << failures_[i] << "\n";
        return ok;
    }

private:
    std::string name_;
    std::size_t checks_ = 0;
    std::vector<std::string> failures_;
    std::vector<std::string> notes_;
};

// Runs `body` and turns a stray exception into a failed check.
void guarded(Criterion& c, const std::function<void()>& body) {
    try {
        body();
    } catch (const std::exception& e) {
        c.check(false, std::string("unexpected exception: ") + e.what());
    }
}

std::string show(const Quantification& q) {
    return rq::to_json(q).dump();
}

const char* kEcg =
    "In the scenario of real-time electrocardiogram (ECG) monitoring, the software shall receive and process "
    "ECG signal data at a sampling frequency no lower than 1000 Hz.";
const char* kRequests = "The system requests per second (req/s) shall support at least 200.";
const char* kSearch =
    "In the Online Bookstore System, the search results for book titles shall be returned to the user within 5 "
    "seconds to ensure a smooth browsing experience.";

rq::AnchorClassifier builtin_classifier() {
    return rq::AnchorClassifier(rq::default_anchors(), std::make_shared<rq::BuiltinLexicalProvider>());
}

bool initial_goldens() {
    Criterion c("initial-quantification goldens (ECG, req/s, bookstore search)");
    guarded(c, [&] {
        const auto cls = builtin_classifier();
        const std::pair<const char*, Quantification> cases[] = {
            {kEcg, Quantification({{900, 0}, {1000, 1}})},
            {kRequests, Quantification({{180, 0}, {200, 1}})},
            {kSearch, Quantification({{5, 1}, {5.5, 0}})},
        };
        for (const auto& [text, want] : cases) {
            const auto got = rq::initial_quantification(text, cls).quantification;
            c.check(got == want, "got " + show(got) + ", want " + show(want));
        }
    });
    return c.report();
}

bool classification_goldens() {
    Criterion c("classification P1/P2/P3 example sentences and threshold 200");
    guarded(c, [&] {
        const auto cls = builtin_classifier();
        const std::pair<const char*, rq::PatternType> cases[] = {
            {"The recommendation accuracy should not be less than 85%", rq::PatternType::P1},
            {"Response time is less than 5s", rq::PatternType::P2},
            {"Refresh rate shall be equivalent to 5s/time", rq::PatternType::P3},
        };
        for (const auto& [text, want] : cases) {
            const auto got = cls.classify(text).pattern;
            c.check(got == want, std::string(text) + ": got " + std::string(rq::to_string(got)));
        }
        const char* a2 = "The response time must not exceed 200ms.";
        const double t = rq::extract_threshold(a2, cls.classify(a2));
        c.check(t == 200.0, "threshold got " + std::to_string(t));
    });
    return c.report();
}

bool operation_goldens() {
    Criterion c("operation extraction cost 3 with ADD first; analogy replay onto {(25,1),(30,0.5),(40,0)}");
    guarded(c, [&] {
        const auto ops = rq::extract_operations(Quantification({{9, 0}, {10, 1}}),
                                                Quantification({{8.5, 0}, {9.5, 0.5}, {10.5, 1}}));
        c.check(rq::operation_cost(ops) == 3, "cost " + std::to_string(rq::operation_cost(ops)));
        c.check(ops.size() == 3 && std::holds_alternative<rq::AddOp>(ops[0]) &&
                    std::holds_alternative<rq::ChangeOp>(ops[1]) && std::holds_alternative<rq::ChangeOp>(ops[2]),
                "expected ADD, CHANGE, CHANGE");

        const auto case2 = rq::extract_operations(Quantification({{10, 1}, {12, 0.5}, {16, 0}}),
                                                  Quantification({{10, 1}, {14, 0}}));
        const auto replayed = rq::apply_analogy(Quantification({{25, 1}, {30, 0.5}, {40, 0}}), case2);
        c.check(replayed == Quantification({{25, 1}, {36, 0}}), "replay got " + show(replayed));
    });
    return c.report();
}

bool matching_and_runtime() {
    Criterion c("km_match equals brute force on 200 instances; extract+apply over 40 examples < 0.2 s");
    guarded(c, [&] {
        rq::testing::Gen gen(2024);
        for (int trial = 0; trial < 200; ++trial) {
            const auto a = gen.points(gen.index(1, 6));
            const auto b = gen.points(gen.index(1, 6));
            c.near(rq::km_match(a, b).total_distance(), rq::testing::brute_force_min_distance(a, b), 1e-9,
                   "instance " + std::to_string(trial));
        }

        rq::KnowledgeStore store;
        for (int i = 0; i < 40; ++i) {
            store.add_example({"ex-" + std::to_string(i + 1),
                               "The throughput of service " + std::to_string(i) + " shall reach " +
                                   std::to_string(100 + i),
                               gen.curve(gen.index(2, 5)), gen.curve(gen.index(2, 5)), std::nullopt});
        }
        const auto examples = store.examples();
        rq::BuiltinLexicalProvider provider;
        const Quantification target({{180, 0}, {200, 1}});

        const auto t0 = std::chrono::steady_clock::now();
        std::size_t total_ops = 0;
        for (const auto& ex : examples) {
            const auto ops = rq::extract_operations(ex.initial, ex.preferred);
            total_ops += ops.size();
            const auto q = rq::apply_analogy(ex.initial, ops);
            (void)q;
        }
        const auto reasoned = rq::reason(kRequests, target, examples, provider);
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        c.check(seconds < 0.2, "took " + std::to_string(seconds) + " s");
        c.check(total_ops > 0 && reasoned.reasoned.size() >= 2, "no work performed");
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.4f s", seconds);
        c.note(buf);
    });
    return c.report();
}

rq::AnswerPath nudge(std::size_t interval, rq::Endpoint end, rq::Field field, rq::Direction dir) {
    rq::AnswerPath p;
    p.interval = interval;
    p.intent = rq::Intent::Difficulty;
    p.endpoint = end;
    p.field = field;
    p.direction = dir;
    return p;
}

rq::AnswerPath add(std::size_t interval) {
    rq::AnswerPath p;
    p.interval = interval;
    p.intent = rq::Intent::Precision;
    p.precision_action = rq::PrecisionAction::Add;
    return p;
}

bool session_golden() {
    Criterion c("scripted 5-round req/s session trajectory; 6th round refused at N=5");
    guarded(c, [&] {
        using rq::Direction;
        using rq::Endpoint;
        using rq::Field;
        rq::Session s("acceptance", kRequests, rq::PatternType::P1, Quantification({{180, 0}, {200, 1}}),
                      Quantification({{195, 0}, {200, 1}}), 5);

        // Each round: exact value, the paper's rounded display.
        s = s.answer(nudge(0, Endpoint::Left, Field::X, Direction::Decrease)).session;
        c.near(s.current()[0].x, 175.5, 1e-9, "round 1 x");
        c.near(s.current()[0].x, 175.5, 0.5, "round 1 x vs display");
        s = s.answer(nudge(0, Endpoint::Left, Field::X, Direction::Increase)).session;
        c.near(s.current()[0].x, 184.275, 1e-9, "round 2 x");
        c.near(s.current()[0].x, 184, 0.5, "round 2 x vs display");
        s = s.answer(add(0)).session;
        c.check(s.current().size() == 3, "round 3 point count");
        c.near(s.current()[1].x, 192.1375, 1e-9, "round 3 x");
        c.near(s.current()[1].x, 192, 0.5, "round 3 x vs display");
        c.near(s.current()[1].y, 0.5, 1e-9, "round 3 y");
        s = s.answer(add(1)).session;
        c.check(s.current().size() == 4, "round 4 point count");
        c.near(s.current()[2].x, 196.06875, 1e-9, "round 4 x");
        c.near(s.current()[2].x, 196, 0.5, "round 4 x vs display");
        c.near(s.current()[2].y, 0.75, 1e-9, "round 4 y");
        s = s.answer(nudge(1, Endpoint::Left, Field::Y, Direction::Increase)).session;
        c.near(s.current()[1].y, 0.55, 1e-9, "round 5 y");

        bool refused = false;
        try {
            s.answer(add(0));
        } catch (const rq::Error& e) {
            refused = e.kind() == rq::ErrorKind::SessionExhausted;
        }
        c.check(refused, "6th round was not refused");
    });
    return c.report();
}

bool metric_checks() {
    Criterion c("metrics: zero on identity, rmse 1/sqrt(3), iad <= chebyshev, rmse vs exact integral, ratio 0.6");
    guarded(c, [&] {
        rq::testing::Gen gen(4242);
        for (int i = 0; i < 20; ++i) {
            const auto q = gen.curve();
            const auto r = rq::compare(q, q);
            c.check(r.p2p == 0 && r.chebyshev == 0 && r.rmse == 0 && r.iad == 0, "identity pair " + show(q));
        }
        c.near(rq::rmse(Quantification({{0, 0}, {1, 1}}), Quantification({{0, 0}, {1, 0}}), 1000),
               1.0 / std::sqrt(3.0), 1e-3, "rmse ramp vs flat");
        for (int i = 0; i < 500; ++i) {
            const auto a = gen.curve();
            const auto b = gen.curve();
            c.check(rq::iad(a, b) <= rq::chebyshev(a, b) + 1e-12, "iad > chebyshev for " + show(a) + " " + show(b));
            if (i < 200) {
                const auto [na, nb] = rq::normalize_domain(a, b);
                c.near(rq::rmse(a, b, 1000), std::sqrt(rq::testing::exact_mean_squared_difference(na, nb, 0, 1)),
                       1e-3, "rmse vs exact integral " + std::to_string(i));
            }
        }
        const std::vector<double> three{3}, five{5};
        c.near(rq::cognitive_overhead_ratio(three, five), 0.6, 1e-12, "cognitive overhead ratio");
    });
    return c.report();
}

bool round_trips() {
    Criterion c("round trips: store save/load, session history replay, extracted ops reproduce preferred");
    guarded(c, [&] {
        rq::testing::Gen gen(777);
        rq::testing::TempDir dir;
        rq::KnowledgeStore store(dir / "store.jsonl");
        for (int i = 0; i < 25; ++i) {
            store.add_example({"ex-" + std::to_string(i + 1), "Latency shall be at most " + std::to_string(i) + " ms",
                               gen.curve(), gen.curve(), std::nullopt});
        }
        store.save();
        const auto back = rq::KnowledgeStore::load(dir / "store.jsonl");
        const auto a = store.examples();
        const auto b = back.examples();
        c.check(a.size() == b.size(), "store size changed");
        for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
            c.check(a[i].id == b[i].id && a[i].text == b[i].text && a[i].initial == b[i].initial &&
                        a[i].preferred == b[i].preferred,
                    "example " + a[i].id + " differs after reload");
        }

        for (int trial = 0; trial < 100; ++trial) {
            const auto start = gen.curve(gen.index(2, 4), 100, 1);
            rq::Session s("s", "t 1", rq::PatternType::P1, start, start, 8);
            for (int r = 0; r < 8; ++r) {
                const std::size_t gaps = s.current().size() - 1;
                const auto p = gen.index(0, 3) == 0
                                   ? add(gen.index(0, gaps - 1))
                                   : nudge(gen.index(0, gaps - 1), gen.coin() ? rq::Endpoint::Left : rq::Endpoint::Right,
                                           gen.coin() ? rq::Field::X : rq::Field::Y,
                                           gen.coin() ? rq::Direction::Increase : rq::Direction::Decrease);
                try {
                    s = s.answer(p).session;
                } catch (const rq::Error&) {
                }
            }
            std::vector<rq::Operation> ops;
            for (const auto& h : s.history()) ops.push_back(h.operation);
            c.check(rq::apply_operations(s.start(), ops) == s.current(), "history replay trial " + std::to_string(trial));
            c.check(rq::Session::from_json(s.to_json()).to_json() == s.to_json(),
                    "session JSON trial " + std::to_string(trial));
        }

        for (int trial = 0; trial < 300; ++trial) {
            const auto initial = gen.curve(gen.index(2, 6));
            const auto preferred = gen.curve(gen.index(2, 6));
            const auto ops = rq::extract_operations(initial, preferred);
            c.check(rq::apply_operations(initial, ops) == preferred, "ops replay trial " + std::to_string(trial));
        }
    });
    return c.report();
}

bool sweep_structure() {
    Criterion c("headless sweeps over N in 1..9 and delta in 5%..15% emit per-value aggregates");
    guarded(c, [&] {
        const std::string data_dir = REQQUANT_TEST_DATA_DIR;
        const auto dataset = rq::import_dataset(data_dir + "/sweep_dataset.jsonl");
        const auto script = rq::load_answer_script(data_dir + "/sweep_answers.jsonl");
        auto store = std::make_shared<rq::KnowledgeStore>();

        std::vector<double> ns;
        for (int n = 1; n <= 9; ++n) ns.push_back(n);
        std::vector<double> deltas;
        for (int p = 5; p <= 15; ++p) deltas.push_back(p / 100.0);

        for (const auto& [param, values] : {std::pair{rq::SweepParam::MaxRounds, ns}, std::pair{rq::SweepParam::Delta, deltas}}) {
            const auto rows = rq::run_sweep(param, values, dataset, rq::PipelineConfig{}, store, script);
            c.check(rows.size() == values.size(), "row count");
            for (std::size_t i = 0; i < rows.size(); ++i) {
                c.check(rows[i].value == values[i], "row value order");
                c.check(rows[i].report.records.size() == dataset.size(), "records per row");
                const auto j = rq::to_json(rows[i].report.aggregates);
                for (const char* m : {"p2p", "chebyshev", "rmse", "iad"}) {
                    c.check(j.contains(m) && j[m].contains("mean") && j[m].contains("deviation") &&
                                std::isfinite(j[m]["mean"].get<double>()) &&
                                std::isfinite(j[m]["deviation"].get<double>()),
                            std::string("aggregate ") + m);
                }
                if (param == rq::SweepParam::MaxRounds) {
                    for (const auto& r : rows[i].report.records) {
                        c.check(r.rounds <= static_cast<std::size_t>(values[i]), "rounds exceed N");
                    }
                }
            }
        }
    });
    return c.report();
}

}  // namespace

int main() {
    const bool results[] = {
        initial_goldens(), classification_goldens(), operation_goldens(), matching_and_runtime(),
        session_golden(),  metric_checks(),          round_trips(),       sweep_structure(),
    };
    std::size_t passed = 0;
    for (bool r : results) passed += r;
    std::cout << passed << "/" << std::size(results) << " acceptance criteria passed\n";
    return passed == std::size(results) ? 0 : 1;
}
