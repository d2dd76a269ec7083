#include <random>

#include <benchmark/benchmark.h>

#include "reqquant/matching.hpp"
#include "reqquant/metrics.hpp"
#include "reqquant/reasoner.hpp"
#include "reqquant/store.hpp"

namespace rq = reqquant;

namespace {

rq::Quantification random_curve(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> gap(0.5, 10.0), y(0.0, 1.0);
    std::vector<rq::Point> pts;
    double x = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        pts.push_back({x, y(rng)});
        x += gap(rng);
    }
    return rq::Quantification(std::move(pts));
}

std::vector<rq::RequirementExample> make_examples(std::size_t count) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::size_t> size(2, 5);
    std::vector<rq::RequirementExample> out;
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back({"ex-" + std::to_string(i + 1),
                       "The throughput of service " + std::to_string(i) + " shall reach " + std::to_string(100 + i),
                       random_curve(rng, size(rng)), random_curve(rng, size(rng)), std::nullopt});
    }
    return out;
}

// Extract + apply over every example of a 40-example store.
void BM_ExtractApplyStore(benchmark::State& state) {
    const auto examples = make_examples(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        for (const auto& ex : examples) {
            const auto ops = rq::extract_operations(ex.initial, ex.preferred);
            benchmark::DoNotOptimize(rq::apply_analogy(ex.initial, ops));
        }
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ExtractApplyStore)->Arg(40)->Arg(400);

// Retrieval + extraction + replay for one target against the store.
void BM_ReasonAgainstStore(benchmark::State& state) {
    const auto examples = make_examples(static_cast<std::size_t>(state.range(0)));
    rq::BuiltinLexicalProvider provider;
    const rq::Quantification target({{180, 0}, {200, 1}});
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            rq::reason("The system requests per second (req/s) shall support at least 200.", target, examples, provider));
    }
}
BENCHMARK(BM_ReasonAgainstStore)->Arg(40);

void BM_KmMatch(benchmark::State& state) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<rq::Point> a(n), b(n + 1);
    for (auto& p : a) p = {u(rng), u(rng)};
    for (auto& p : b) p = {u(rng), u(rng)};
    for (auto _ : state) benchmark::DoNotOptimize(rq::km_match(a, b));
}
BENCHMARK(BM_KmMatch)->Arg(4)->Arg(16)->Arg(64);

void BM_Compare(benchmark::State& state) {
    std::mt19937_64 rng(13);
    const auto a = random_curve(rng, 5);
    const auto b = random_curve(rng, 4);
    for (auto _ : state) benchmark::DoNotOptimize(rq::compare(a, b));
}
BENCHMARK(BM_Compare);

}  // namespace

BENCHMARK_MAIN();
