#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "reqquant/matching.hpp"
#include "reqquant/quantification.hpp"

namespace reqquant::testing {

// Hand-rolled generators for the property tests. Seeds are fixed so every
// failure reproduces.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    std::size_t index(std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
    }
    bool coin() { return index(0, 1) == 1; }

    Point point() { return {uniform(-50.0, 50.0), uniform(0.0, 1.0)}; }

    std::vector<Point> points(std::size_t n) {
        std::vector<Point> out(n);
        for (auto& p : out) p = point();
        return out;
    }

    // Strictly increasing x with gaps of at least `min_gap`.
    Quantification curve(std::size_t n, double x0 = 0.0, double min_gap = 0.5) {
        std::vector<Point> pts;
        double x = x0 + uniform(-10.0, 10.0);
        for (std::size_t i = 0; i < n; ++i) {
            pts.push_back({x, uniform(0.0, 1.0)});
            x += min_gap + uniform(0.0, 10.0);
        }
        return Quantification(std::move(pts));
    }

    Quantification curve() { return curve(index(2, 6)); }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

// Brute-force minimum total Euclidean distance over all injective maps from
// the smaller side into the larger one.
inline double brute_force_min_distance(const std::vector<Point>& a, const std::vector<Point>& b) {
    const auto& small = a.size() <= b.size() ? a : b;
    const auto& large = a.size() <= b.size() ? b : a;
    std::vector<std::size_t> perm(large.size());
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double total = 0.0;
        for (std::size_t i = 0; i < small.size(); ++i) total += euclidean(small[i], large[perm[i]]);
        best = std::min(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// Exact mean of (a-b)^2 over [lo,hi]; the integrand is quadratic between
// merged breakpoints so Simpson's rule is exact on each piece.
inline double exact_mean_squared_difference(const Quantification& a, const Quantification& b, double lo,
                                            double hi) {
    std::vector<double> xs{lo, hi};
    for (const auto* q : {&a, &b}) {
        for (const auto& p : q->points()) {
            if (p.x > lo && p.x < hi) xs.push_back(p.x);
        }
    }
    std::sort(xs.begin(), xs.end());
    auto sq = [&](double x) {
        const double d = evaluate(a, x) - evaluate(b, x);
        return d * d;
    };
    double total = 0.0;
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double l = xs[i - 1], r = xs[i];
        if (r <= l) continue;
        total += (r - l) / 6.0 * (sq(l) + 4.0 * sq((l + r) / 2.0) + sq(r));
    }
    return total / (hi - lo);
}

}  // namespace reqquant::testing
