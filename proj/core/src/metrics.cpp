#include "reqquant/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "reqquant/error.hpp"

namespace reqquant {

namespace {

std::vector<double> breakpoints(const Quantification& a, const Quantification& b) {
    std::vector<double> xs{0.0, 1.0};
    for (const auto& p : a.points()) xs.push_back(p.x);
    for (const auto& p : b.points()) xs.push_back(p.x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

double nearest_distance(const Point& p, const Quantification& other) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& q : other.points()) best = std::min(best, euclidean(p, q));
    return best;
}

double p2p_normalized(const Quantification& a, const Quantification& b, Matching& matching) {
    matching = km_match(a.points(), b.points());
    double total = matching.total_distance();
    for (std::size_t i : matching.unmatched_source) total += nearest_distance(a[i], b);
    for (std::size_t j : matching.unmatched_target) total += nearest_distance(b[j], a);
    return total;
}

}  // namespace

std::pair<Quantification, Quantification> normalize_domain(const Quantification& a, const Quantification& b) {
    const double lo = std::min(a.front().x, b.front().x);
    const double hi = std::max(a.back().x, b.back().x);
    const double width = hi - lo;
    if (!(width > 0.0)) throw Error(ErrorKind::InvalidArgument, "curves span a zero-width domain");
    auto map = [&](const Quantification& q) {
        std::vector<Point> pts;
        pts.reserve(q.size());
        for (const auto& p : q.points()) pts.push_back({(p.x - lo) / width, p.y});
        return Quantification(std::move(pts));
    };
    return {map(a), map(b)};
}

double p2p(const Quantification& a, const Quantification& b) {
    const auto [na, nb] = normalize_domain(a, b);
    Matching m;
    return p2p_normalized(na, nb, m);
}

double chebyshev(const Quantification& a, const Quantification& b) {
    const auto [na, nb] = normalize_domain(a, b);
    double worst = 0.0;
    for (double x : breakpoints(na, nb)) worst = std::max(worst, std::abs(evaluate(na, x) - evaluate(nb, x)));
    return worst;
}

double rmse(const Quantification& a, const Quantification& b, std::size_t samples) {
    if (samples < 2) throw Error(ErrorKind::InvalidArgument, "rmse needs at least 2 samples");
    const auto [na, nb] = normalize_domain(a, b);
    double sum = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double x = (static_cast<double>(i) + 0.5) / static_cast<double>(samples);
        const double d = evaluate(na, x) - evaluate(nb, x);
        sum += d * d;
    }
    return std::sqrt(sum / static_cast<double>(samples));
}

double integrate(const Quantification& q, double lo, double hi) {
    if (hi < lo) return -integrate(q, hi, lo);
    std::vector<double> xs{lo, hi};
    for (const auto& p : q.points()) {
        if (p.x > lo && p.x < hi) xs.push_back(p.x);
    }
    std::sort(xs.begin(), xs.end());
    double area = 0.0;
    for (std::size_t i = 1; i < xs.size(); ++i) {
        area += (xs[i] - xs[i - 1]) * (evaluate(q, xs[i - 1]) + evaluate(q, xs[i])) / 2.0;
    }
    return area;
}

double iad(const Quantification& a, const Quantification& b) {
    const auto [na, nb] = normalize_domain(a, b);
    return std::abs(integrate(na, 0.0, 1.0) - integrate(nb, 0.0, 1.0));
}

MetricReport compare(const Quantification& produced, const Quantification& ground_truth, std::size_t rmse_samples) {
    MetricReport r;
    const auto [na, nb] = normalize_domain(produced, ground_truth);
    r.p2p = p2p_normalized(na, nb, r.matching);
    r.chebyshev = chebyshev(produced, ground_truth);
    r.rmse = rmse(produced, ground_truth, rmse_samples);
    r.iad = iad(produced, ground_truth);
    return r;
}

double cognitive_overhead_ratio(std::span<const double> counts_a, std::span<const double> counts_b) {
    if (counts_a.empty() || counts_b.empty()) {
        throw Error(ErrorKind::InvalidArgument, "interaction counts must not be empty");
    }
    if (counts_a.size() != counts_b.size()) {
        throw Error(ErrorKind::DimensionMismatch, "interaction count vectors differ in length");
    }
    const double n = static_cast<double>(counts_a.size());
    const double mean_a = std::accumulate(counts_a.begin(), counts_a.end(), 0.0) / n;
    const double mean_b = std::accumulate(counts_b.begin(), counts_b.end(), 0.0) / n;
    if (!(mean_b > 0.0)) throw Error(ErrorKind::InvalidArgument, "comparison mean must be positive");
    return mean_a / mean_b;
}

}  // namespace reqquant
