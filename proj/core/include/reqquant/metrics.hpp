#pragma once

#include <cstddef>
#include <span>
#include <utility>

#include "reqquant/matching.hpp"
#include "reqquant/quantification.hpp"

namespace reqquant {

inline constexpr std::size_t kDefaultRmseSamples = 1000;

struct MetricReport {
    double p2p = 0.0;
    double chebyshev = 0.0;
    double rmse = 0.0;
    double iad = 0.0;
    Matching matching;  // normalized-domain point matching behind p2p
};

// Maps x affinely onto [0, 1] using the union of both curves' x ranges.
// Throws Error(InvalidArgument) when that union has zero width.
std::pair<Quantification, Quantification> normalize_domain(const Quantification& a, const Quantification& b);

// Sum of matched Euclidean distances after normalization. Points left
// unmatched (unequal point counts) add their distance to the nearest point of
// the other curve.
double p2p(const Quantification& a, const Quantification& b);

// Exact max |f1 - f2| on the normalized domain; the difference is piecewise
// linear so the maximum sits on a breakpoint of either curve or an end.
double chebyshev(const Quantification& a, const Quantification& b);

// Root mean square of f1 - f2 over n uniform samples of [0, 1] taken at the
// cell midpoints (i + 0.5) / n. A grid that includes both ends biases the mean
// by O(1/n); the midpoint grid tracks the exact integral to O(1/n^2).
double rmse(const Quantification& a, const Quantification& b, std::size_t samples = kDefaultRmseSamples);

// |integral f1 - integral f2| over the normalized [0, 1] domain.
double iad(const Quantification& a, const Quantification& b);

// Exact integral of a curve over [lo, hi] with flat extrapolation.
double integrate(const Quantification& q, double lo, double hi);

MetricReport compare(const Quantification& produced, const Quantification& ground_truth,
                     std::size_t rmse_samples = kDefaultRmseSamples);

// mean(a) / mean(b).
double cognitive_overhead_ratio(std::span<const double> counts_a, std::span<const double> counts_b);

}  // namespace reqquant
