#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "reqquant/quantification.hpp"

namespace reqquant {

// Result of a maximum-weight bipartite matching between two point lists with
// edge weight w_ij = -|u_i - v_j| (Euclidean). `total_weight` is the sum of
// the matched weights, so it is never positive.
struct Matching {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // sorted by source index
    std::vector<std::size_t> unmatched_source;
    std::vector<std::size_t> unmatched_target;
    double total_weight = 0.0;

    double total_distance() const noexcept { return -total_weight; }
};

double euclidean(const Point& a, const Point& b) noexcept;

// Minimum-cost perfect assignment on a rectangular cost matrix (rows <= cols
// is not required). Returns, for each row, the assigned column or -1 when the
// row is left out because there are more rows than columns. Solved with the
// Hungarian method using a square padding of zero-cost dummy entries.
std::vector<long> solve_assignment(const std::vector<std::vector<double>>& cost);

// Maximum-weight matching of size min(|source|, |target|).
// Throws Error(InvalidArgument) on an empty list.
Matching km_match(std::span<const Point> source, std::span<const Point> target);

}  // namespace reqquant
