#include "reqquant/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "reqquant/error.hpp"

namespace reqquant {

double euclidean(const Point& a, const Point& b) noexcept {
    return std::hypot(a.x - b.x, a.y - b.y);
}

std::vector<long> solve_assignment(const std::vector<std::vector<double>>& cost) {
    const std::size_t rows = cost.size();
    const std::size_t cols = rows == 0 ? 0 : cost.front().size();
    const std::size_t n = std::max(rows, cols);
    if (n == 0) return {};

    auto at = [&](std::size_t i, std::size_t j) -> double {
        // Dummy rows/columns cost nothing, so they never bias the real pairs.
        return (i < rows && j < cols) ? cost[i][j] : 0.0;
    };

    constexpr double kInf = std::numeric_limits<double>::infinity();
    // 1-based potentials; column 0 is the virtual start of each augmenting path.
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> row_of_col(n + 1, 0), way(n + 1, 0);

    for (std::size_t i = 1; i <= n; ++i) {
        row_of_col[0] = i;
        std::size_t j0 = 0;
        std::vector<double> minv(n + 1, kInf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = row_of_col[j0];
            double delta = kInf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = at(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[row_of_col[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (row_of_col[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            row_of_col[j0] = row_of_col[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<long> assignment(rows, -1);
    for (std::size_t j = 1; j <= n; ++j) {
        const std::size_t i = row_of_col[j];
        if (i >= 1 && i <= rows && j <= cols) assignment[i - 1] = static_cast<long>(j - 1);
    }
    return assignment;
}

Matching km_match(std::span<const Point> source, std::span<const Point> target) {
    if (source.empty() || target.empty()) {
        throw Error(ErrorKind::InvalidArgument, "km_match needs two non-empty point lists");
    }
    std::vector<std::vector<double>> cost(source.size(), std::vector<double>(target.size()));
    for (std::size_t i = 0; i < source.size(); ++i) {
        for (std::size_t j = 0; j < target.size(); ++j) cost[i][j] = euclidean(source[i], target[j]);
    }
    const auto assignment = solve_assignment(cost);

    Matching m;
    std::vector<char> target_used(target.size(), 0);
    for (std::size_t i = 0; i < source.size(); ++i) {
        if (assignment[i] < 0) {
            m.unmatched_source.push_back(i);
            continue;
        }
        const auto j = static_cast<std::size_t>(assignment[i]);
        target_used[j] = 1;
        m.pairs.emplace_back(i, j);
        m.total_weight -= cost[i][j];
    }
    for (std::size_t j = 0; j < target.size(); ++j) {
        if (!target_used[j]) m.unmatched_target.push_back(j);
    }
    return m;
}

}  // namespace reqquant
