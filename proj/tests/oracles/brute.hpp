#pragma once

// Brute-force reference computations over plain arrays.

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace oracle {

using P3 = std::array<double, 3>;

inline double dist(const P3& x, const P3& y)
{
    return std::sqrt((x[0] - y[0]) * (x[0] - y[0]) + (x[1] - y[1]) * (x[1] - y[1]) + (x[2] - y[2]) * (x[2] - y[2]));
}

/// Strict interior extrema, counted per channel.
inline int channel_extrema(const std::vector<P3>& pts)
{
    int count = 0;
    for (int ch = 0; ch < 3; ++ch)
        for (std::size_t x = 1; x + 1 < pts.size(); ++x) {
            const double l = pts[x - 1][ch], m = pts[x][ch], r = pts[x + 1][ch];
            if ((m > l && m > r) || (m < l && m < r)) ++count;
        }
    return count;
}

/// sum over ordered pairs i != j of sum_x |c_i(x) - c_j(x)|, divided by n(n-1).
inline double tightness(const std::vector<std::vector<P3>>& curves)
{
    const std::size_t n = curves.size();
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            for (std::size_t x = 0; x < curves[i].size(); ++x) total += dist(curves[i][x], curves[j][x]);
        }
    return total / static_cast<double>(n * (n - 1));
}

/// Calls visit(labels) for every partition of n items into exactly k
/// non-empty blocks, each listed once (labels by first appearance).
inline void for_each_partition(int n, int k, const std::function<void(const std::vector<int>&)>& visit)
{
    std::vector<int> labels(static_cast<std::size_t>(n), 0);
    std::function<void(int, int)> rec = [&](int i, int used) {
        if (n - i < k - used) return;
        if (i == n) {
            if (used == k) visit(labels);
            return;
        }
        for (int c = 0; c <= used && c < k; ++c) {
            labels[static_cast<std::size_t>(i)] = c;
            rec(i + 1, c == used ? used + 1 : used);
        }
    };
    rec(0, 0);
}

/// Within-cluster sum of squared deviations from cluster means.
inline double sse(const std::vector<std::vector<double>>& rows, const std::vector<int>& labels, int k)
{
    const std::size_t d = rows.empty() ? 0 : rows[0].size();
    double total = 0.0;
    for (int c = 0; c < k; ++c) {
        std::vector<double> mean(d, 0.0);
        int m = 0;
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (labels[i] == c) {
                for (std::size_t t = 0; t < d; ++t) mean[t] += rows[i][t];
                ++m;
            }
        for (auto& v : mean) v /= m;
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (labels[i] == c)
                for (std::size_t t = 0; t < d; ++t) total += (rows[i][t] - mean[t]) * (rows[i][t] - mean[t]);
    }
    return total;
}

} // namespace oracle
