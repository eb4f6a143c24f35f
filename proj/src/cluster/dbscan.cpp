// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#include <mevscope/cluster/dbscan.hpp>

#include <algorithm>
#include <cmath>
#include <deque>

#include <mevscope/common/errors.hpp>
#include <mevscope/simd/kernels.hpp>

namespace mevscope::cluster {

std::vector<int> dbscan(std::span<const Point> points, double epsilon, std::size_t min_pts) {
    if (!(epsilon > 0.0)) throw ConfigError("dbscan epsilon must be positive");
    if (min_pts == 0) throw ConfigError("dbscan min_pts must be positive");
    const auto n = points.size();
    for (const auto& p : points) {
        if (p.size() != points.front().size()) throw ConfigError("dbscan points differ in dimension");
    }
    const auto& k = simd::active();
    const double limit = epsilon * epsilon;
    std::vector<std::vector<std::size_t>> neighbors(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (k.squared_distance(points[i].data(), points[j].data(), points[i].size()) <= limit) neighbors[i].push_back(j);
        }
    }
    std::vector<bool> core(n);
    for (std::size_t i = 0; i < n; ++i) core[i] = neighbors[i].size() >= min_pts;

    std::vector<int> labels(n, kNoise);
    int next = 0;
    for (std::size_t seed = 0; seed < n; ++seed) {
        if (!core[seed] || labels[seed] != kNoise) continue;
        const int id = next++;
        std::deque<std::size_t> frontier{seed};
        labels[seed] = id;
        while (!frontier.empty()) {
            const auto p = frontier.front();
            frontier.pop_front();
            for (const auto q : neighbors[p]) {
                if (core[q] && labels[q] == kNoise) {
                    labels[q] = id;
                    frontier.push_back(q);
                }
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (core[i]) continue;
        const auto first_core = std::find_if(neighbors[i].begin(), neighbors[i].end(), [&](std::size_t j) { return core[j]; });
        if (first_core != neighbors[i].end()) labels[i] = labels[*first_core];
    }
    return labels;
}

std::size_t cluster_count(std::span<const int> labels) noexcept {
    int top = kNoise;
    for (const int l : labels) top = std::max(top, l);
    return static_cast<std::size_t>(top + 1);
}

std::size_t medoid(std::span<const Point> points, std::span<const std::size_t> members) {
    if (members.empty()) throw ConfigError("medoid of an empty cluster");
    const auto& k = simd::active();
    std::size_t best = members.front();
    double best_sum = INFINITY;
    for (const auto i : members) {
        double sum = 0.0;
        for (const auto j : members) sum += std::sqrt(k.squared_distance(points[i].data(), points[j].data(), points[i].size()));
        if (sum < best_sum || (sum == best_sum && i < best)) {
            best = i;
            best_sum = sum;
        }
    }
    return best;
}

}  // namespace mevscope::cluster
