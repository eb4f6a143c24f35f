// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mevscope::cluster {

inline constexpr int kNoise = -1;

using Point = std::vector<double>;

//! Euclidean DBSCAN. Neighborhoods include the point itself (distance <= epsilon); a point
//! with at least `min_pts` neighbors is core. Connected cores form clusters numbered by their
//! lowest core index; a non-core point joins the cluster of its lowest-index core neighbor,
//! otherwise it is noise.
std::vector<int> dbscan(std::span<const Point> points, double epsilon, std::size_t min_pts);

//! Number of clusters in an assignment.
std::size_t cluster_count(std::span<const int> labels) noexcept;

//! Member minimizing the summed distance to the other members; ties by lowest index.
std::size_t medoid(std::span<const Point> points, std::span<const std::size_t> members);

}  // namespace mevscope::cluster
