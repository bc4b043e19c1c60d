#pragma once

// Data-parallel evaluation of a predicate over a list of points of S(K).
// evaluate_points_serial is the reference the parallel kernel is tested against.

#include <functional>
#include <span>
#include <vector>

#include "nilc/presentation.hpp"

namespace nilc {

using PointPredicate = std::function<bool(const SKPoint&)>;

// result[i] = pred(points[i]); the first exception thrown by any worker is rethrown.
std::vector<char> evaluate_points(std::span<const SKPoint> points, const PointPredicate& pred);
std::vector<char> evaluate_points_serial(std::span<const SKPoint> points, const PointPredicate& pred);

// Number of indices where pred disagrees with oracle; parallel over the index range.
std::size_t count_disagreements(std::size_t n, const std::function<bool(std::size_t)>& pred,
                                const std::function<bool(std::size_t)>& oracle);

int worker_threads();

}  // namespace nilc
