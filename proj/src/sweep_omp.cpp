#include <cstdint>
#include <exception>
#include <mutex>

#include <omp.h>

#include "nilc/kernels.hpp"

namespace nilc {

std::vector<char> evaluate_points(std::span<const SKPoint> points, const PointPredicate& pred)
{
    std::vector<char> out(points.size(), 0);
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto n = static_cast<std::int64_t>(points.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < n; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = pred(points[static_cast<std::size_t>(i)]) ? 1 : 0;
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);
    return out;
}

std::vector<char> evaluate_points_serial(std::span<const SKPoint> points, const PointPredicate& pred)
{
    std::vector<char> out;
    out.reserve(points.size());
    for (const auto& pt : points)
        out.push_back(pred(pt) ? 1 : 0);
    return out;
}

std::size_t count_disagreements(std::size_t n, const std::function<bool(std::size_t)>& pred,
                                const std::function<bool(std::size_t)>& oracle)
{
    std::size_t bad = 0;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 4) reduction(+ : bad)
    for (std::int64_t i = 0; i < count; ++i) {
        try {
            const auto idx = static_cast<std::size_t>(i);
            if (pred(idx) != oracle(idx))
                ++bad;
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);
    return bad;
}

int worker_threads() { return omp_get_max_threads(); }

}  // namespace nilc
