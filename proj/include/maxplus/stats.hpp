#pragma once

#include <cmath>
#include <cstddef>

namespace maxplus {

/// Welford accumulator. merge() uses the pairwise update, so a fixed
/// merge order gives a fixed floating-point result.
struct RunningStats {
    std::size_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) noexcept
    {
        ++count;
        const double delta = x - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (x - mean);
    }

    void merge(const RunningStats& other) noexcept
    {
        if (other.count == 0) {
            return;
        }
        if (count == 0) {
            *this = other;
            return;
        }
        const double n_a = static_cast<double>(count);
        const double n_b = static_cast<double>(other.count);
        const double total = n_a + n_b;
        const double delta = other.mean - mean;
        mean += delta * n_b / total;
        m2 += other.m2 + delta * delta * n_a * n_b / total;
        count += other.count;
    }

    /// Unbiased sample variance; 0 for fewer than two samples.
    [[nodiscard]] double variance() const noexcept
    {
        return count < 2 ? 0.0 : m2 / static_cast<double>(count - 1);
    }

    [[nodiscard]] double stderr_of_mean() const noexcept
    {
        return count < 2 ? 0.0 : std::sqrt(variance() / static_cast<double>(count));
    }
};

}  // namespace maxplus
