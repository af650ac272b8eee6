#pragma once

// Test-only reference computations. Nothing here calls into the code paths
// it is used to check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "maxplus/matrix.hpp"

namespace oracle {

inline constexpr double kEps = -std::numeric_limits<double>::infinity();

/// Maximum cycle mean by depth-first enumeration of every simple cycle
/// (each cycle is rooted at its smallest vertex). -inf if acyclic.
inline double max_cycle_mean(const std::vector<std::vector<double>>& w)
{
    const std::size_t n = w.size();
    double best = kEps;
    std::vector<bool> on_path(n, false);
    std::function<void(std::size_t, std::size_t, double, std::size_t)> walk =
        [&](std::size_t root, std::size_t at, double weight, std::size_t length) {
            for (std::size_t next = root; next < n; ++next) {
                const double edge = w[at][next];
                if (edge == kEps) {
                    continue;
                }
                if (next == root) {
                    best = std::max(best, (weight + edge) / static_cast<double>(length + 1));
                } else if (!on_path[next]) {
                    on_path[next] = true;
                    walk(root, next, weight + edge, length + 1);
                    on_path[next] = false;
                }
            }
        };
    for (std::size_t root = 0; root < n; ++root) {
        on_path[root] = true;
        walk(root, root, 0.0, 0);
        on_path[root] = false;
    }
    return best;
}

inline std::vector<std::vector<double>> to_grid(const maxplus::Matrix& a)
{
    std::vector<std::vector<double>> g(a.rows(), std::vector<double>(a.cols()));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            g[i][j] = a(i, j);
        }
    }
    return g;
}

/// Plain triple loop with explicit ε handling; independent of mat_otimes.
inline std::vector<std::vector<double>> product(const std::vector<std::vector<double>>& a,
                                                const std::vector<std::vector<double>>& b)
{
    std::vector<std::vector<double>> c(a.size(), std::vector<double>(b[0].size(), kEps));
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b[0].size(); ++j) {
            for (std::size_t k = 0; k < b.size(); ++k) {
                if (a[i][k] != kEps && b[k][j] != kEps) {
                    c[i][j] = std::max(c[i][j], a[i][k] + b[k][j]);
                }
            }
        }
    }
    return c;
}

/// Random entries: small integers (so ties and exact sums are common) and
/// ε with probability eps_prob.
class MatrixGen {
public:
    explicit MatrixGen(std::uint64_t seed) : rng_(seed) {}

    double scalar(double eps_prob = 0.2)
    {
        if (std::bernoulli_distribution(eps_prob)(rng_)) {
            return kEps;
        }
        if (std::bernoulli_distribution(0.5)(rng_)) {
            return static_cast<double>(std::uniform_int_distribution<int>(-9, 9)(rng_));
        }
        return std::uniform_real_distribution<double>(-10.0, 10.0)(rng_);
    }

    double finite() { return scalar(0.0); }

    maxplus::Matrix matrix(std::size_t rows, std::size_t cols, double eps_prob = 0.2)
    {
        std::vector<double> e(rows * cols);
        for (double& x : e) {
            x = scalar(eps_prob);
        }
        return maxplus::Matrix(rows, cols, std::move(e));
    }

    /// Entrywise >= a: adds a nonnegative amount, and may lift ε to finite.
    maxplus::Matrix dominating(const maxplus::Matrix& a)
    {
        maxplus::Matrix b = a;
        for (double& x : b.entries()) {
            if (x == kEps) {
                if (std::bernoulli_distribution(0.5)(rng_)) {
                    x = finite();
                }
            } else {
                x += std::uniform_real_distribution<double>(0.0, 3.0)(rng_);
            }
        }
        return b;
    }

    std::size_t size(std::size_t lo, std::size_t hi)
    {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace oracle
