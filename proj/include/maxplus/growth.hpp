#pragma once

/**
 * @file growth.hpp
 * @brief Simulation of x(k) = Aᵀ(k) ⊗ x(k-1) and growth-rate estimates.
 */

#include <cstdint>
#include <vector>

#include "maxplus/random_models.hpp"

namespace maxplus {

struct TrajectoryPoint {
    std::uint64_t k;
    double norm;
};

/// Runs the recursion for K steps from x0 (n x 1, finite), drawing A(k)
/// sequentially from one stream. Records (k, ‖x(k)‖) at every multiple of
/// record_every and always at k = K.
[[nodiscard]] std::vector<TrajectoryPoint> simulate_state(const MatrixModel& model, const Matrix& x0,
                                                          std::uint64_t horizon, const SeedSpec& stream,
                                                          std::uint64_t record_every);

/// ‖x(K)‖ / K for x0 = 𝟘, without recording a trajectory.
[[nodiscard]] double state_growth(const MatrixModel& model, std::uint64_t horizon, const SeedSpec& stream);

struct LambdaEstimate {
    double lambda_hat = 0.0;
    double std_error = 0.0;
    std::size_t replications = 0;
    std::uint64_t horizon = 0;
    std::vector<double> per_replicate;  // ‖x(K)‖ / K

    friend bool operator==(const LambdaEstimate&, const LambdaEstimate&) = default;
};

/// R replicates from x0 = 𝟘; replicate r uses seed.child(r).
/// The result does not depend on `threads`.
[[nodiscard]] LambdaEstimate estimate_lambda(const MatrixModel& model, std::uint64_t horizon,
                                             std::size_t replications, const SeedSpec& seed, unsigned threads = 1);

/// ‖A_K‖ / K for one sampled chain A(1) ⊗ ... ⊗ A(K).
[[nodiscard]] double chain_norm_growth(const MatrixModel& model, std::uint64_t horizon, const SeedSpec& stream);

/// Same statistic as estimate_lambda but from chain_norm_growth.
[[nodiscard]] LambdaEstimate estimate_lambda_chain(const MatrixModel& model, std::uint64_t horizon,
                                                   std::size_t replications, const SeedSpec& seed,
                                                   unsigned threads = 1);

}  // namespace maxplus
