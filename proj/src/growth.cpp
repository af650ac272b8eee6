#include "maxplus/growth.hpp"

#include <stdexcept>

#include "maxplus/parallel.hpp"
#include "maxplus/stats.hpp"

namespace maxplus {

namespace {

/// x <- Aᵀ ⊗ x, i.e. x_i <- max_j (a_ji + x_j).
void step_transposed(const Matrix& a, std::vector<double>& x, std::vector<double>& scratch)
{
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i) {
        double best = eps;
        for (std::size_t j = 0; j < n; ++j) {
            best = oplus(best, otimes(a(j, i), x[j]));
        }
        scratch[i] = best;
    }
    x.swap(scratch);
}

double max_of(const std::vector<double>& x)
{
    double best = eps;
    for (double v : x) {
        best = oplus(best, v);
    }
    return best;
}

void require_horizon(std::uint64_t horizon)
{
    if (horizon == 0) {
        throw std::invalid_argument("horizon K must be >= 1");
    }
}

template <class PerReplicate>
LambdaEstimate replicate(std::uint64_t horizon, std::size_t replications, unsigned threads, PerReplicate&& run)
{
    require_horizon(horizon);
    if (replications < 2) {
        throw std::invalid_argument("at least 2 replications are needed for a standard error");
    }
    LambdaEstimate est;
    est.replications = replications;
    est.horizon = horizon;
    est.per_replicate.assign(replications, 0.0);
    parallel_for(replications, threads, [&](std::size_t r) { est.per_replicate[r] = run(r); });
    RunningStats stats;
    for (double v : est.per_replicate) {
        stats.add(v);
    }
    est.lambda_hat = stats.mean;
    est.std_error = stats.stderr_of_mean();
    return est;
}

}  // namespace

std::vector<TrajectoryPoint> simulate_state(const MatrixModel& model, const Matrix& x0, std::uint64_t horizon,
                                            const SeedSpec& stream, std::uint64_t record_every)
{
    require_horizon(horizon);
    if (record_every == 0) {
        throw std::invalid_argument("record_every must be >= 1");
    }
    if (x0.rows() != model.n() || x0.cols() != 1) {
        throw DimensionError("initial state must be n x 1");
    }
    if (!x0.all_finite()) {
        throw std::invalid_argument("initial state must have finite entries");
    }
    std::vector<double> x(x0.entries().begin(), x0.entries().end());
    std::vector<double> scratch(x.size());
    std::vector<TrajectoryPoint> out;
    Stream rng(stream);
    for (std::uint64_t k = 1; k <= horizon; ++k) {
        step_transposed(sample_matrix(model, rng), x, scratch);
        if (k % record_every == 0 || k == horizon) {
            out.push_back({k, max_of(x)});
        }
    }
    return out;
}

double state_growth(const MatrixModel& model, std::uint64_t horizon, const SeedSpec& stream)
{
    require_horizon(horizon);
    std::vector<double> x(model.n(), 0.0);
    std::vector<double> scratch(x.size());
    Stream rng(stream);
    for (std::uint64_t k = 1; k <= horizon; ++k) {
        step_transposed(sample_matrix(model, rng), x, scratch);
    }
    return max_of(x) / static_cast<double>(horizon);
}

LambdaEstimate estimate_lambda(const MatrixModel& model, std::uint64_t horizon, std::size_t replications,
                               const SeedSpec& seed, unsigned threads)
{
    return replicate(horizon, replications, threads,
                     [&](std::size_t r) { return state_growth(model, horizon, seed.child(r)); });
}

double chain_norm_growth(const MatrixModel& model, std::uint64_t horizon, const SeedSpec& stream)
{
    require_horizon(horizon);
    Stream rng(stream);
    Matrix product = sample_matrix(model, rng);
    for (std::uint64_t k = 1; k < horizon; ++k) {
        product = mat_otimes(product, sample_matrix(model, rng));
    }
    return norm(product) / static_cast<double>(horizon);
}

LambdaEstimate estimate_lambda_chain(const MatrixModel& model, std::uint64_t horizon, std::size_t replications,
                                     const SeedSpec& seed, unsigned threads)
{
    return replicate(horizon, replications, threads,
                     [&](std::size_t r) { return chain_norm_growth(model, horizon, seed.child(r)); });
}

}  // namespace maxplus
