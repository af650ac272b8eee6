#pragma once

/**
 * @file expectation.hpp
 * @brief Expectations of functionals of the product chain A_m.
 *
 * Three ways to obtain a number, never mixed silently:
 *   - Monte Carlo over independent chain draws (mc_mean),
 *   - weighted enumeration of the joint support of a discrete model
 *     (exact_mean),
 *   - exact rational constants of the 2x2 exponential test model
 *     (FixtureSource).
 */

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>

#include "maxplus/matrix.hpp"
#include "maxplus/random_models.hpp"

namespace maxplus {

/// E[A_m]
struct EntryMeans {
    unsigned m;
};
/// E[A_m⁻]
struct ConjMeans {
    unsigned m;
};
/// E[(A_m ⊗ 𝟘)⁻], a 1 x n row
struct RowMaxConjMeans {
    unsigned m;
};
/// E‖A_m‖
struct NormMean {
    unsigned m;
};
/// E‖v ⊗ A_m‖ for a fixed finite 1 x n row v
struct VecProductNormMean {
    Matrix v;
    unsigned m;
};

using Functional = std::variant<EntryMeans, ConjMeans, RowMaxConjMeans, NormMean, VecProductNormMean>;

[[nodiscard]] unsigned chain_length(const Functional& f);

/// Stable identifier such as "norm_mean:3" used in report records.
[[nodiscard]] std::string functional_id(const Functional& f);

/// True for the scalar-valued functionals (NormMean, VecProductNormMean).
[[nodiscard]] bool is_scalar_functional(const Functional& f);

/// f applied to one realisation of A_m. Scalar results come back as 1 x 1.
[[nodiscard]] Matrix evaluate(const Functional& f, const Matrix& chain);

/// Row-major entries of evaluate(f, chain) written to `out`, which must
/// have exactly as many elements as the result.
void evaluate_into(const Functional& f, const Matrix& chain, std::span<double> out);

/// Throws std::invalid_argument when m = 0 or v is malformed for an n x n model.
void validate(const Functional& f, std::size_t n);

enum class EstimateMethod { monte_carlo, exact_enumeration, fixture_constant };

[[nodiscard]] std::string to_string(EstimateMethod method);
[[nodiscard]] EstimateMethod method_from_string(const std::string& name);

struct MeanEstimate {
    Matrix value;
    Matrix std_error;  // same shape as value, all zero unless Monte Carlo
    std::size_t n_samples = 0;
    EstimateMethod method = EstimateMethod::monte_carlo;
    /// Monte Carlo runs of matrix-valued functionals also average ‖sample‖
    /// over the same sample set; used for the E‖X‖ >= ‖E X‖ check.
    std::optional<double> sample_norm_mean;

    [[nodiscard]] double scalar() const { return value(0, 0); }
    [[nodiscard]] double scalar_error() const { return std_error(0, 0); }
};

class UnsupportedModelError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class BudgetExceededError : public std::runtime_error {
public:
    BudgetExceededError(std::uint64_t outcomes, std::uint64_t cap);
    [[nodiscard]] std::uint64_t outcomes() const noexcept { return outcomes_; }

private:
    std::uint64_t outcomes_;
};

/// Samples per reduction chunk. Chunks are reduced in index order.
inline constexpr std::size_t kReductionChunk = 4096;

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// Empirical mean of f over n_samples chains; sample i is drawn from
/// stream.child(i). The result does not depend on `threads`.
[[nodiscard]] MeanEstimate mc_mean(const MatrixModel& model, const Functional& f, std::size_t n_samples,
                                   const SeedSpec& stream, unsigned threads = 1);

/// Number of joint outcomes an exact evaluation of chains of length m
/// must visit, saturating at UINT64_MAX.
[[nodiscard]] std::uint64_t enumeration_size(const MatrixModel& model, unsigned m);

/// Exact expectation by enumerating every joint outcome of the m·n² entry
/// draws. Throws UnsupportedModelError for continuous models and
/// BudgetExceededError when the outcome count exceeds `cap`.
[[nodiscard]] MeanEstimate exact_mean(const MatrixModel& model, const Functional& f,
                                      std::uint64_t cap = kDefaultEnumerationCap);

/// Where the bounds get their expectations from. `phase` selects an
/// independent sample set for Monte Carlo sources and is ignored otherwise.
class ExpectationSource {
public:
    virtual ~ExpectationSource() = default;
    [[nodiscard]] virtual MeanEstimate mean(const Functional& f, std::uint64_t phase = 0) const = 0;
    [[nodiscard]] virtual std::size_t dimension() const = 0;
};

class MonteCarloSource final : public ExpectationSource {
public:
    MonteCarloSource(MatrixModel model, std::size_t n_samples, SeedSpec seed, unsigned threads = 1);

    /// Sample i of functional f in phase p comes from seed.child({p, m, i}),
    /// so functionals of the same chain length share draws within a phase.
    [[nodiscard]] MeanEstimate mean(const Functional& f, std::uint64_t phase = 0) const override;
    [[nodiscard]] std::size_t dimension() const override { return model_.n(); }

private:
    MatrixModel model_;
    std::size_t n_samples_;
    SeedSpec seed_;
    unsigned threads_;
};

class ExactSource final : public ExpectationSource {
public:
    explicit ExactSource(MatrixModel model, std::uint64_t cap = kDefaultEnumerationCap);

    [[nodiscard]] MeanEstimate mean(const Functional& f, std::uint64_t phase = 0) const override;
    [[nodiscard]] std::size_t dimension() const override { return model_.n(); }

private:
    MatrixModel model_;
    std::uint64_t cap_;
};

/// Exact constants of the 2x2 model with i.i.d. exponential(1) entries,
/// for chain lengths m = 1, 2, 3.
class FixtureSource final : public ExpectationSource {
public:
    /// E[(A_m)_ij]
    [[nodiscard]] static double entry_mean(unsigned m);
    /// E[(A_m ⊗ 𝟘)_i]
    [[nodiscard]] static double row_max_mean(unsigned m);
    /// E‖A_m‖
    [[nodiscard]] static double norm_mean(unsigned m);

    /// Throws UnsupportedModelError outside m = 1..3, and for
    /// VecProductNormMean with a non-constant v.
    [[nodiscard]] MeanEstimate mean(const Functional& f, std::uint64_t phase = 0) const override;
    [[nodiscard]] std::size_t dimension() const override { return 2; }
};

/// Growth rate of the fixture model, known in closed form.
inline constexpr double kPaperTestLambda = 407.0 / 228.0;

}  // namespace maxplus
