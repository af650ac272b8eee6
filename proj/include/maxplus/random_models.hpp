#pragma once

/**
 * @file random_models.hpp
 * @brief I.i.d. random transition matrices and reproducible substreams.
 *
 * Every random draw in the library comes from a Stream keyed by a
 * SeedSpec (seed plus a path of indices). A stream is a counter-based
 * Philox4x32-10 generator, so the value of draw j on path p is a pure
 * function of (seed, p, j) and does not depend on which thread asks.
 */

#include <array>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "maxplus/matrix.hpp"

namespace maxplus {

/// Raised when a model description violates its invariants.
class ModelError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Exponential {
    double mean;
};

struct Uniform {
    double lo;
    double hi;
};

struct Atom {
    double value;
    double prob;
};

struct Discrete {
    std::vector<Atom> atoms;
};

struct Constant {
    double value;
};

using DistributionSpec = std::variant<Exponential, Uniform, Discrete, Constant>;

/// Throws ModelError if the parameters are invalid. ε-valued atoms are
/// rejected: models must be finite with probability one.
void validate(const DistributionSpec& dist);

[[nodiscard]] double dist_mean(const DistributionSpec& dist);
[[nodiscard]] double dist_variance(const DistributionSpec& dist);

/// Discrete or Constant: the joint support can be enumerated.
[[nodiscard]] bool is_enumerable(const DistributionSpec& dist);

/// Number of support points; only meaningful when is_enumerable().
[[nodiscard]] std::size_t support_size(const DistributionSpec& dist);

/// Support points as atoms (a Constant is one atom of mass 1).
[[nodiscard]] std::vector<Atom> support(const DistributionSpec& dist);

[[nodiscard]] std::string dist_name(const DistributionSpec& dist);

/// Per-entry distribution grid for an n x n random matrix A(k).
class MatrixModel {
public:
    /// Validates every entry; throws ModelError.
    MatrixModel(std::size_t n, std::vector<DistributionSpec> entries);

    /// Every entry shares `dist`.
    [[nodiscard]] static MatrixModel uniform_grid(std::size_t n, DistributionSpec dist);

    /// 2x2, i.i.d. exponential entries of mean 1.
    [[nodiscard]] static MatrixModel paper_test();

    [[nodiscard]] std::size_t n() const noexcept { return n_; }
    [[nodiscard]] const DistributionSpec& entry(std::size_t i, std::size_t j) const
    {
        return entries_[i * n_ + j];
    }
    [[nodiscard]] const std::vector<DistributionSpec>& entries() const noexcept { return entries_; }

    /// True when every entry is Discrete or Constant.
    [[nodiscard]] bool is_enumerable() const;

    /// Entrywise expectation E[A(1)].
    [[nodiscard]] Matrix mean_matrix() const;

private:
    std::size_t n_;
    std::vector<DistributionSpec> entries_;
};

struct SeedSpec {
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> path;

    /// Child spec with `index` appended to the path.
    [[nodiscard]] SeedSpec child(std::uint64_t index) const;
    [[nodiscard]] SeedSpec child(std::initializer_list<std::uint64_t> indices) const;
};

/// Philox4x32-10 block function: encrypts a 128-bit counter under a 64-bit key.
[[nodiscard]] std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                                      std::array<std::uint32_t, 2> key) noexcept;

/// Sequential uniform draws from one substream.
class Stream {
public:
    explicit Stream(const SeedSpec& spec);
    /// Same stream as Stream(base.child(index)) without copying the path.
    Stream(const SeedSpec& base, std::uint64_t index);

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    [[nodiscard]] double uniform();

    [[nodiscard]] std::uint64_t next_u64();

private:
    void refill();

    std::array<std::uint32_t, 2> key_;
    std::uint64_t path_hash_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int used_ = 4;
};

[[nodiscard]] double sample(const DistributionSpec& dist, Stream& stream);

/// One draw of A(k), entries row-major from `stream`.
[[nodiscard]] Matrix sample_matrix(const MatrixModel& model, Stream& stream);
void sample_matrix_into(const MatrixModel& model, Stream& stream, Matrix& out);
[[nodiscard]] Matrix sample_matrix(const MatrixModel& model, const SeedSpec& spec);

/// A(1) ⊗ ... ⊗ A(m) from m consecutive draws on one stream.
[[nodiscard]] Matrix sample_chain(const MatrixModel& model, unsigned m, Stream& stream);
[[nodiscard]] Matrix sample_chain(const MatrixModel& model, unsigned m, const SeedSpec& spec);

/// Reusable buffers for repeated chain draws of one length.
class ChainSampler {
public:
    ChainSampler(const MatrixModel& model, unsigned m);

    /// Draws A(1) ⊗ ... ⊗ A(m); the reference is valid until the next call.
    const Matrix& draw(Stream& stream);

private:
    const MatrixModel* model_;
    unsigned m_;
    Matrix product_;
    Matrix factor_;
    Matrix scratch_;
};

}  // namespace maxplus
