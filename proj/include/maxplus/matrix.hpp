#pragma once

/**
 * @file matrix.hpp
 * @brief Dense max-plus matrices and the operations built on them.
 *
 * Vectors are matrices with a single column (or a single row). All
 * operations are pure; a Matrix is a value type.
 */

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "maxplus/scalar.hpp"

namespace maxplus {

/// Raised when operand shapes are incompatible.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class Matrix {
public:
    /// rows x cols matrix filled with `fill` (ε by default).
    Matrix(std::size_t rows, std::size_t cols, double fill = eps);

    /// Row-major literal, e.g. Matrix{{1, 2}, {eps, 0}}.
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    /// Takes ownership of a row-major entry buffer.
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

    /// Null matrix 𝓔 (all ε).
    [[nodiscard]] static Matrix null(std::size_t rows, std::size_t cols);
    /// Identity E: 0 on the diagonal, ε elsewhere.
    [[nodiscard]] static Matrix identity(std::size_t n);
    /// n x 1 all-zeros vector 𝟘.
    [[nodiscard]] static Matrix zeros(std::size_t n);
    [[nodiscard]] static Matrix constant(std::size_t rows, std::size_t cols, double value);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }

    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept
    {
        return data_[i * cols_ + j];
    }
    [[nodiscard]] double& operator()(std::size_t i, std::size_t j) noexcept
    {
        return data_[i * cols_ + j];
    }

    /// Bounds-checked access.
    [[nodiscard]] double at(std::size_t i, std::size_t j) const;

    [[nodiscard]] std::span<const double> entries() const noexcept { return data_; }
    [[nodiscard]] std::span<double> entries() noexcept { return data_; }

    /// True when no entry is ε.
    [[nodiscard]] bool all_finite() const noexcept;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
};

/// Entrywise maximum.
[[nodiscard]] Matrix mat_oplus(const Matrix& a, const Matrix& b);

/// (A ⊗ B)_ij = max_k (a_ik + b_kj).
[[nodiscard]] Matrix mat_otimes(const Matrix& a, const Matrix& b);

/// out <- A ⊗ B without allocating when out already has the result shape.
/// out must not alias a or b.
void mat_otimes_into(const Matrix& a, const Matrix& b, Matrix& out);

/// k-fold product, A^0 = E.
[[nodiscard]] Matrix mat_pow(const Matrix& a, unsigned k);

/// Scalar multiple c ⊗ A.
[[nodiscard]] Matrix scale(double c, const Matrix& a);

[[nodiscard]] Matrix transpose(const Matrix& a);

/// A⁻ with entries a⁻_ij = (a_ji)^{-1}; shape is transposed.
[[nodiscard]] Matrix conjugate(const Matrix& a);

/// ‖A‖: the maximum entry.
[[nodiscard]] double norm(const Matrix& a) noexcept;

/// Maximum diagonal entry. Requires a square matrix.
[[nodiscard]] double trace(const Matrix& a);

/// Column of row maxima, i.e. A ⊗ 𝟘.
[[nodiscard]] Matrix rowmax(const Matrix& a);

/// ρ(A) = ⊕_{m=1..n} tr(A^m)^{1/m}, evaluated directly from traces of
/// successive powers. ε when every trace is ε (acyclic graph).
[[nodiscard]] double spectral_radius(const Matrix& a);

/// Entrywise a <= b. Shapes must agree.
[[nodiscard]] bool leq(const Matrix& a, const Matrix& b);

/// Literal form: rows split by ';', entries by ',', ε written "eps".
[[nodiscard]] std::string to_literal(const Matrix& a);

/// Parses to_literal output. Throws std::invalid_argument on ragged or
/// malformed input.
[[nodiscard]] Matrix parse_matrix(const std::string& text);

}  // namespace maxplus
