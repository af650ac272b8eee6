#pragma once

/**
 * @file scalar.hpp
 * @brief Scalar arithmetic of the max-plus semifield R ∪ {ε}.
 *
 *   x ⊕ y = max(x, y)      neutral element ε = -inf
 *   x ⊗ y = x + y          identity element 0, ε absorbs
 *
 * Scalars are carried as plain doubles; ε is IEEE negative infinity.
 * +inf and NaN are never produced by any operation in this library.
 */

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace maxplus {

inline constexpr double eps = -std::numeric_limits<double>::infinity();

/// Raised when a scalar operation has no value in R ∪ {ε}.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

[[nodiscard]] constexpr bool is_eps(double x) noexcept { return x == eps; }

/// A valid max-plus scalar: finite or ε.
[[nodiscard]] inline bool is_scalar(double x) noexcept
{
    return std::isfinite(x) || is_eps(x);
}

[[nodiscard]] constexpr double oplus(double x, double y) noexcept
{
    return x < y ? y : x;
}

[[nodiscard]] constexpr double otimes(double x, double y) noexcept
{
    // -inf + finite stays -inf; both operands are never +inf.
    return x + y;
}

/// Multiplicative inverse; ε maps to ε.
[[nodiscard]] constexpr double sinv(double x) noexcept
{
    return is_eps(x) ? eps : -x;
}

/// Real power x^a, i.e. the arithmetic product a·x.
/// Throws DomainError for ε with a <= 0.
[[nodiscard]] double spow(double x, double a);

/// "eps" for ε, otherwise the shortest decimal that reads back exactly.
[[nodiscard]] std::string format_scalar(double x);

/// Inverse of format_scalar. Throws std::invalid_argument on bad tokens.
[[nodiscard]] double parse_scalar(const std::string& token);

}  // namespace maxplus
