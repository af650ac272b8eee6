#pragma once

/**
 * @file bounds.hpp
 * @brief Bounds on the growth rate λ and on the error of E‖A_m‖/m.
 *
 * Every bound is evaluated in ordinary arithmetic once the expectations
 * it needs are known; the idempotent power x^{1/m} becomes x/m.
 *
 *   lower_basic(m)      ρ(E[A_m]) / m
 *   upper_basic(m)      E‖A_m‖ / m
 *   lower_rowmax(m)     -‖E[(A_m ⊗ 𝟘)⁻]‖ / m
 *   lower_nested(l, m)  E‖(E[A_l⁻] ⊗ 𝟘)⁻ ⊗ A_m‖ / (l + m)
 *   lower_corollary(m)  (-‖E[A_1⁻]‖ + E‖A_{m-1}‖) / m,  E‖A_0‖ = 0
 *   error_bound(m)      C / m,  C = E‖A_1‖ + ‖E[A_1⁻]‖
 */

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "maxplus/expectation.hpp"

namespace maxplus {

enum class BoundKind { lower_basic, upper_basic, lower_rowmax, lower_nested, lower_corollary, error_bound };

[[nodiscard]] std::string to_string(BoundKind kind);
[[nodiscard]] BoundKind bound_kind_from_string(const std::string& name);
[[nodiscard]] bool is_lower(BoundKind kind) noexcept;
[[nodiscard]] bool is_upper(BoundKind kind) noexcept;

/// Raised when a bound's hypotheses (finite expectations) do not hold.
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct BoundReport {
    BoundKind kind = BoundKind::lower_basic;
    std::optional<unsigned> l;  // lower_nested only
    unsigned m = 1;
    double value = 0.0;
    double std_error = 0.0;
    EstimateMethod method = EstimateMethod::fixture_constant;
    std::vector<std::string> inputs;  // functional ids consumed
    /// lower_basic with ρ(E[A_m]) = ε: λ is not bounded from below.
    bool unbounded = false;
    std::string note;

    friend bool operator==(const BoundReport&, const BoundReport&) = default;
};

struct BasicBounds {
    BoundReport lower;
    BoundReport upper;
};

[[nodiscard]] BasicBounds bound_basic(const ExpectationSource& source, unsigned m);
[[nodiscard]] BoundReport bound_rowmax(const ExpectationSource& source, unsigned m);

/// Inner expectation E[A_l⁻] is taken in phase 1 and frozen; the outer
/// expectation runs in phase 2 on independent samples.
[[nodiscard]] BoundReport bound_nested(const ExpectationSource& source, unsigned l, unsigned m);

[[nodiscard]] BoundReport bound_corollary(const ExpectationSource& source, unsigned m);

struct ScalarEstimate {
    double value = 0.0;
    double std_error = 0.0;
    EstimateMethod method = EstimateMethod::fixture_constant;
};

/// C = E‖A_1‖ + ‖E[A_1⁻]‖.
[[nodiscard]] ScalarEstimate error_constant(const ExpectationSource& source);

/// e_m <= C / m, where e_m = E‖A_m‖/m - λ.
[[nodiscard]] BoundReport error_bound(const ExpectationSource& source, unsigned m);

struct BestBounds {
    std::optional<BoundReport> lower;  // empty when no lower-kind report was given
    std::optional<BoundReport> upper;
};

/// Largest lower bound and smallest upper bound; each carries the
/// standard error of the report it came from. Throws on an empty list.
[[nodiscard]] BestBounds best_bounds(const std::vector<BoundReport>& reports);

}  // namespace maxplus
