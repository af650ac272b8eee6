#pragma once

// Randomised checks of the max-plus algebra laws. Each returns the number of
// failing cases so that unit tests and the acceptance suite can share them
// at different case counts.

#include <cmath>
#include <cstddef>

#include "maxplus/matrix.hpp"
#include "oracles.hpp"

namespace props {

using maxplus::Matrix;

inline bool same(double a, double b) { return a == b; }

/// ⊕ associative/commutative/idempotent, ⊗ associative with identity 0 and
/// absorbing ε, ⊗ distributes over ⊕. Operands are integers or ε so sums
/// are exact and equality is bitwise.
inline std::size_t semiring_laws(std::size_t cases, std::uint64_t seed)
{
    using namespace maxplus;
    oracle::MatrixGen gen(seed);
    std::size_t failures = 0;
    for (std::size_t c = 0; c < cases; ++c) {
        const double x = std::round(gen.scalar(0.25));
        const double y = std::round(gen.scalar(0.25));
        const double z = std::round(gen.scalar(0.25));
        const bool ok = same(oplus(oplus(x, y), z), oplus(x, oplus(y, z))) && same(oplus(x, y), oplus(y, x)) &&
                        same(oplus(x, x), x) && same(oplus(x, eps), x) &&
                        same(otimes(otimes(x, y), z), otimes(x, otimes(y, z))) && same(otimes(x, y), otimes(y, x)) &&
                        same(otimes(x, 0.0), x) && same(otimes(x, eps), eps) &&
                        same(otimes(x, oplus(y, z)), oplus(otimes(x, y), otimes(x, z))) &&
                        same(sinv(sinv(x)), x) && is_scalar(sinv(x));
        failures += ok ? 0 : 1;
    }
    return failures;
}

/// A <= C and B <= D imply A ⊗ B <= C ⊗ D.
inline std::size_t monotonicity(std::size_t cases, std::uint64_t seed)
{
    using namespace maxplus;
    oracle::MatrixGen gen(seed);
    std::size_t failures = 0;
    for (std::size_t c = 0; c < cases; ++c) {
        const std::size_t r = gen.size(1, 4), k = gen.size(1, 4), q = gen.size(1, 4);
        const Matrix a = gen.matrix(r, k);
        const Matrix b = gen.matrix(k, q);
        const Matrix cc = gen.dominating(a);
        const Matrix d = gen.dominating(b);
        failures += leq(mat_otimes(a, b), mat_otimes(cc, d)) ? 0 : 1;
    }
    return failures;
}

/// A ⊗ B >= (A ⊗ 𝟘) ⊗ (B⁻ ⊗ 𝟘)⁻ for any A and all-finite B.
inline std::size_t rowmax_inequality(std::size_t cases, std::uint64_t seed)
{
    using namespace maxplus;
    oracle::MatrixGen gen(seed);
    std::size_t failures = 0;
    for (std::size_t c = 0; c < cases; ++c) {
        const std::size_t n = gen.size(1, 5);
        const Matrix a = gen.matrix(n, n, 0.3);
        const Matrix b = gen.matrix(n, n, 0.0);
        const Matrix lhs = mat_otimes(a, b);
        const Matrix rhs = mat_otimes(rowmax(a), conjugate(rowmax(conjugate(b))));
        failures += leq(rhs, lhs) ? 0 : 1;
    }
    return failures;
}

/// A <= B ⇒ ‖A‖ <= ‖B‖;  ‖A ⊗ B‖ <= ‖A‖ ⊗ ‖B‖;  ‖c ⊗ A‖ = c ⊗ ‖A‖;
/// ‖A ⊗ B‖ >= ‖A‖ ⊗ ‖B⁻‖⁻¹ for finite B.
inline std::size_t norm_inequalities(std::size_t cases, std::uint64_t seed)
{
    using namespace maxplus;
    oracle::MatrixGen gen(seed);
    std::size_t failures = 0;
    for (std::size_t c = 0; c < cases; ++c) {
        const std::size_t n = gen.size(1, 5);
        const Matrix a = gen.matrix(n, n, 0.3);
        const Matrix a_up = gen.dominating(a);
        const Matrix b = gen.matrix(n, n, 0.3);
        const Matrix b_finite = gen.matrix(n, n, 0.0);
        const double k = std::round(gen.scalar(0.1));
        const bool ok = norm(a) <= norm(a_up) && norm(mat_otimes(a, b)) <= otimes(norm(a), norm(b)) &&
                        same(norm(scale(k, a)), otimes(k, norm(a))) &&
                        norm(mat_otimes(a, b_finite)) >= otimes(norm(a), sinv(norm(conjugate(b_finite))));
        failures += ok ? 0 : 1;
    }
    return failures;
}

/// (A⁻)⁻ = A exactly.
inline std::size_t conjugate_involution(std::size_t cases, std::uint64_t seed)
{
    using namespace maxplus;
    oracle::MatrixGen gen(seed);
    std::size_t failures = 0;
    for (std::size_t c = 0; c < cases; ++c) {
        const Matrix a = gen.matrix(gen.size(1, 5), gen.size(1, 5));
        failures += conjugate(conjugate(a)) == a ? 0 : 1;
    }
    return failures;
}

/// A^{l+m} = A^l ⊗ A^m exactly (integer entries keep sums exact).
inline std::size_t power_law(std::size_t cases, std::uint64_t seed)
{
    using namespace maxplus;
    oracle::MatrixGen gen(seed);
    std::size_t failures = 0;
    for (std::size_t c = 0; c < cases; ++c) {
        const std::size_t n = gen.size(1, 4);
        Matrix a = gen.matrix(n, n);
        for (double& x : a.entries()) {
            x = std::round(x);
        }
        const auto l = static_cast<unsigned>(gen.size(0, 4));
        const auto m = static_cast<unsigned>(gen.size(0, 4));
        failures += mat_pow(a, l + m) == mat_otimes(mat_pow(a, l), mat_pow(a, m)) ? 0 : 1;
    }
    return failures;
}

/// mat_otimes agrees with the plain triple-loop oracle.
inline std::size_t product_oracle(std::size_t cases, std::uint64_t seed)
{
    using namespace maxplus;
    oracle::MatrixGen gen(seed);
    std::size_t failures = 0;
    for (std::size_t c = 0; c < cases; ++c) {
        const std::size_t r = gen.size(1, 4), k = gen.size(1, 4), q = gen.size(1, 4);
        const Matrix a = gen.matrix(r, k);
        const Matrix b = gen.matrix(k, q);
        failures += oracle::to_grid(mat_otimes(a, b)) == oracle::product(oracle::to_grid(a), oracle::to_grid(b)) ? 0 : 1;
    }
    return failures;
}

/// spectral_radius vs brute-force maximum cycle mean, n = 1..5.
inline std::size_t spectral_radius_oracle(std::size_t cases, std::uint64_t seed)
{
    using namespace maxplus;
    oracle::MatrixGen gen(seed);
    std::size_t failures = 0;
    for (std::size_t c = 0; c < cases; ++c) {
        const std::size_t n = 1 + c % 5;
        const Matrix a = gen.matrix(n, n, 0.1 + 0.1 * static_cast<double>(c % 6));
        const double got = spectral_radius(a);
        const double want = oracle::max_cycle_mean(oracle::to_grid(a));
        const bool ok = (is_eps(want) && is_eps(got)) ||
                        (!is_eps(want) && !is_eps(got) && std::abs(got - want) <= 1e-9 * (1.0 + std::abs(want)));
        failures += ok ? 0 : 1;
    }
    return failures;
}

}  // namespace props
