#pragma once

#include <cstdint>
#include <stdexcept>

namespace tocsyn {

/**
 * Exact-integer extended binomial coefficients, falling factorials, and a
 * family of combinatorial identities exposed as checkable predicates.
 *
 * The extended convention: C(n, k) = 0 whenever k < 0 or k > n. All exact
 * operations compute through 128-bit intermediates; overflow is a hard
 * error, never silent wraparound.
 */

// C(n, k) with the extended zero convention. Exact; throws
// std::overflow_error if the value does not fit in 64 bits.
inline std::int64_t binom(std::int64_t n, std::int64_t k) {
    if (n < 0) throw std::invalid_argument("binom: n must be non-negative");
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    constexpr unsigned __int128 u128_max = ~static_cast<unsigned __int128>(0);
    constexpr std::int64_t i64_max = INT64_MAX;
    unsigned __int128 acc = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        const auto factor = static_cast<unsigned __int128>(n - k + i);
        if (acc > u128_max / factor)
            throw std::overflow_error("binom: intermediate overflow");
        // after i steps the prefix is C(n-k+i, i), so the division is exact
        acc = acc * factor / static_cast<unsigned __int128>(i);
    }
    if (acc > static_cast<unsigned __int128>(i64_max))
        throw std::overflow_error("binom: value exceeds 64 bits");
    return static_cast<std::int64_t>(acc);
}

// C(n, k) as a double, for weight computations where n may be large
// (solver indices). Exact whenever every prefix value is below 2^53.
inline double binom_real(std::int64_t n, std::int64_t k) {
    if (n < 0) throw std::invalid_argument("binom_real: n must be non-negative");
    if (k < 0 || k > n) return 0.0;
    if (k > n - k) k = n - k;
    double acc = 1.0;
    for (std::int64_t i = 1; i <= k; ++i)
        acc = acc * static_cast<double>(n - k + i) / static_cast<double>(i);
    return acc;
}

/// x (x-1) (x-2) ... (x-m+1), m >= 1 factors.
inline double falling_factorial(double x, int m) {
    if (m < 1) throw std::invalid_argument("falling_factorial: m must be >= 1");
    double acc = 1.0;
    for (int i = 0; i < m; ++i) acc *= x - static_cast<double>(i);
    return acc;
}

/// m! as an exact 64-bit integer, 0 <= m <= 20.
inline std::int64_t factorial(int m) {
    if (m < 0 || m > 20) throw std::invalid_argument("factorial: m out of exact 64-bit range");
    std::int64_t acc = 1;
    for (int i = 2; i <= m; ++i) acc *= i;
    return acc;
}

enum class TheoremId { T2_14, T2_15, T2_16a, T2_16b, T2_17, T2_18, T2_19, T2_20 };

// Parameter tuple for identity_check; each theorem reads the fields it
// names (m always; k, i, nu as applicable).
struct IdentityParams {
    int m = 0;
    int k = 0;
    int i = 0;
    int nu = 0;
};

namespace detail {

inline __int128 neg1pow(std::int64_t e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace detail

// Evaluates both sides of the named identity with exact integers and
// returns their equality. The left side is a literal summation, the right
// side the closed form; the two share no subexpressions. Out-of-range
// parameters are rejected so a failure always means "identity violated",
// never "precondition violated".
inline bool identity_check(TheoremId id, const IdentityParams& p) {
    using detail::neg1pow;
    const std::int64_t m = p.m, k = p.k, i = p.i, nu = p.nu;
    __int128 lhs = 0, rhs = 0;
    switch (id) {
        case TheoremId::T2_14: {
            if (m < 1 || i < 1 || i > m || k < 0)
                throw std::invalid_argument("identity_check: T2_14 needs m >= 1, 1 <= i <= m, k >= 0");
            for (std::int64_t j = 1; j <= k; ++j) lhs += binom(j + m - i - 1, m - i);
            rhs = binom(m + k - i, m - i + 1);
            break;
        }
        case TheoremId::T2_15: {
            if (m < 1 || k < 1)
                throw std::invalid_argument("identity_check: T2_15 needs m >= 1, k >= 1");
            for (std::int64_t j = 0; j <= m - 1; ++j)
                lhs += neg1pow(j) * binom(m - 1, j) * binom(k + m - j - 1, m - j);
            rhs = binom(k, m);
            break;
        }
        case TheoremId::T2_16a:
        case TheoremId::T2_16b: {
            if (m < 2 || k < m - 1)
                throw std::invalid_argument("identity_check: T2_16 needs m >= 2, k >= m-1");
            const std::int64_t shift = (id == TheoremId::T2_16a) ? 1 : 2;
            for (std::int64_t j = 0; j <= m - 1; ++j)
                lhs += neg1pow(j) * binom(k, j) * binom(k + m - j - shift, m - j);
            rhs = neg1pow(m - 1) * binom(k, m);
            break;
        }
        case TheoremId::T2_17: {
            if (m < 1 || k < 1)
                throw std::invalid_argument("identity_check: T2_17 needs m >= 1, k >= 1");
            for (std::int64_t j = 0; j <= m - 1; ++j) lhs += neg1pow(j) * binom(k, j);
            rhs = neg1pow(m - 1) * binom(k - 1, m - 1);
            break;
        }
        case TheoremId::T2_18: {
            if (m < 1 || k < 1)
                throw std::invalid_argument("identity_check: T2_18 needs m >= 1, k >= 1");
            for (std::int64_t j = 0; j <= m - 1; ++j)
                lhs += neg1pow(j) * binom(m, j) * binom(k + m - j - 1, m - j);
            rhs = binom(k - 1, m) + neg1pow(m - 1);
            break;
        }
        case TheoremId::T2_19: {
            if (m < 1) throw std::invalid_argument("identity_check: T2_19 needs m >= 1");
            for (std::int64_t j = 0; j <= m - 1; ++j) lhs += neg1pow(j) * binom(m, j);
            rhs = neg1pow(m - 1);
            break;
        }
        case TheoremId::T2_20: {
            if (m < 1 || nu < 0 || nu > m - 1 || k < 0 || k > m - 1 - nu)
                throw std::invalid_argument(
                    "identity_check: T2_20 needs m >= 1, 0 <= nu <= m-1, 0 <= k <= m-1-nu");
            for (std::int64_t j = 0; j <= m - (nu + 1); ++j)
                lhs += neg1pow(j) * binom(m - (nu + 1), j) * binom(k + m - (j + nu) - 1, m - (j + nu));
            rhs = 0;
            break;
        }
    }
    return lhs == rhs;
}

}  // namespace tocsyn
