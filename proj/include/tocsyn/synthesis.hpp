#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tocsyn/combinatorics.hpp"

namespace tocsyn {

/**
 * Time-optimal control synthesis functions for the discrete integrator
 * chain: regime classification, the step-count solver, the second-order
 * closed form fsun, the general m-order fxiao, and the unbounded linear
 * variant.
 *
 * All functions are pure and safe to call concurrently.
 */

// State of the m-chain at one instant, x_1..x_m.
using State = std::vector<double>;

// Order, control step and control bound shared by every operation.
struct SystemParams {
    int m;     // chain order, >= 2
    double h;  // step length in seconds, > 0
    double r;  // maximum control magnitude, > 0

    SystemParams(int order, double step, double bound) : m(order), h(step), r(bound) {
        if (m < 2) throw std::invalid_argument("SystemParams: order m must be >= 2");
        if (!(h > 0.0)) throw std::invalid_argument("SystemParams: step h must be positive");
        if (!(r > 0.0)) throw std::invalid_argument("SystemParams: bound r must be positive");
    }
};

/// Three-valued sign: +1, 0, -1.
inline int sign(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

/// Unit saturation: x/delta on |x| <= delta, sign(x) outside.
inline double sat(double x, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("sat: delta must be positive");
    if (std::abs(x) > delta) return static_cast<double>(sign(x));
    return x / delta;
}

// h^p by repeated multiplication; keeps small powers reproducible across
// platforms and identical between the dedicated m=2 path and the general
// path.
inline double pow_step(double h, int p) {
    double acc = 1.0;
    for (int i = 0; i < p; ++i) acc *= h;
    return acc;
}

// sum_i C(n, i) h^i x[i+1] over the whole state. The evaluation order
// (ascending i, weight * power * component) is part of the contract: the
// m=2 closed forms mirror it term by term.
inline double binomial_weighted_sum(std::span<const double> x, std::int64_t n, double h) {
    double acc = 0.0;
    double hp = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc += binom_real(n, static_cast<std::int64_t>(i)) * hp * x[i];
        hp *= h;
    }
    return acc;
}

namespace detail {

inline void require_state_size(std::span<const double> x, const SystemParams& p, const char* who) {
    if (x.size() != static_cast<std::size_t>(p.m))
        throw std::invalid_argument(std::string(who) + ": state length must equal m");
}

}  // namespace detail

/// y = sum_{i=0}^{m-1} C(m-1, i) h^i x_{i+1}, the regime coordinate.
inline double y_value(const SystemParams& p, std::span<const double> x) {
    detail::require_state_size(x, p, "y_value");
    return binomial_weighted_sum(x, p.m - 1, p.h);
}

/// z(k) = sum_{i=0}^{m-1} C(k, i) h^i x_{i+1}, defined for k >= m-1.
inline double z_value(const SystemParams& p, std::int64_t k, std::span<const double> x) {
    detail::require_state_size(x, p, "z_value");
    if (k < p.m - 1) throw std::invalid_argument("z_value: k must be >= m-1");
    return binomial_weighted_sum(x, k, p.h);
}

// Smallest integer k >= m whose falling factorial brackets
// m! |y| / (h^m r):  ff(k-1, m) < m!|y|/(h^m r) <= ff(k, m).
// Requires the nonlinear regime |y| > h^m r. The upper bracket carries a
// 4-ulp relative slack so a |y| exactly on the k-th boundary maps to k,
// not k+1.
inline std::int64_t solve_k(const SystemParams& p, double y) {
    const double bound = pow_step(p.h, p.m) * p.r;
    const double ay = std::abs(y);
    if (!(ay > bound)) throw std::domain_error("solve_k: |y| <= h^m r belongs to the linear branch");
    const double target = static_cast<double>(factorial(p.m)) * ay / bound;
    const double slack = 1.0 + 4.0 * std::numeric_limits<double>::epsilon();
    // ff(k, m) ~ (k - (m-1)/2)^m, so this lands within a step or two
    std::int64_t k = static_cast<std::int64_t>(std::ceil(std::pow(target, 1.0 / p.m))) + p.m / 2;
    if (k < p.m) k = p.m;
    while (target > falling_factorial(static_cast<double>(k), p.m) * slack) ++k;
    while (k > p.m && target <= falling_factorial(static_cast<double>(k - 1), p.m) * slack) --k;
    return k;
}

enum class Regime { Linear, Nonlinear };

// Which branch of the synthesis function applies at a state, with the
// quantities the nonlinear branch consumes. Invariants: Linear iff
// |y| <= h^m r; in the nonlinear regime k >= m brackets the real root and
// s is never 0.
struct RegionDecision {
    Regime regime;
    std::int64_t k;  // meaningful only when Nonlinear
    double y;
    int s;
};

inline RegionDecision classify(const SystemParams& p, std::span<const double> x) {
    detail::require_state_size(x, p, "classify");
    const double y = binomial_weighted_sum(x, p.m - 1, p.h);
    if (std::abs(y) <= pow_step(p.h, p.m) * p.r) return {Regime::Linear, 0, y, sign(y)};
    return {Regime::Nonlinear, solve_k(p, y), y, sign(y)};
}

/// m-order synthesis function; |result| <= r always.
inline double fxiao(std::span<const double> x, const SystemParams& p) {
    detail::require_state_size(x, p, "fxiao");
    const double hm = pow_step(p.h, p.m);
    const double y = binomial_weighted_sum(x, p.m - 1, p.h);
    double a;
    if (std::abs(y) <= hm * p.r) {
        a = binomial_weighted_sum(x, p.m, p.h) / hm;
    } else {
        const double s = static_cast<double>(sign(y));
        assert(s != 0.0);  // |y| > h^m r > 0 in this branch
        const std::int64_t k = solve_k(p, y);
        const double parity = (p.m % 2 != 0) ? 1.0 : -1.0;  // (-1)^(m-1)
        const double lead =
            parity * (1.0 - static_cast<double>(k) / static_cast<double>(p.m)) * p.r * s;
        const double num = binomial_weighted_sum(x, k, p.h);
        const double den = binom_real(k - 1, p.m - 1) * hm;
        a = lead + num / den;
    }
    return -p.r * sat(a, p.r);
}

// Second-order synthesis function, written out as the m = 2 closed forms.
// Term order matches the general path exactly, so fxiao at m = 2 agrees
// bit for bit.
inline double fsun(double x1, double x2, double r, double h) {
    const SystemParams p(2, h, r);
    const double h2 = pow_step(h, 2);
    const double y = x1 + 1.0 * h * x2;
    double a;
    if (std::abs(y) <= h2 * r) {
        a = (x1 + 2.0 * h * x2) / h2;
    } else {
        const double s = static_cast<double>(sign(y));
        const std::int64_t k = solve_k(p, y);
        const double kd = static_cast<double>(k);
        const double lead = -1.0 * (1.0 - kd / 2.0) * r * s;
        const double num = x1 + kd * h * x2;
        const double den = (kd - 1.0) * h2;
        a = lead + num / den;
    }
    return -r * sat(a, r);
}

/// Unbounded linear variant: u = -sum C(m, i) h^i x_{i+1} / h^m.
inline double fxiao_linear(std::span<const double> x, const SystemParams& p) {
    detail::require_state_size(x, p, "fxiao_linear");
    return -(binomial_weighted_sum(x, p.m, p.h) / pow_step(p.h, p.m));
}

}  // namespace tocsyn
