#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "tocsyn/synthesis.hpp"

namespace tocsyn {

/**
 * The discrete integrator-chain plant and its closed-form solution
 * machinery: one-step map, k-step transition matrix and its inverse,
 * control-influence vectors, and the isochronous initial states that a
 * given control sequence steers to the origin.
 */

// One step of the chain: x_i' = x_i + h x_{i+1} (i < m), x_m' = x_m + h u.
// Precondition |u| <= r is not enforced; the unbounded linear synthesis
// variant exceeds it by design.
inline State plant_step(const SystemParams& p, std::span<const double> x, double u) {
    detail::require_state_size(x, p, "plant_step");
    State next(p.m);
    for (int i = 0; i + 1 < p.m; ++i) next[i] = x[i] + p.h * x[i + 1];
    next[p.m - 1] = x[p.m - 1] + p.h * u;
    return next;
}

// Plant as a value: step() returns a new plant, the original is untouched.
struct Plant {
    SystemParams params;
    State state;

    Plant(SystemParams p, State x0) : params(p), state(std::move(x0)) {
        detail::require_state_size(state, params, "Plant");
    }

    Plant step(double u) const { return Plant(params, plant_step(params, state, u)); }
};

// Minimal square matrix, row-major. Only what the transition forms need.
struct Matrix {
    int n = 0;
    std::vector<double> a;

    explicit Matrix(int size) : n(size), a(static_cast<std::size_t>(size) * size, 0.0) {
        if (size < 1) throw std::invalid_argument("Matrix: size must be positive");
    }

    double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

    static Matrix identity(int size) {
        Matrix m(size);
        for (int i = 0; i < size; ++i) m(i, i) = 1.0;
        return m;
    }

    Matrix operator*(const Matrix& o) const {
        if (n != o.n) throw std::invalid_argument("Matrix: size mismatch");
        Matrix out(n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                const double v = (*this)(i, k);
                if (v == 0.0) continue;
                for (int j = 0; j < n; ++j) out(i, j) += v * o(k, j);
            }
        return out;
    }
};

/// A^k in closed form: entry (i, j) = C(k, j-i) h^(j-i), 1-based indices.
inline Matrix transition_matrix(const SystemParams& p, std::int64_t k) {
    if (k < 0) throw std::invalid_argument("transition_matrix: k must be >= 0");
    Matrix out(p.m);
    for (int i = 0; i < p.m; ++i)
        for (int j = i; j < p.m; ++j)
            out(i, j) = binom_real(k, j - i) * pow_step(p.h, j - i);
    return out;
}

/// A^-k in closed form: entry (i, j) = (-1)^(j-i) C(k+j-i-1, j-i) h^(j-i), k >= 1.
inline Matrix transition_inverse(const SystemParams& p, std::int64_t k) {
    if (k < 1) throw std::invalid_argument("transition_inverse: k must be >= 1");
    Matrix out(p.m);
    for (int i = 0; i < p.m; ++i)
        for (int j = i; j < p.m; ++j) {
            const double sgn = ((j - i) % 2 == 0) ? 1.0 : -1.0;
            out(i, j) = sgn * binom_real(k + j - i - 1, j - i) * pow_step(p.h, j - i);
        }
    return out;
}

/// B_index = A^index B_0: component i = C(index, m-i) h^(m-i+1), 1-based i.
inline State control_vector(const SystemParams& p, std::int64_t index) {
    if (index < 0) throw std::invalid_argument("control_vector: index must be >= 0");
    State out(p.m);
    for (int i = 1; i <= p.m; ++i)
        out[i - 1] = binom_real(index, p.m - i) * pow_step(p.h, p.m - i + 1);
    return out;
}

// The initial state that the given control sequence u(0..k-1) steers to
// the origin in exactly k steps:
//   x_i(0) = (-1)^(m-i+1) sum_mu C(m-i+mu, m-i) h^(m-i+1) u(mu).
inline State isochronous_initial_state(const SystemParams& p, std::span<const double> controls) {
    if (controls.empty())
        throw std::invalid_argument("isochronous_initial_state: control sequence is empty");
    for (double u : controls)
        if (std::abs(u) > p.r)
            throw std::invalid_argument("isochronous_initial_state: |u| exceeds the bound r");
    State x(p.m);
    for (int i = 1; i <= p.m; ++i) {
        const int d = p.m - i;
        double acc = 0.0;
        for (std::size_t mu = 0; mu < controls.size(); ++mu)
            acc += binom_real(d + static_cast<std::int64_t>(mu), d) * controls[mu];
        const double sgn = (d % 2 == 0) ? -1.0 : 1.0;  // (-1)^(m-i+1)
        x[i - 1] = sgn * acc * pow_step(p.h, d + 1);
    }
    return x;
}

}  // namespace tocsyn
