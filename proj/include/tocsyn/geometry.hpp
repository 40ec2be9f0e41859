#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "tocsyn/plant.hpp"

namespace tocsyn {

/**
 * Isochronous-region geometry: the extreme vertices a_k / b_k generated by
 * bang-bang control sequences, and residual evaluators for every
 * hyperplane family that organizes the time-optimal trajectories.
 */

enum class VertexFamily { APlus, AMinus, BPlus, BMinus };

// Sign s attached to a vertex family: (-1)^m for a_{+k} and b_{-k},
// (-1)^(m-1) for a_{-k} and b_{+k}.
inline int vertex_sign(VertexFamily f, int m) {
    const int even_m = (m % 2 == 0) ? 1 : -1;
    switch (f) {
        case VertexFamily::APlus:
        case VertexFamily::BMinus:
            return even_m;
        case VertexFamily::AMinus:
        case VertexFamily::BPlus:
            return -even_m;
    }
    throw std::invalid_argument("vertex_sign: unknown family");
}

struct Vertex {
    VertexFamily family;
    std::int64_t k;
    State coords;
};

// Closed-form vertex coordinates:
//   a_k: x_i = (-1)^(i-1) C(m+k-i, m-i+1) h^(m-i+1) r s
//   b_k: same with the binomial reduced by 2.
// k >= 1 for the a families, k >= 2 for the b families.
inline Vertex vertex(const SystemParams& p, VertexFamily f, std::int64_t k) {
    const bool is_b = (f == VertexFamily::BPlus || f == VertexFamily::BMinus);
    if (k < (is_b ? 2 : 1)) throw std::invalid_argument("vertex: k below the family's range");
    const double s = static_cast<double>(vertex_sign(f, p.m));
    State x(p.m);
    for (int i = 1; i <= p.m; ++i) {
        const double c = binom_real(p.m + k - i, p.m - i + 1) - (is_b ? 2.0 : 0.0);
        const double sgn = ((i - 1) % 2 == 0) ? 1.0 : -1.0;
        x[i - 1] = sgn * c * pow_step(p.h, p.m - i + 1) * p.r * s;
    }
    return {f, k, std::move(x)};
}

// The defining bang-bang control sequence of a vertex: all -r (a_-), all
// +r (a_+), or one opposite-sign step followed by k-1 constant steps (b).
// Feeding this to isochronous_initial_state reproduces the vertex, which
// is the independent cross-check used by the verification suite.
inline std::vector<double> vertex_controls(VertexFamily f, std::int64_t k, double r) {
    const bool is_b = (f == VertexFamily::BPlus || f == VertexFamily::BMinus);
    if (k < (is_b ? 2 : 1)) throw std::invalid_argument("vertex_controls: k below the family's range");
    std::vector<double> u(static_cast<std::size_t>(k));
    switch (f) {
        case VertexFamily::AMinus:
            std::fill(u.begin(), u.end(), -r);
            break;
        case VertexFamily::APlus:
            std::fill(u.begin(), u.end(), r);
            break;
        case VertexFamily::BPlus:
            u[0] = r;
            std::fill(u.begin() + 1, u.end(), -r);
            break;
        case VertexFamily::BMinus:
            u[0] = -r;
            std::fill(u.begin() + 1, u.end(), r);
            break;
    }
    return u;
}

enum class HyperplaneFamily { N, M, MBar, MBeta, NBar, Nested };

// Which (m-1)-dimensional hyperplane an evaluator targets. beta applies
// to MBeta only, nu to Nested only; sign_s is the family's s.
struct HyperplaneId {
    HyperplaneFamily family;
    std::int64_t k = 0;
    int sign_s = 1;
    double beta = 0.0;
    int nu = 0;
};

namespace detail {

inline void validate_hyperplane(const SystemParams& p, const HyperplaneId& id) {
    if (id.family != HyperplaneFamily::Nested && id.sign_s != 1 && id.sign_s != -1)
        throw std::invalid_argument("hyperplane: sign_s must be +1 or -1");
    switch (id.family) {
        case HyperplaneFamily::N:
        case HyperplaneFamily::NBar:
            if (id.k < 1) throw std::invalid_argument("hyperplane: k must be >= 1");
            break;
        case HyperplaneFamily::M:
        case HyperplaneFamily::MBar:
        case HyperplaneFamily::MBeta:
            if (id.k < p.m - 1) throw std::invalid_argument("hyperplane: k must be >= m-1");
            break;
        case HyperplaneFamily::Nested:
            if (id.nu < 0 || id.nu > p.m - 1)
                throw std::invalid_argument("hyperplane: nu must lie in [0, m-1]");
            break;
    }
    if (id.family == HyperplaneFamily::MBeta && !(id.beta >= 0.0 && id.beta <= 1.0))
        throw std::invalid_argument("hyperplane: beta must lie in [0, 1]");
}

}  // namespace detail

// LHS - RHS of the family's defining equation; 0 (to scale-aware
// tolerance) means the state lies on the hyperplane. For Nested the
// result is the worst |z_{m-mu}(m-mu-1)| over mu = 0..nu, all of which
// must vanish on the nested plane.
inline double hyperplane_residual(const SystemParams& p, const HyperplaneId& id,
                                  std::span<const double> x) {
    detail::require_state_size(x, p, "hyperplane_residual");
    detail::validate_hyperplane(p, id);
    const double hm = pow_step(p.h, p.m);
    const double s = static_cast<double>(id.sign_s);
    const double parity = (p.m % 2 != 0) ? 1.0 : -1.0;  // (-1)^(m-1)
    switch (id.family) {
        case HyperplaneFamily::N:
            return binomial_weighted_sum(x, p.m - 1, p.h) - binom_real(id.k, p.m) * hm * p.r * s;
        case HyperplaneFamily::M:
            return binomial_weighted_sum(x, id.k, p.h) - parity * binom_real(id.k, p.m) * hm * p.r * s;
        case HyperplaneFamily::MBar:
            return binomial_weighted_sum(x, id.k, p.h) -
                   parity * (binom_real(id.k, p.m) - 2.0 * binom_real(id.k - 1, p.m - 1)) * hm *
                       p.r * s;
        case HyperplaneFamily::MBeta:
            return binomial_weighted_sum(x, id.k, p.h) -
                   parity *
                       (binom_real(id.k, p.m) - 2.0 * (1.0 - id.beta) * binom_real(id.k - 1, p.m - 1)) *
                       hm * p.r * s;
        case HyperplaneFamily::NBar:
            return binomial_weighted_sum(x, p.m, p.h) -
                   (binom_real(id.k - 1, p.m) + parity) * hm * p.r * s;
        case HyperplaneFamily::Nested: {
            double worst = 0.0;
            for (int mu = 0; mu <= id.nu; ++mu) {
                const int q = p.m - (mu + 1);
                double acc = 0.0;
                double hp = 1.0;
                for (int i = 0; i <= q; ++i) {
                    acc += binom_real(q, i) * hp * x[i + mu];
                    hp *= p.h;
                }
                worst = std::max(worst, std::abs(acc));
            }
            return worst;
        }
    }
    throw std::invalid_argument("hyperplane_residual: unknown family");
}

// Natural magnitude of the family's defining equation, for scale-aware
// tolerances: max(1, |RHS|), or the largest term magnitude for Nested.
inline double hyperplane_scale(const SystemParams& p, const HyperplaneId& id,
                               std::span<const double> x) {
    detail::require_state_size(x, p, "hyperplane_scale");
    detail::validate_hyperplane(p, id);
    const double hm = pow_step(p.h, p.m);
    if (id.family == HyperplaneFamily::Nested) {
        double worst = 1.0;
        for (int mu = 0; mu <= id.nu; ++mu) {
            const int q = p.m - (mu + 1);
            double acc = 0.0;
            double hp = 1.0;
            for (int i = 0; i <= q; ++i) {
                acc += std::abs(binom_real(q, i) * hp * x[i + mu]);
                hp *= p.h;
            }
            worst = std::max(worst, acc);
        }
        return worst;
    }
    if (id.family == HyperplaneFamily::NBar)
        return std::max(1.0, (binom_real(id.k - 1, p.m) + 1.0) * hm * p.r);
    return std::max(1.0, binom_real(id.k, p.m) * hm * p.r);
}

}  // namespace tocsyn
