#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "tocsyn/combinatorics.hpp"
#include "tocsyn/geometry.hpp"
#include "tocsyn/plant.hpp"
#include "tocsyn/synthesis.hpp"

namespace tocsyn {

/**
 * Verification suites: every combinatorial identity, matrix closed form
 * and geometric theorem the kernel relies on, executed over exhaustive
 * parameter grids and reported as per-check pass/fail counts. Shared by
 * the CLI `verify` subcommand and the acceptance suite.
 */

struct CheckResult {
    std::string name;
    long long passed = 0;
    long long failed = 0;
};

namespace detail {

// Reproducible uniform variates straight from mt19937_64 bits; library
// distributions are implementation-defined.
struct UniformRng {
    std::mt19937_64 eng;
    explicit UniformRng(std::uint64_t seed) : eng(seed) {}
    double next01() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }
    double range(double lo, double hi) { return lo + (hi - lo) * next01(); }
};

inline void tally(CheckResult& row, bool ok) { (ok ? row.passed : row.failed) += 1; }

inline double component_unit(const SystemParams& p, int i_one_based) {
    return pow_step(p.h, p.m - i_one_based + 1) * p.r;
}

inline State origin_state(const SystemParams& p) { return State(p.m, 0.0); }

// a_k for k >= 1, the origin for k = 0.
inline State a_point(const SystemParams& p, VertexFamily f, std::int64_t k) {
    return k == 0 ? origin_state(p) : vertex(p, f, k).coords;
}

inline State blend(const State& a, const State& b, double beta) {
    State out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = beta * a[i] + (1.0 - beta) * b[i];
    return out;
}

inline bool ulps_close(double a, double b, double ulps) {
    if (a == b) return true;
    const double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= ulps * std::numeric_limits<double>::epsilon() * scale;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Identities
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> identity_suite(int max_m, int max_k) {
    std::vector<CheckResult> out;

    {
        CheckResult row{"T2_14"};
        for (int m = 1; m <= max_m; ++m)
            for (int i = 1; i <= m; ++i)
                for (int k = 0; k <= max_k; ++k)
                    detail::tally(row, identity_check(TheoremId::T2_14, {m, k, i, 0}));
        out.push_back(row);
    }
    {
        CheckResult row{"T2_15"};
        for (int m = 1; m <= max_m; ++m)
            for (int k = 1; k <= max_k; ++k)
                detail::tally(row, identity_check(TheoremId::T2_15, {m, k, 0, 0}));
        out.push_back(row);
    }
    for (auto [id, name] : {std::pair{TheoremId::T2_16a, "T2_16a"}, {TheoremId::T2_16b, "T2_16b"}}) {
        CheckResult row{name};
        for (int m = 2; m <= max_m; ++m)
            for (int k = m - 1; k <= max_k; ++k)
                detail::tally(row, identity_check(id, {m, k, 0, 0}));
        out.push_back(row);
    }
    {
        CheckResult row{"T2_17"};
        for (int m = 1; m <= max_m; ++m)
            for (int k = 1; k <= max_k; ++k)
                detail::tally(row, identity_check(TheoremId::T2_17, {m, k, 0, 0}));
        out.push_back(row);
    }
    {
        CheckResult row{"T2_18"};
        for (int m = 1; m <= max_m; ++m)
            for (int k = 1; k <= max_k; ++k)
                detail::tally(row, identity_check(TheoremId::T2_18, {m, k, 0, 0}));
        out.push_back(row);
    }
    {
        CheckResult row{"T2_19"};
        for (int m = 1; m <= max_m; ++m)
            detail::tally(row, identity_check(TheoremId::T2_19, {m, 0, 0, 0}));
        out.push_back(row);
    }
    {
        CheckResult row{"T2_20"};
        for (int m = 1; m <= max_m; ++m)
            for (int nu = 0; nu <= m - 1; ++nu)
                for (int k = 0; k <= m - 1 - nu; ++k)
                    detail::tally(row, identity_check(TheoremId::T2_20, {m, k, 0, nu}));
        out.push_back(row);
    }
    {
        CheckResult row{"pascal_recurrence"};
        for (std::int64_t n = 2; n <= 60; ++n)
            for (std::int64_t k = 1; k < n; ++k)
                detail::tally(row, binom(n, k) == binom(n - 1, k) + binom(n - 1, k - 1));
        out.push_back(row);
    }
    {
        CheckResult row{"binom_symmetry"};
        for (std::int64_t n = 0; n <= 60; ++n)
            for (std::int64_t k = 0; k <= n; ++k) detail::tally(row, binom(n, k) == binom(n, n - k));
        out.push_back(row);
    }
    {
        CheckResult row{"falling_factorial_vs_binom"};
        for (int m = 1; m <= std::min(max_m, 8); ++m)
            for (std::int64_t k = m; k <= 40; ++k)
                detail::tally(row, falling_factorial(static_cast<double>(k), m) ==
                                       static_cast<double>(binom(k, m) * factorial(m)));
        out.push_back(row);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Transition-matrix closed forms
// ---------------------------------------------------------------------------

namespace detail {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

inline IntMatrix int_identity(int n) {
    IntMatrix m(n, std::vector<std::int64_t>(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline IntMatrix int_mul(const IntMatrix& a, const IntMatrix& b) {
    const int n = static_cast<int>(a.size());
    IntMatrix out(n, std::vector<std::int64_t>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            if (a[i][k] == 0) continue;
            for (int j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

}  // namespace detail

inline std::vector<CheckResult> matrix_suite(int max_m, int max_k) {
    std::vector<CheckResult> out;
    CheckResult closed_int{"transition_closed_form_exact_h1"};
    CheckResult inverse_int{"transition_inverse_exact_h1"};
    CheckResult closed_dbl{"transition_closed_form_h5e-4"};
    CheckResult inverse_dbl{"transition_inverse_h5e-4"};

    for (int m = 2; m <= max_m; ++m) {
        // exact integer path at h = 1
        detail::IntMatrix step = detail::int_identity(m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) step[i][j] = binom(1, j - i);
        detail::IntMatrix power = detail::int_identity(m);
        for (int k = 0; k <= max_k; ++k) {
            bool ok = true;
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) ok = ok && power[i][j] == binom(k, j - i);
            detail::tally(closed_int, ok);
            if (k >= 1) {
                bool inv_ok = true;
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < m; ++j) {
                        __int128 acc = 0;
                        for (int v = 0; v <= j; ++v) {  // the inverse is upper triangular
                            const std::int64_t sgn = ((j - v) % 2 == 0) ? 1 : -1;
                            acc += static_cast<__int128>(binom(k, v - i)) * sgn *
                                   binom(k + j - v - 1, j - v);
                        }
                        inv_ok = inv_ok && acc == (i == j ? 1 : 0);
                    }
                detail::tally(inverse_int, inv_ok);
            }
            power = detail::int_mul(power, step);
        }

        // double path at h = 0.0005
        const SystemParams p(m, 0.0005, 1.0);
        const Matrix a1 = transition_matrix(p, 1);
        Matrix prod = Matrix::identity(m);
        for (int k = 0; k <= max_k; ++k) {
            const Matrix closed = transition_matrix(p, k);
            bool ok = true;
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    const double tol = 1e-12 * std::max(std::abs(closed(i, j)), 1e-300);
                    ok = ok && std::abs(closed(i, j) - prod(i, j)) <= tol;
                }
            detail::tally(closed_dbl, ok);
            if (k >= 1) {
                const Matrix inv = transition_inverse(p, k);
                bool inv_ok = true;
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < m; ++j) {
                        double acc = 0.0, scale = 0.0;
                        for (int v = 0; v < m; ++v) {
                            acc += closed(i, v) * inv(v, j);
                            scale += std::abs(closed(i, v) * inv(v, j));
                        }
                        const double expect = (i == j) ? 1.0 : 0.0;
                        inv_ok = inv_ok && std::abs(acc - expect) <= 1e-12 * std::max(1.0, scale);
                    }
                detail::tally(inverse_dbl, inv_ok);
            }
            prod = prod * a1;
        }
    }
    out.push_back(closed_int);
    out.push_back(inverse_int);
    out.push_back(closed_dbl);
    out.push_back(inverse_dbl);
    return out;
}

// ---------------------------------------------------------------------------
// Geometry theorems
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> geometry_suite(int max_m, int max_k) {
    std::vector<CheckResult> out;
    const double h_grid[] = {1.0, 0.0005};
    const double beta_grid[] = {0.0, 0.25, 0.5, 0.75, 1.0};
    const std::pair<VertexFamily, VertexFamily> segment_pairs[] = {
        {VertexFamily::APlus, VertexFamily::BMinus},
        {VertexFamily::AMinus, VertexFamily::BPlus},
    };

    CheckResult t45{"T4_5_vertices_on_N"};
    CheckResult t49{"T4_9_a_on_M"};
    CheckResult t411{"T4_11_b_on_Mbar"};
    CheckResult t413{"T4_13_blend_on_Mbeta"};
    CheckResult t416{"T4_16_beta_control_step"};
    CheckResult t417{"T4_17_segment_step"};
    CheckResult t419{"T4_19_Nbar_separates_a_b"};
    CheckResult t420{"T4_20_beta_preserved"};
    CheckResult t422{"T4_22_nested_planes"};
    CheckResult iso{"isochronous_roundtrip"};
    CheckResult vand{"vandermonde_det"};

    for (double h : h_grid) {
        for (int m = 2; m <= max_m; ++m) {
            const SystemParams p(m, h, 1.0);
            const double hm_r = pow_step(p.h, p.m) * p.r;
            const double parity = (m % 2 != 0) ? 1.0 : -1.0;  // (-1)^(m-1)

            for (auto [fa, fb] : segment_pairs) {
                const int s = vertex_sign(fa, m);

                // Theorem 4.5: a_k (k >= 1) and the paired b_k (k >= 2) on N_m(k)
                for (std::int64_t k = 1; k <= max_k; ++k) {
                    const HyperplaneId id{HyperplaneFamily::N, k, s, 0.0, 0};
                    const State a = vertex(p, fa, k).coords;
                    const double tol_a = 1e-9 * hyperplane_scale(p, id, a);
                    bool ok = std::abs(hyperplane_residual(p, id, a)) <= tol_a;
                    if (k >= 2) {
                        const State b = vertex(p, fb, k).coords;
                        const double tol_b = 1e-9 * hyperplane_scale(p, id, b);
                        ok = ok && std::abs(hyperplane_residual(p, id, b)) <= tol_b;
                    }
                    detail::tally(t45, ok);
                }

                // Theorem 4.9: a_k and a_{k-1} on M_m(k), k >= m-1
                for (std::int64_t k = std::max<std::int64_t>(m - 1, 1); k <= max_k; ++k) {
                    const HyperplaneId id{HyperplaneFamily::M, k, s, 0.0, 0};
                    const State ak = detail::a_point(p, fa, k);
                    const State ak1 = detail::a_point(p, fa, k - 1);
                    const double tol_k = 1e-9 * hyperplane_scale(p, id, ak);
                    const double tol_k1 = 1e-9 * hyperplane_scale(p, id, ak1);
                    detail::tally(t49, std::abs(hyperplane_residual(p, id, ak)) <= tol_k &&
                                           std::abs(hyperplane_residual(p, id, ak1)) <= tol_k1);
                }

                // Theorem 4.11: b_k and b_{k-1} on Mbar_m(k)
                for (std::int64_t k = std::max<std::int64_t>(m - 1, 3); k <= max_k; ++k) {
                    const HyperplaneId id{HyperplaneFamily::MBar, k, s, 0.0, 0};
                    const State bk = vertex(p, fb, k).coords;
                    const State bk1 = vertex(p, fb, k - 1).coords;
                    detail::tally(t411,
                                  std::abs(hyperplane_residual(p, id, bk)) <=
                                          1e-9 * hyperplane_scale(p, id, bk) &&
                                      std::abs(hyperplane_residual(p, id, bk1)) <=
                                          1e-9 * hyperplane_scale(p, id, bk1));
                }

                // Theorem 4.13: beta a_k + (1-beta) b_k on M^beta_m(k)
                for (std::int64_t k = std::max<std::int64_t>(m - 1, 2); k <= max_k; ++k) {
                    const State a = vertex(p, fa, k).coords;
                    const State b = vertex(p, fb, k).coords;
                    for (double beta : beta_grid) {
                        const HyperplaneId id{HyperplaneFamily::MBeta, k, s, beta, 0};
                        const State x = detail::blend(a, b, beta);
                        detail::tally(t413, std::abs(hyperplane_residual(p, id, x)) <=
                                                1e-9 * hyperplane_scale(p, id, x));
                    }
                }

                // Theorem 4.16: from M^beta_m(k), u = (-1)^m (2 beta - 1) r s lands on M_m(k-1)
                for (std::int64_t k = std::max<std::int64_t>(m, 2); k <= max_k; ++k) {
                    const State a = vertex(p, fa, k).coords;
                    const State b = vertex(p, fb, k).coords;
                    for (double beta : beta_grid) {
                        const State x = detail::blend(a, b, beta);
                        const double u = -parity * (2.0 * beta - 1.0) * p.r * s;
                        const State next = plant_step(p, x, u);
                        const HyperplaneId target{HyperplaneFamily::M, k - 1, s, 0.0, 0};
                        detail::tally(t416, std::abs(hyperplane_residual(p, target, next)) <=
                                                1e-9 * hyperplane_scale(p, target, next));
                    }
                }

                // Theorem 4.17: segment points of a_k a_{k-1} step to segment
                // points of a_{k-1} a_{k-2} under u = (-1)^m r s
                for (std::int64_t k = m; k <= max_k; ++k) {
                    const State ak = detail::a_point(p, fa, k);
                    const State ak1 = detail::a_point(p, fa, k - 1);
                    const State ak2 = detail::a_point(p, fa, k - 2);
                    const double u = -parity * p.r * s;
                    for (double beta : beta_grid) {
                        const State x = detail::blend(ak, ak1, beta);
                        const State next = plant_step(p, x, u);
                        const State expect = detail::blend(ak1, ak2, beta);
                        bool ok = true;
                        for (int i = 1; i <= m; ++i) {
                            const double scale = std::max(
                                {std::abs(expect[i - 1]), std::abs(ak[i - 1]),
                                 detail::component_unit(p, i)});
                            ok = ok && std::abs(next[i - 1] - expect[i - 1]) <= 1e-9 * scale;
                        }
                        detail::tally(t417, ok);
                    }
                }

                // Theorem 4.19: a_k on Nbar_m(k), b_k off it by exactly 2 h^m r
                for (std::int64_t k = 1; k <= max_k; ++k) {
                    const HyperplaneId id{HyperplaneFamily::NBar, k, s, 0.0, 0};
                    const State a = vertex(p, fa, k).coords;
                    bool ok = std::abs(hyperplane_residual(p, id, a)) <=
                              1e-9 * hyperplane_scale(p, id, a);
                    if (k >= 2) {
                        const State b = vertex(p, fb, k).coords;
                        const double gap = std::abs(hyperplane_residual(p, id, b));
                        ok = ok && std::abs(gap - 2.0 * hm_r) <= 1e-9 * hyperplane_scale(p, id, b);
                    }
                    detail::tally(t419, ok);
                }

                // Theorem 4.20: the segment parameter survives the step
                for (std::int64_t k = m + 1; k <= max_k; ++k) {
                    const State ak = detail::a_point(p, fa, k);
                    const State ak1 = detail::a_point(p, fa, k - 1);
                    const double u = -parity * p.r * s;
                    const double ck1 = binom_real(k - 1, m);
                    const double ck2 = binom_real(k - 2, m);
                    for (double beta : {0.25, 0.5, 0.75, 1.0}) {
                        const State x = detail::blend(ak, ak1, beta);
                        const State next = plant_step(p, x, u);
                        const double ybar = binomial_weighted_sum(x, m, p.h) / (hm_r * s);
                        const double beta_in = (ybar - parity - ck2) / (ck1 - ck2);
                        const double ynext = y_value(p, next) / (hm_r * s);
                        const double beta_out = (ynext - ck2) / (ck1 - ck2);
                        detail::tally(t420, std::abs(beta_in - beta) <= 1e-9 &&
                                                std::abs(beta_in - beta_out) <= 1e-9);
                    }
                }

                // Theorem 4.22: small-k vertices satisfy all nested plane equations
                for (int nu = 0; nu <= m - 1; ++nu) {
                    const HyperplaneId id{HyperplaneFamily::Nested, 0, s, 0.0, nu};
                    for (std::int64_t k = 0; k <= m - 1 - nu; ++k) {
                        const State a = detail::a_point(p, fa, k);
                        detail::tally(t422, hyperplane_residual(p, id, a) <=
                                                1e-9 * hyperplane_scale(p, id, a));
                        if (k >= 2) {
                            const State b = vertex(p, fb, k).coords;
                            detail::tally(t422, hyperplane_residual(p, id, b) <=
                                                    1e-9 * hyperplane_scale(p, id, b));
                        }
                    }
                }
            }

            // Isochronous round trip: random bounded controls, then the
            // defining bang-bang sequences of every vertex family.
            detail::UniformRng rng(0xA5EED5EEDULL + static_cast<std::uint64_t>(m));
            for (std::int64_t k = 1; k <= std::min<std::int64_t>(max_k, 20); ++k) {
                std::vector<double> controls(static_cast<std::size_t>(k));
                for (auto& u : controls) u = rng.range(-p.r, p.r);
                State x = isochronous_initial_state(p, controls);
                std::vector<double> tol(m);
                for (int i = 1; i <= m; ++i)
                    tol[i - 1] = 1e-9 * std::max(std::abs(x[i - 1]), detail::component_unit(p, i));
                for (double u : controls) x = plant_step(p, x, u);
                bool ok = true;
                for (int i = 0; i < m; ++i) ok = ok && std::abs(x[i]) <= tol[i];
                detail::tally(iso, ok);
            }
            for (VertexFamily f : {VertexFamily::APlus, VertexFamily::AMinus, VertexFamily::BPlus,
                                   VertexFamily::BMinus}) {
                const bool is_b = (f == VertexFamily::BPlus || f == VertexFamily::BMinus);
                for (std::int64_t k = is_b ? 2 : 1; k <= max_k; ++k) {
                    const State from_controls =
                        isochronous_initial_state(p, vertex_controls(f, k, p.r));
                    const State closed = vertex(p, f, k).coords;
                    bool ok = true;
                    for (int i = 1; i <= m; ++i) {
                        const double scale =
                            std::max(std::abs(closed[i - 1]), detail::component_unit(p, i));
                        ok = ok && std::abs(from_controls[i - 1] - closed[i - 1]) <= 1e-12 * scale;
                    }
                    detail::tally(iso, ok);
                }
            }
        }
    }

    // Vandermonde determinant of the uniqueness argument: nodes 1..m-1,
    // det = prod_{j<i} (i-j), never zero.
    for (int m = 3; m <= std::max(max_m, 8); ++m) {
        const int n = m - 1;
        std::vector<std::vector<double>> a(n, std::vector<double>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a[i][j] = std::pow(static_cast<double>(j + 1), i);
        double det = 1.0;
        bool singular = false;
        for (int col = 0; col < n && !singular; ++col) {
            int pivot = col;
            for (int row = col + 1; row < n; ++row)
                if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
            if (a[pivot][col] == 0.0) {
                singular = true;
                break;
            }
            if (pivot != col) {
                std::swap(a[pivot], a[col]);
                det = -det;
            }
            det *= a[col][col];
            for (int row = col + 1; row < n; ++row) {
                const double f = a[row][col] / a[col][col];
                for (int j = col; j < n; ++j) a[row][j] -= f * a[col][j];
            }
        }
        double expect = 1.0;
        for (int i = 2; i <= n; ++i)
            for (int j = 1; j < i; ++j) expect *= static_cast<double>(i - j);
        detail::tally(vand, !singular && std::abs(det - expect) <= 1e-6 * expect);
    }

    out.push_back(t45);
    out.push_back(t49);
    out.push_back(t411);
    out.push_back(t413);
    out.push_back(t416);
    out.push_back(t417);
    out.push_back(t419);
    out.push_back(t420);
    out.push_back(t422);
    out.push_back(iso);
    out.push_back(vand);
    return out;
}

// ---------------------------------------------------------------------------
// Synthesis-kernel properties
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> kernel_suite(int max_m, int max_k, long long samples,
                                             std::uint64_t seed) {
    std::vector<CheckResult> out;

    {
        // fxiao at m = 2 against the dedicated second-order form, sampled
        // across linear, boundary and nonlinear regimes.
        CheckResult row{"fsun_fxiao_equivalence"};
        const SystemParams p(2, 0.05, 1.0);
        detail::UniformRng rng(seed);
        for (long long i = 0; i < samples; ++i) {
            double x1, x2;
            x2 = rng.range(-5.0, 5.0);
            if (i % 2 == 0) {
                x1 = rng.range(-5.0, 5.0);
            } else {
                // land y near the regime boundary
                const double band = 2.0 * pow_step(p.h, 2) * p.r;
                x1 = rng.range(-band, band) - p.h * x2;
            }
            const State x{x1, x2};
            detail::tally(row, detail::ulps_close(fxiao(x, p), fsun(x1, x2, p.r, p.h), 4.0));
        }
        out.push_back(row);
    }
    {
        // solver bracket: ff(k-1, m) < m!|y| / (h^m r) <= ff(k, m)
        CheckResult row{"solve_k_bracket"};
        detail::UniformRng rng(seed ^ 0x9E3779B97F4A7C15ULL);
        const double slack = 1.0 + 4.0 * std::numeric_limits<double>::epsilon();
        for (int m = 2; m <= max_m; ++m)
            for (double h : {1.0, 0.0005})
                for (int i = 0; i < 2000; ++i) {
                    const SystemParams p(m, h, 1.0);
                    const double mag = std::pow(10.0, rng.range(-9.0, 6.0));
                    const double y = (rng.next01() < 0.5 ? -1.0 : 1.0) *
                                     pow_step(h, m) * p.r * (1.0 + mag);
                    const std::int64_t k = solve_k(p, y);
                    const double target =
                        static_cast<double>(factorial(m)) * std::abs(y) / (pow_step(h, m) * p.r);
                    const bool ok =
                        k >= m &&
                        falling_factorial(static_cast<double>(k - 1), m) < target &&
                        target <= falling_factorial(static_cast<double>(k), m) * slack;
                    detail::tally(row, ok);
                }
        out.push_back(row);
    }
    {
        // |fxiao| <= r exactly, all regimes
        CheckResult row{"fxiao_saturation_bound"};
        detail::UniformRng rng(seed ^ 0xC2B2AE3D27D4EB4FULL);
        for (int m = 2; m <= max_m; ++m) {
            const SystemParams p(m, 0.01, 2.5);
            for (int i = 0; i < 5000; ++i) {
                State x(m);
                const double scale = std::pow(10.0, rng.range(-6.0, 2.0));
                for (auto& c : x) c = rng.range(-scale, scale);
                detail::tally(row, std::abs(fxiao(x, p)) <= p.r);
            }
        }
        out.push_back(row);
    }
    {
        // fxiao at a_k equals (-1)^m r s for every family, order and step
        CheckResult row{"fxiao_at_vertices"};
        for (double h : {1.0, 0.01, 0.0005})
            for (int m = 2; m <= max_m; ++m) {
                const SystemParams p(m, h, 1.0);
                const double parity_m = (m % 2 == 0) ? 1.0 : -1.0;  // (-1)^m
                for (VertexFamily f : {VertexFamily::APlus, VertexFamily::AMinus})
                    for (std::int64_t k = 1; k <= max_k; ++k) {
                        const State a = vertex(p, f, k).coords;
                        const double expect = parity_m * p.r * vertex_sign(f, m);
                        detail::tally(row, std::abs(fxiao(a, p) - expect) <= 1e-12 * p.r);
                    }
            }
        out.push_back(row);
    }
    {
        // deadbeat: from a_k the loop reaches the origin in exactly k steps
        CheckResult row{"deadbeat_from_vertices"};
        for (double h : {1.0, 0.0005})
            for (int m = 2; m <= std::min(max_m, 4); ++m) {
                const SystemParams p(m, h, 1.0);
                for (VertexFamily f : {VertexFamily::APlus, VertexFamily::AMinus})
                    for (std::int64_t k = 1; k <= std::min<std::int64_t>(max_k, 30); ++k) {
                        State x = vertex(p, f, k).coords;
                        bool ok = true;
                        for (std::int64_t step = 0; step < k; ++step) {
                            // strictly away from the origin before step k
                            double worst = 0.0;
                            for (int i = 1; i <= m; ++i)
                                worst = std::max(worst, std::abs(x[i - 1]) /
                                                            detail::component_unit(p, i));
                            ok = ok && worst > 1e-3;
                            const double u = fxiao(x, p);
                            ok = ok && std::abs(u) <= p.r;
                            x = plant_step(p, x, u);
                        }
                        for (int i = 1; i <= m; ++i)
                            ok = ok && std::abs(x[i - 1]) <= 1e-9 * detail::component_unit(p, i);
                        detail::tally(row, ok);
                    }
            }
        out.push_back(row);
    }
    return out;
}

}  // namespace tocsyn
