#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "tocsyn/geometry.hpp"
#include "tocsyn/plant.hpp"
#include "tocsyn/verify.hpp"

using namespace tocsyn;

TEST_CASE("plant_step examples") {
    const SystemParams p2(2, 1.0, 1.0);
    CHECK(plant_step(p2, State{0.0, 1.0}, 0.0) == State{1.0, 1.0});
    // from a_{-1} = (-1, 1) the control -1 lands on the origin
    CHECK(plant_step(p2, State{-1.0, 1.0}, -1.0) == State{0.0, 0.0});
    // chain structure: only x_{m-1} and x_m move when the rest is zero
    const SystemParams p4(4, 0.5, 1.0);
    const State next = plant_step(p4, State{0.0, 0.0, 0.0, 2.0}, 1.0);
    CHECK(next == State{0.0, 0.0, 1.0, 2.5});
}

TEST_CASE("Plant is a value type") {
    const Plant plant(SystemParams(2, 1.0, 1.0), State{-1.0, 1.0});
    const Plant stepped = plant.step(-1.0);
    CHECK(plant.state == State{-1.0, 1.0});
    CHECK(stepped.state == State{0.0, 0.0});
    CHECK_THROWS_AS(Plant(SystemParams(3, 1.0, 1.0), State{1.0}), std::invalid_argument);
}

TEST_CASE("transition_matrix closed form") {
    const SystemParams p2(2, 0.1, 1.0);
    const Matrix identity = transition_matrix(p2, 0);
    CHECK(identity(0, 0) == 1.0);
    CHECK(identity(0, 1) == 0.0);
    CHECK(identity(1, 1) == 1.0);

    const Matrix a5 = transition_matrix(p2, 5);
    CHECK(a5(0, 0) == 1.0);
    CHECK(a5(0, 1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(a5(1, 0) == 0.0);
    CHECK(a5(1, 1) == 1.0);

    const SystemParams p3(3, 1.0, 1.0);
    const Matrix a2 = transition_matrix(p3, 2);
    CHECK(a2(0, 0) == 1.0);
    CHECK(a2(0, 1) == 2.0);
    CHECK(a2(0, 2) == 1.0);
    CHECK(a2(1, 1) == 1.0);
    CHECK(a2(1, 2) == 2.0);
    CHECK(a2(2, 2) == 1.0);
    CHECK_THROWS_AS(transition_matrix(p3, -1), std::invalid_argument);
}

TEST_CASE("transition_inverse closed form and product identity") {
    const SystemParams p2(2, 1.0, 1.0);
    const Matrix inv1 = transition_inverse(p2, 1);
    CHECK(inv1(0, 0) == 1.0);
    CHECK(inv1(0, 1) == -1.0);
    CHECK(inv1(1, 1) == 1.0);

    const SystemParams p3(3, 1.0, 1.0);
    const Matrix inv2 = transition_inverse(p3, 2);
    CHECK(inv2(0, 0) == 1.0);
    CHECK(inv2(0, 1) == -2.0);
    CHECK(inv2(0, 2) == 3.0);
    CHECK(inv2(1, 2) == -2.0);

    for (int m = 2; m <= 6; ++m) {
        const SystemParams p(m, 0.3, 1.0);
        for (std::int64_t k = 1; k <= 12; ++k) {
            const Matrix prod = transition_matrix(p, k) * transition_inverse(p, k);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j)
                    CHECK(std::abs(prod(i, j) - (i == j ? 1.0 : 0.0)) <= 1e-11);
        }
    }
    CHECK_THROWS_AS(transition_inverse(p3, 0), std::invalid_argument);
}

TEST_CASE("control_vector closed form") {
    const SystemParams p3(3, 0.5, 1.0);
    CHECK(control_vector(p3, 0) == State{0.0, 0.0, 0.5});  // B_0 = (0, ..., 0, h)
    CHECK(control_vector(p3, 1) == State{0.0, 0.25, 0.5});
    const SystemParams p2(2, 1.0, 1.0);
    CHECK(control_vector(p2, 3) == State{3.0, 1.0});
    CHECK_THROWS_AS(control_vector(p2, -1), std::invalid_argument);
}

TEST_CASE("control_vector equals A^index B0") {
    for (int m = 2; m <= 5; ++m) {
        const SystemParams p(m, 0.25, 1.0);
        for (std::int64_t idx = 0; idx <= 10; ++idx) {
            const Matrix a = transition_matrix(p, idx);
            const State b0 = control_vector(p, 0);
            const State direct = control_vector(p, idx);
            for (int i = 0; i < m; ++i) {
                double acc = 0.0;
                for (int j = 0; j < m; ++j) acc += a(i, j) * b0[j];
                CHECK(direct[i] == doctest::Approx(acc).epsilon(1e-13));
            }
        }
    }
}

TEST_CASE("isochronous_initial_state examples") {
    const SystemParams p2(2, 1.0, 1.0);
    CHECK(isochronous_initial_state(p2, std::vector<double>{-1.0}) == State{-1.0, 1.0});
    // zero controls start at the origin
    const SystemParams p3(3, 0.5, 1.0);
    const State zero = isochronous_initial_state(p3, std::vector<double>{0.0, 0.0, 0.0});
    for (double c : zero) CHECK(c == 0.0);
    CHECK_THROWS_AS(isochronous_initial_state(p2, std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(isochronous_initial_state(p2, std::vector<double>{2.0}), std::invalid_argument);
}

TEST_CASE("isochronous round trip under random bounded controls") {
    std::mt19937_64 eng(31);
    for (int m = 2; m <= 6; ++m) {
        const SystemParams p(m, 0.5, 2.0);
        for (int k = 1; k <= 15; ++k) {
            std::vector<double> controls(k);
            for (auto& u : controls)
                u = p.r * (2.0 * (static_cast<double>(eng() >> 11) * 0x1.0p-53) - 1.0);
            State x = isochronous_initial_state(p, controls);
            std::vector<double> tol(m);
            for (int i = 1; i <= m; ++i)
                tol[i - 1] = 1e-9 * std::max(std::abs(x[i - 1]), pow_step(p.h, m - i + 1) * p.r);
            for (double u : controls) x = plant_step(p, x, u);
            for (int i = 0; i < m; ++i) CHECK(std::abs(x[i]) <= tol[i]);
        }
    }
}

TEST_CASE("vertex frozen second-order coordinates") {
    const SystemParams p(2, 1.0, 1.0);
    CHECK(vertex(p, VertexFamily::AMinus, 2).coords == State{-3.0, 2.0});
    CHECK(vertex(p, VertexFamily::APlus, 2).coords == State{3.0, -2.0});
    CHECK(vertex(p, VertexFamily::BPlus, 2).coords == State{-1.0, 0.0});
    CHECK(vertex(p, VertexFamily::BMinus, 2).coords == State{1.0, 0.0});
    CHECK_THROWS_AS(vertex(p, VertexFamily::APlus, 0), std::invalid_argument);
    CHECK_THROWS_AS(vertex(p, VertexFamily::BPlus, 1), std::invalid_argument);
}

TEST_CASE("vertex third-order a_1 and its one-step deadbeat") {
    const double h = 0.5, r = 2.0;
    const SystemParams p(3, h, r);
    const Vertex a1 = vertex(p, VertexFamily::AMinus, 1);  // s = +1 for m = 3
    CHECK(a1.coords[0] == doctest::Approx(h * h * h * r).epsilon(1e-15));
    CHECK(a1.coords[1] == doctest::Approx(-h * h * r).epsilon(1e-15));
    CHECK(a1.coords[2] == doctest::Approx(h * r).epsilon(1e-15));
    const State next = plant_step(p, a1.coords, -r);
    for (int i = 1; i <= 3; ++i) CHECK(std::abs(next[i - 1]) <= 1e-15 * pow_step(h, 3 - i + 1) * r);
}

TEST_CASE("vertices agree with their defining bang-bang control sequences") {
    for (int m = 2; m <= 6; ++m) {
        const SystemParams p(m, 0.0005, 1.0);
        for (VertexFamily f : {VertexFamily::APlus, VertexFamily::AMinus, VertexFamily::BPlus,
                               VertexFamily::BMinus}) {
            const bool is_b = (f == VertexFamily::BPlus || f == VertexFamily::BMinus);
            for (std::int64_t k = is_b ? 2 : 1; k <= 20; ++k) {
                const State closed = vertex(p, f, k).coords;
                const State roundtrip = isochronous_initial_state(p, vertex_controls(f, k, p.r));
                for (int i = 1; i <= m; ++i) {
                    const double scale =
                        std::max(std::abs(closed[i - 1]), pow_step(p.h, m - i + 1) * p.r);
                    CHECK(std::abs(closed[i - 1] - roundtrip[i - 1]) <= 1e-12 * scale);
                }
            }
        }
    }
}

TEST_CASE("hyperplane examples: a_k on N, b_k on Mbar, Nbar separation") {
    for (int m = 2; m <= 6; ++m) {
        const SystemParams p(m, 0.0005, 1.0);
        const double hm_r = pow_step(p.h, m) * p.r;
        const int s_minus = vertex_sign(VertexFamily::AMinus, m);
        for (std::int64_t k = 2; k <= 20; ++k) {
            const State a = vertex(p, VertexFamily::AMinus, k).coords;
            const State b = vertex(p, VertexFamily::BPlus, k).coords;
            const HyperplaneId on_n{HyperplaneFamily::N, k, s_minus, 0.0, 0};
            CHECK(std::abs(hyperplane_residual(p, on_n, a)) <= 1e-9 * hyperplane_scale(p, on_n, a));
            if (k >= m - 1) {
                const HyperplaneId on_mbar{HyperplaneFamily::MBar, k, s_minus, 0.0, 0};
                CHECK(std::abs(hyperplane_residual(p, on_mbar, b)) <=
                      1e-9 * hyperplane_scale(p, on_mbar, b));
            }
            // a_k sits on Nbar(k); b_k misses it by exactly 2 h^m r
            const HyperplaneId on_nbar{HyperplaneFamily::NBar, k, s_minus, 0.0, 0};
            CHECK(std::abs(hyperplane_residual(p, on_nbar, a)) <=
                  1e-9 * hyperplane_scale(p, on_nbar, a));
            CHECK(std::abs(std::abs(hyperplane_residual(p, on_nbar, b)) - 2.0 * hm_r) <=
                  1e-9 * hyperplane_scale(p, on_nbar, b));
        }
    }
}

TEST_CASE("hyperplane_residual rejects malformed ids") {
    const SystemParams p(3, 1.0, 1.0);
    const State x{0.0, 0.0, 0.0};
    CHECK_THROWS_AS(hyperplane_residual(p, {HyperplaneFamily::N, 5, 0, 0.0, 0}, x),
                    std::invalid_argument);
    CHECK_THROWS_AS(hyperplane_residual(p, {HyperplaneFamily::N, 0, 1, 0.0, 0}, x),
                    std::invalid_argument);
    CHECK_THROWS_AS(hyperplane_residual(p, {HyperplaneFamily::M, 1, 1, 0.0, 0}, x),
                    std::invalid_argument);
    CHECK_THROWS_AS(hyperplane_residual(p, {HyperplaneFamily::MBeta, 5, 1, 1.5, 0}, x),
                    std::invalid_argument);
    CHECK_THROWS_AS(hyperplane_residual(p, {HyperplaneFamily::Nested, 0, 1, 0.0, 3}, x),
                    std::invalid_argument);
}

TEST_CASE("geometry suite passes on a desk grid") {
    for (const CheckResult& row : geometry_suite(4, 10)) {
        INFO(row.name);
        CHECK(row.failed == 0);
        CHECK(row.passed > 0);
    }
}

TEST_CASE("matrix suite passes on a desk grid") {
    for (const CheckResult& row : matrix_suite(4, 10)) {
        INFO(row.name);
        CHECK(row.failed == 0);
        CHECK(row.passed > 0);
    }
}
