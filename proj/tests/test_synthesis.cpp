#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "tocsyn/geometry.hpp"
#include "tocsyn/plant.hpp"
#include "tocsyn/synthesis.hpp"

using namespace tocsyn;

namespace {

double uniform01(std::mt19937_64& eng) { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }
double uniform(std::mt19937_64& eng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(eng);
}

// Independent second-order route: start from the closed quadratic root
// of k'(k'-1) = 2|y| / (h^2 r), then take the smallest integer k >= 2
// whose product k(k-1) covers the target (same boundary slack as the
// solver contract).
std::int64_t quadratic_k_oracle(double y, double h, double r) {
    const double target = 2.0 * std::abs(y) / (h * h * r);
    const double slack = 1.0 + 4.0 * std::numeric_limits<double>::epsilon();
    const double root = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * target));
    auto k = std::max<std::int64_t>(2, static_cast<std::int64_t>(std::floor(root)) - 1);
    while (static_cast<double>(k) * static_cast<double>(k - 1) * slack < target) ++k;
    return k;
}

}  // namespace

TEST_CASE("SystemParams invariants") {
    CHECK_THROWS_AS(SystemParams(1, 0.1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(SystemParams(2, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(SystemParams(2, 0.1, -1.0), std::invalid_argument);
}

TEST_CASE("sign exact case split") {
    CHECK(sign(3.5) == 1);
    CHECK(sign(0.0) == 0);
    CHECK(sign(-0.0) == 0);
    CHECK(sign(-1e-300) == -1);
}

TEST_CASE("sat branches and bounds") {
    CHECK(sat(0.5, 1.0) == 0.5);
    CHECK(sat(-7.0, 2.0) == -1.0);
    CHECK(sat(2.0, 2.0) == 1.0);  // boundary takes the x/delta branch
    CHECK_THROWS_AS(sat(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(sat(1.0, -1.0), std::invalid_argument);
    std::mt19937_64 eng(7);
    for (int i = 0; i < 1000; ++i) {
        const double x = uniform(eng, -100.0, 100.0);
        const double d = uniform(eng, 1e-6, 10.0);
        CHECK(std::abs(sat(x, d)) <= 1.0);
    }
}

TEST_CASE("y_value weighted sums") {
    const SystemParams p2(2, 1.0, 1.0);
    CHECK(y_value(p2, State{3.0, 4.0}) == 7.0);
    const SystemParams p3(3, 0.5, 1.0);
    CHECK(y_value(p3, State{1.0, 2.0, 4.0}) == 4.0);
    CHECK(y_value(p3, State{0.0, 0.0, 0.0}) == 0.0);
    CHECK_THROWS_AS(y_value(p3, State{1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("z_value weighted sums and range") {
    const SystemParams p2(2, 1.0, 1.0);
    CHECK(z_value(p2, 3, State{1.0, 1.0}) == 4.0);
    const SystemParams p3(3, 1.0, 1.0);
    CHECK(z_value(p3, 2, State{1.0, 1.0, 1.0}) == 4.0);
    // k = m-1 reduces to y_value
    const State x{0.3, -1.7, 2.9};
    CHECK(z_value(p3, 2, x) == y_value(p3, x));
    CHECK_THROWS_AS(z_value(p3, 1, x), std::invalid_argument);
}

TEST_CASE("solve_k frozen examples") {
    CHECK(solve_k(SystemParams(2, 1.0, 1.0), 3.0) == 3);
    CHECK(solve_k(SystemParams(3, 1.0, 1.0), 5.0) == 5);
    CHECK(solve_k(SystemParams(2, 1.0, 1.0), 1.0 + 1e-12) == 3);
    CHECK_THROWS_AS(solve_k(SystemParams(2, 1.0, 1.0), 1.0), std::domain_error);
    CHECK_THROWS_AS(solve_k(SystemParams(2, 1.0, 1.0), -0.5), std::domain_error);
}

TEST_CASE("solve_k matches the quadratic closed form at m = 2") {
    std::mt19937_64 eng(11);
    const double h = 0.05, r = 2.0;
    const SystemParams p(2, h, r);
    for (int i = 0; i < 20000; ++i) {
        const double mag = std::pow(10.0, uniform(eng, -10.0, 8.0));
        const double y = (uniform01(eng) < 0.5 ? -1.0 : 1.0) * h * h * r * (1.0 + mag);
        CHECK(solve_k(p, y) == quadratic_k_oracle(y, h, r));
    }
}

TEST_CASE("solve_k bracket property across orders") {
    std::mt19937_64 eng(13);
    const double slack = 1.0 + 4.0 * std::numeric_limits<double>::epsilon();
    for (int m = 2; m <= 8; ++m) {
        const SystemParams p(m, 0.0005, 1.0);
        const double hm_r = pow_step(p.h, m) * p.r;
        for (int i = 0; i < 3000; ++i) {
            const double y = (uniform01(eng) < 0.5 ? -1.0 : 1.0) * hm_r *
                             (1.0 + std::pow(10.0, uniform(eng, -8.0, 7.0)));
            const std::int64_t k = solve_k(p, y);
            const double target = static_cast<double>(factorial(m)) * std::abs(y) / hm_r;
            CHECK(k >= m);
            CHECK(falling_factorial(static_cast<double>(k - 1), m) < target);
            CHECK(target <= falling_factorial(static_cast<double>(k), m) * slack);
        }
    }
}

TEST_CASE("classify splits regimes on the printed boundary") {
    const SystemParams p(3, 0.5, 2.0);
    const double bound = pow_step(p.h, 3) * p.r;  // 0.25
    CHECK(classify(p, State{bound, 0.0, 0.0}).regime == Regime::Linear);  // |y| = h^m r is linear
    const auto d = classify(p, State{bound * 1.0000001, 0.0, 0.0});
    CHECK(d.regime == Regime::Nonlinear);
    CHECK(d.k >= 3);
    CHECK(d.s == 1);
}

TEST_CASE("fsun frozen examples") {
    // from a_{-1} = (-h^2 r, h r) one bang-bang step reaches the origin
    const double h = 0.25, r = 3.0;
    const double u = fsun(-h * h * r, h * r, r, h);
    CHECK(u == doctest::Approx(-r).epsilon(1e-15));
    const SystemParams p(2, h, r);
    const State next = plant_step(p, State{-h * h * r, h * r}, u);
    CHECK(std::abs(next[0]) <= 1e-15 * h * h * r);
    CHECK(std::abs(next[1]) <= 1e-15 * h * r);

    CHECK(fsun(0.0, 0.0, 1.0, 1.0) == 0.0);
    // y = 3 -> k = 3, a = 2, saturates: u = -1
    CHECK(fsun(3.0, 0.0, 1.0, 1.0) == -1.0);
}

TEST_CASE("fxiao frozen examples") {
    const double h = 1.0, r = 1.0;
    const SystemParams p3(3, h, r);
    // a_1 with s = +1 for odd m: one step lands on the origin under u = -r
    const State a1{h * h * h * r, -h * h * r, h * r};
    const double u = fxiao(a1, p3);
    CHECK(u == doctest::Approx(-r).epsilon(1e-15));
    const State next = plant_step(p3, a1, u);
    for (double c : next) CHECK(std::abs(c) <= 1e-12);

    CHECK(fxiao(State{0.0, 0.0, 0.0}, p3) == 0.0);
    CHECK(fxiao(State{3.0, 0.0}, SystemParams(2, 1.0, 1.0)) == fsun(3.0, 0.0, 1.0, 1.0));
    CHECK_THROWS_AS(fxiao(State{1.0, 2.0}, p3), std::invalid_argument);
}

TEST_CASE("fxiao_linear frozen examples") {
    CHECK(fxiao_linear(State{1.0, 1.0}, SystemParams(2, 1.0, 1.0)) == -3.0);
    CHECK(fxiao_linear(State{0.0, 0.0, 0.0}, SystemParams(3, 1.0, 1.0)) == 0.0);
    CHECK(fxiao_linear(State{1.0, 0.0, 0.0}, SystemParams(3, 1.0, 1.0)) == -1.0);
}

TEST_CASE("fxiao linear branch equals the unbounded variant before saturation") {
    std::mt19937_64 eng(17);
    const SystemParams p(3, 0.1, 1e9);  // huge r keeps everything linear and unsaturated
    for (int i = 0; i < 2000; ++i) {
        const State x{uniform(eng, -1.0, 1.0), uniform(eng, -1.0, 1.0), uniform(eng, -1.0, 1.0)};
        const double direct = fxiao_linear(x, p);
        const double through_sat = fxiao(x, p);
        CHECK(through_sat == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("fxiao saturation bound holds everywhere") {
    std::mt19937_64 eng(19);
    for (int m = 2; m <= 6; ++m) {
        const SystemParams p(m, 0.02, 1.5);
        for (int i = 0; i < 4000; ++i) {
            State x(m);
            const double scale = std::pow(10.0, uniform(eng, -5.0, 3.0));
            for (auto& c : x) c = uniform(eng, -scale, scale);
            CHECK(std::abs(fxiao(x, p)) <= p.r);
        }
    }
}

TEST_CASE("fxiao at m = 2 is bit-identical to fsun on a dense sample") {
    std::mt19937_64 eng(23);
    const SystemParams p(2, 0.05, 1.0);
    int exact = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        double x2 = uniform(eng, -5.0, 5.0);
        double x1;
        if (i % 2 == 0) {
            x1 = uniform(eng, -5.0, 5.0);
        } else {
            const double band = 2.0 * pow_step(p.h, 2) * p.r;
            x1 = uniform(eng, -band, band) - p.h * x2;
        }
        const double a = fxiao(State{x1, x2}, p);
        const double b = fsun(x1, x2, p.r, p.h);
        CHECK(a == b);
        exact += (a == b);
    }
    CHECK(exact == n);
}

TEST_CASE("fxiao at vertices returns the bang-bang value") {
    for (double h : {1.0, 0.01, 0.0005})
        for (int m = 2; m <= 6; ++m) {
            const SystemParams p(m, h, 1.0);
            const double parity_m = (m % 2 == 0) ? 1.0 : -1.0;
            for (VertexFamily f : {VertexFamily::APlus, VertexFamily::AMinus})
                for (std::int64_t k = 1; k <= 20; ++k) {
                    const State a = vertex(p, f, k).coords;
                    const double expect = parity_m * p.r * vertex_sign(f, m);
                    CHECK(fxiao(a, p) == doctest::Approx(expect).epsilon(1e-12));
                }
        }
}
