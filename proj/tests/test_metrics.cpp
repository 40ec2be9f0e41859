#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "tocsyn/metrics.hpp"

using namespace tocsyn;

namespace {

constexpr double pi = 3.141592653589793238462643383279502884;

std::vector<double> sinusoid(std::size_t n, double steps_per_cycle, double delay_steps,
                             double amplitude) {
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k)
        out[k] = amplitude * std::sin(2.0 * pi * (static_cast<double>(k) - delay_steps) /
                                      steps_per_cycle);
    return out;
}

}  // namespace

TEST_CASE("steady_window trims the final 80% to whole periods") {
    const AnalysisWindow w = steady_window(10000, 1000.0);
    CHECK(w.len == 8000);
    CHECK(w.start == 2000);
    const AnalysisWindow odd = steady_window(10000, 999.7);
    CHECK(odd.len == static_cast<std::size_t>(std::llround(8.0 * 999.7)));
    CHECK(odd.start + odd.len == 10000);
    CHECK_THROWS_AS(steady_window(100, 1000.0), std::invalid_argument);
}

TEST_CASE("rms and amplitude_ratio on known signals") {
    const std::vector<double> ref = sinusoid(10000, 500.0, 0.0, 2.0);
    const std::vector<double> scaled = sinusoid(10000, 500.0, 0.0, 1.7);
    const AnalysisWindow w = steady_window(ref.size(), 500.0);
    CHECK(rms(ref, w) == doctest::Approx(2.0 / std::sqrt(2.0)).epsilon(1e-9));
    CHECK(amplitude_ratio(scaled, ref, w) == doctest::Approx(0.85).epsilon(1e-9));
    CHECK(residual_rms(ref, ref, w) == 0.0);
}

TEST_CASE("lag estimator resolves integer and fractional delays") {
    const double cycle = 400.0;
    const std::vector<double> ref = sinusoid(20000, cycle, 0.0, 1.0);
    const AnalysisWindow w = steady_window(ref.size(), cycle);
    for (double delay : {0.0, 3.0, 17.25, 40.5, -2.75}) {
        const std::vector<double> x = sinusoid(20000, cycle, delay, 0.8);
        const double est = estimate_lag_steps(x, ref, w, 64);
        CHECK(std::abs(est - delay) < 1e-3);
    }
}

TEST_CASE("lag estimator guards its window slack") {
    const std::vector<double> ref = sinusoid(1000, 100.0, 0.0, 1.0);
    const AnalysisWindow w{10, 980};
    CHECK_THROWS_AS(estimate_lag_steps(ref, ref, w, 50), std::invalid_argument);
}

TEST_CASE("linear_fit recovers slope, intercept and R^2") {
    const std::vector<double> xs{10.0, 20.0, 30.0, 40.0};
    std::vector<double> ys(4);
    for (std::size_t i = 0; i < 4; ++i) ys[i] = 3.0 * xs[i] - 2.0;
    const LinearFit fit = linear_fit(xs, ys);
    CHECK(fit.slope == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(-2.0).epsilon(1e-9));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    const std::vector<double> noisy{28.0, 62.0, 88.0, 121.0};
    CHECK(linear_fit(xs, noisy).r_squared > 0.99);
    CHECK_THROWS_AS(linear_fit(std::vector<double>{1.0}, std::vector<double>{1.0}),
                    std::invalid_argument);
}
