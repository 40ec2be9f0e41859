#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace tocsyn {

/**
 * Signal comparison metrics: sub-step lag estimation by quadratic
 * interpolation of the cross-correlation peak, RMS amplitude ratios and
 * residual RMS, all over whole-period steady-state windows.
 */

struct AnalysisWindow {
    std::size_t start;
    std::size_t len;
};

// The largest whole number of periods that fits in the final 80% of the
// record, anchored at the end. Whole-period windows keep the RMS and
// correlation estimates free of partial-cycle bias.
inline AnalysisWindow steady_window(std::size_t n, double period_samples) {
    if (!(period_samples > 0.0)) throw std::invalid_argument("steady_window: period must be positive");
    const std::size_t start0 = n / 5;
    const double avail = static_cast<double>(n - start0);
    const double periods = std::floor(avail / period_samples);
    if (periods < 1.0)
        throw std::invalid_argument("steady_window: fewer than one period after the transient cut");
    const auto len = static_cast<std::size_t>(std::llround(periods * period_samples));
    return {n - len, len};
}

/// Root mean square over a window.
inline double rms(std::span<const double> x, AnalysisWindow w) {
    if (w.start + w.len > x.size() || w.len == 0)
        throw std::invalid_argument("rms: window out of range");
    double acc = 0.0;
    for (std::size_t k = w.start; k < w.start + w.len; ++k) acc += x[k] * x[k];
    return std::sqrt(acc / static_cast<double>(w.len));
}

/// RMS(x) / RMS(ref) over the same window.
inline double amplitude_ratio(std::span<const double> x, std::span<const double> ref,
                              AnalysisWindow w) {
    const double denom = rms(ref, w);
    if (denom == 0.0) throw std::invalid_argument("amplitude_ratio: reference RMS is zero");
    return rms(x, w) / denom;
}

/// RMS of x - ref over a window.
inline double residual_rms(std::span<const double> x, std::span<const double> ref,
                           AnalysisWindow w) {
    if (x.size() != ref.size()) throw std::invalid_argument("residual_rms: length mismatch");
    if (w.start + w.len > x.size() || w.len == 0)
        throw std::invalid_argument("residual_rms: window out of range");
    double acc = 0.0;
    for (std::size_t k = w.start; k < w.start + w.len; ++k) {
        const double d = x[k] - ref[k];
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(w.len));
}

// Lag of x behind ref in steps (positive = x is delayed), estimated as
// the integer argmax of the cross-correlation over [-max_lag, max_lag]
// refined to sub-step resolution by quadratic interpolation of the peak.
// The x-side window is fixed across lags so the peak location is
// comparison-consistent; it needs max_lag of slack on both sides.
inline double estimate_lag_steps(std::span<const double> x, std::span<const double> ref,
                                 AnalysisWindow w, int max_lag) {
    if (x.size() != ref.size()) throw std::invalid_argument("estimate_lag_steps: length mismatch");
    if (max_lag < 1) throw std::invalid_argument("estimate_lag_steps: max_lag must be >= 1");
    const std::size_t lag = static_cast<std::size_t>(max_lag) + 1;  // +1 for the refinement neighbors
    if (w.start < 2 * lag || w.start + w.len > x.size() || w.len < 2 * lag)
        throw std::invalid_argument("estimate_lag_steps: window leaves no slack for max_lag");
    // shift left by the slack instead of shrinking: keeps the correlation
    // span at the full (whole-period) window length
    const std::size_t lo = w.start - lag;
    const std::size_t hi = w.start + w.len - lag;
    // Hann taper on the x side: without it a partial cycle at the window
    // edges biases the correlation peak by a sizable fraction of a step.
    std::vector<double> taper(hi - lo);
    constexpr double two_pi = 6.283185307179586476925286766559;
    for (std::size_t i = 0; i < taper.size(); ++i)
        taper[i] = 0.5 - 0.5 * std::cos(two_pi * static_cast<double>(i) /
                                        static_cast<double>(taper.size() - 1));
    auto corr = [&](int ell) {
        double acc = 0.0;
        for (std::size_t k = lo; k < hi; ++k)
            acc += taper[k - lo] * x[k] *
                   ref[static_cast<std::size_t>(static_cast<long long>(k) - ell)];
        return acc;
    };
    int best = -max_lag;
    double best_val = corr(best);
    for (int ell = -max_lag + 1; ell <= max_lag; ++ell) {
        const double val = corr(ell);
        if (val > best_val) {
            best_val = val;
            best = ell;
        }
    }
    const double c0 = best_val;
    const double cm = corr(best - 1);
    const double cp = corr(best + 1);
    const double denom = cm - 2.0 * c0 + cp;
    if (denom >= 0.0) return static_cast<double>(best);  // flat or degenerate peak
    const double delta = 0.5 * (cm - cp) / denom;
    return static_cast<double>(best) + delta;
}

struct LinearFit {
    double slope;
    double intercept;
    double r_squared;
};

/// Ordinary least squares of y on x.
inline LinearFit linear_fit(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("linear_fit: need at least two paired samples");
    const double n = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
        syy += ys[i] * ys[i];
    }
    const double vx = sxx - sx * sx / n;
    const double vy = syy - sy * sy / n;
    const double cov = sxy - sx * sy / n;
    if (vx == 0.0) throw std::invalid_argument("linear_fit: degenerate abscissa");
    const double slope = cov / vx;
    const double intercept = (sy - slope * sx) / n;
    const double r2 = (vy == 0.0) ? 1.0 : (cov * cov) / (vx * vy);
    return {slope, intercept, r2};
}

}  // namespace tocsyn
