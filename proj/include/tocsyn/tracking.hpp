#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tocsyn/plant.hpp"
#include "tocsyn/synthesis.hpp"

namespace tocsyn {

/**
 * Closed-loop tracking differentiator: the plant driven by the synthesis
 * function evaluated on the error-shifted state with a stretched step
 * h0 = n0 h. The two time bases are deliberately distinct: the synthesis
 * function sees h0, the plant always advances with the true step h.
 * x_1 tracks the reference and x_2..x_m approximate its derivatives.
 */

struct TrackerConfig {
    SystemParams params;
    double n0;  // filter factor; n0 = 1 disables filtering (pure regulation)

    TrackerConfig(SystemParams p, double filter_factor) : params(p), n0(filter_factor) {
        if (!(n0 >= 1.0)) throw std::invalid_argument("TrackerConfig: n0 must be >= 1");
    }

    /// Parameters the synthesis function sees: step h0 = n0 h.
    SystemParams filter_params() const { return SystemParams(params.m, n0 * params.h, params.r); }
};

// Time-indexed record of one closed-loop run. All sequences have equal
// length; states[k] is the state before control u[k] is applied.
struct Trajectory {
    std::vector<double> t;
    std::vector<double> v;
    std::vector<State> states;
    std::vector<double> u;

    std::size_t size() const { return t.size(); }
};

struct TrackStepResult {
    State state;
    double u;
};

/// One loop iteration: u from the error-shifted state at step h0, then a true-h plant step.
inline TrackStepResult track_step(const TrackerConfig& c, std::span<const double> x,
                                  double v_sample) {
    detail::require_state_size(x, c.params, "track_step");
    State shifted(x.begin(), x.end());
    shifted[0] = x[0] - v_sample;
    const double u = fxiao(shifted, c.filter_params());
    return {plant_step(c.params, x, u), u};
}

/// Folds track_step over the sampled reference; trajectory length = len(v).
inline Trajectory run(const TrackerConfig& c, std::span<const double> v, const State& x0) {
    if (v.empty()) throw std::invalid_argument("run: reference signal is empty");
    detail::require_state_size(x0, c.params, "run");
    Trajectory traj;
    traj.t.reserve(v.size());
    traj.v.reserve(v.size());
    traj.states.reserve(v.size());
    traj.u.reserve(v.size());
    State x = x0;
    for (std::size_t k = 0; k < v.size(); ++k) {
        traj.t.push_back(static_cast<double>(k) * c.params.h);
        traj.v.push_back(v[k]);
        TrackStepResult step = track_step(c, x, v[k]);
        traj.u.push_back(step.u);
        traj.states.push_back(std::move(x));
        x = std::move(step.state);
    }
    return traj;
}

/// Default initial state (v0, 0, ..., 0): start on the reference to shorten transients.
inline State default_initial_state(const TrackerConfig& c, double v0) {
    State x(c.params.m, 0.0);
    x[0] = v0;
    return x;
}

struct FrequencyResponse {
    double amplitude_ratio;
    double phase;  // radians; negative = lag
};

// Analytic steady-state response of the x_1 channel to a sinusoid of
// angular frequency omega: magnitude (1 + (n0 h w)^2)^(-m/2), phase
// -m atan(n0 h w). The verification reference for measured runs.
inline FrequencyResponse steady_state_transfer(const TrackerConfig& c, double omega) {
    if (omega < 0.0) throw std::invalid_argument("steady_state_transfer: omega must be >= 0");
    const double w = c.n0 * c.params.h * omega;
    const double amplitude = std::pow(1.0 + w * w, -0.5 * static_cast<double>(c.params.m));
    const double phase = -static_cast<double>(c.params.m) * std::atan(w);
    return {amplitude, phase};
}

}  // namespace tocsyn
