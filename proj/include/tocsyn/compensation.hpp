#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "tocsyn/combinatorics.hpp"
#include "tocsyn/tracking.hpp"

namespace tocsyn {

/**
 * Predictive compensation of the phase delay and amplitude attenuation
 * the filter factor introduces. Channel i (0-based, i <= m-2) applies a
 * binomial lead to x_{i+1}, realizing each differential through the next
 * state channels:
 *
 *   xhat_{i+1} = sum_{mu=0}^{m-1-i} C(m-1-i, mu) (m n0 h / (m-1-i))^mu x_{i+1+mu}
 *
 * The last channel x_m has no higher channel and stays uncompensated, so
 * there are always exactly m-1 compensated channels.
 */

/// Compensated values of channels x_1..x_{m-1} at one instant.
inline std::vector<double> compensate(const TrackerConfig& c, std::span<const double> x) {
    detail::require_state_size(x, c.params, "compensate");
    const int m = c.params.m;
    std::vector<double> out(m - 1);
    for (int i = 0; i + 1 < m; ++i) {
        const int p = m - 1 - i;
        const double lead = static_cast<double>(m) * c.n0 * c.params.h / static_cast<double>(p);
        double acc = 0.0;
        double factor = 1.0;
        for (int mu = 0; mu <= p; ++mu) {
            acc += binom_real(p, mu) * factor * x[i + mu];
            factor *= lead;
        }
        out[i] = acc;
    }
    return out;
}

// Compensated channels of a whole run; xhat[i][k] compensates
// states[k][i], i = 0..m-2.
struct CompensatedTrajectory {
    std::vector<double> t;
    std::vector<std::vector<double>> xhat;
};

inline CompensatedTrajectory compensate_trajectory(const TrackerConfig& c, const Trajectory& traj) {
    if (traj.size() == 0) throw std::invalid_argument("compensate_trajectory: trajectory is empty");
    CompensatedTrajectory out;
    out.t = traj.t;
    out.xhat.assign(c.params.m - 1, std::vector<double>(traj.size()));
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const std::vector<double> values = compensate(c, traj.states[k]);
        for (int i = 0; i + 1 < c.params.m; ++i) out.xhat[i][k] = values[i];
    }
    return out;
}

}  // namespace tocsyn
