#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "tocsyn/compensation.hpp"
#include "tocsyn/csv.hpp"
#include "tocsyn/metrics.hpp"
#include "tocsyn/signal.hpp"
#include "tocsyn/tracking.hpp"

namespace tocsyn {

/**
 * Scenario = one closed-loop signal-extraction experiment: chain order,
 * steps, bound, filter factor and the test signal. Loadable from a JSON
 * config; the run engine here is shared by the CLI and the acceptance
 * suite, so both measure through exactly the same path.
 */

struct Scenario {
    int m = 3;
    double h = 0.0005;
    double r = 1.0;
    double n0 = 10.0;
    double vm = 2.0;
    double omega = 6.28;
    double gsm = 0.0;
    double noise_dbw = -20.0;
    std::uint64_t seed = 1;
    std::size_t length = 0;
    std::string out_dir = "out";

    SystemParams system_params() const { return SystemParams(m, h, r); }
    TrackerConfig tracker_config() const { return TrackerConfig(system_params(), n0); }
    SignalSpec signal_spec() const { return SignalSpec(vm, omega, gsm, noise_dbw, seed, h, length); }

    void validate() const {
        (void)tracker_config();
        (void)signal_spec();
    }
};

inline Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_scenario: cannot open " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("load_scenario: " + path.string() + ": " + e.what());
    }
    Scenario s;
    s.m = j.at("m").get<int>();
    s.h = j.at("h").get<double>();
    s.r = j.at("r").get<double>();
    s.n0 = j.at("n0").get<double>();
    const auto& sig = j.at("signal");
    s.vm = sig.at("vm").get<double>();
    s.omega = sig.at("omega").get<double>();
    s.gsm = sig.at("gsm").get<double>();
    s.noise_dbw = sig.at("noise_dbw").get<double>();
    s.seed = sig.at("seed").get<std::uint64_t>();
    if (j.contains("length"))
        s.length = j.at("length").get<std::size_t>();
    else if (j.contains("duration"))
        s.length = static_cast<std::size_t>(std::llround(j.at("duration").get<double>() / s.h));
    else
        throw std::runtime_error("load_scenario: " + path.string() +
                                 ": need either \"length\" or \"duration\"");
    if (j.contains("out_dir")) s.out_dir = j.at("out_dir").get<std::string>();
    s.validate();
    return s;
}

// Per-channel comparison against the clean references: series "x" for the
// raw channels x_1..x_m, series "xhat" for the compensated x^_1..x^_{m-1}.
struct ChannelMetrics {
    std::string series;
    int channel = 0;  // 1-based
    double lag_steps = 0.0;
    double amplitude_ratio = 0.0;
    double residual_rms = 0.0;
};

struct ScenarioResult {
    GeneratedSignal signal;
    Trajectory trajectory;
    CompensatedTrajectory compensated;
    std::vector<ChannelMetrics> metrics;
};

namespace detail {

inline std::vector<double> channel_series(const Trajectory& traj, int channel_one_based) {
    std::vector<double> out(traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k) out[k] = traj.states[k][channel_one_based - 1];
    return out;
}

}  // namespace detail

inline ScenarioResult run_scenario(const Scenario& sc) {
    if (sc.length < 8) throw std::invalid_argument("run_scenario: scenario too short");
    ScenarioResult res;
    res.signal = generate(sc.signal_spec(), sc.m);
    const TrackerConfig cfg = sc.tracker_config();
    res.trajectory = run(cfg, res.signal.v, default_initial_state(cfg, res.signal.v[0]));
    res.compensated = compensate_trajectory(cfg, res.trajectory);

    const double period_samples = 2.0 * 3.141592653589793238462643383279502884 / (sc.omega * sc.h);
    const AnalysisWindow w = steady_window(sc.length, period_samples);
    const int raw_lag_cap = static_cast<int>(std::ceil(1.5 * sc.m * sc.n0)) + 16;
    const int max_lag = std::min<int>(raw_lag_cap, static_cast<int>(w.start) - 2);
    if (max_lag < 1)
        throw std::invalid_argument("run_scenario: record too short to search for the expected lag");

    for (int i = 1; i <= sc.m; ++i) {
        const std::vector<double> xs = detail::channel_series(res.trajectory, i);
        const std::vector<double>& ref = res.signal.clean[i - 1];
        ChannelMetrics cm;
        cm.series = "x";
        cm.channel = i;
        cm.lag_steps = estimate_lag_steps(xs, ref, w, max_lag);
        cm.amplitude_ratio = amplitude_ratio(xs, ref, w);
        cm.residual_rms = residual_rms(xs, ref, w);
        res.metrics.push_back(cm);
    }
    for (int i = 1; i <= sc.m - 1; ++i) {
        const std::vector<double>& xs = res.compensated.xhat[i - 1];
        const std::vector<double>& ref = res.signal.clean[i - 1];
        ChannelMetrics cm;
        cm.series = "xhat";
        cm.channel = i;
        cm.lag_steps = estimate_lag_steps(xs, ref, w, max_lag);
        cm.amplitude_ratio = amplitude_ratio(xs, ref, w);
        cm.residual_rms = residual_rms(xs, ref, w);
        res.metrics.push_back(cm);
    }
    return res;
}

// Trajectory CSV: t, v, clean refs v1..vm, states x1..xm, compensated
// xhat1..xhat(m-1), control u. One row per sample.
inline std::string trajectory_csv(const Scenario& sc, const ScenarioResult& res) {
    std::string out = "t,v";
    for (int i = 1; i <= sc.m; ++i) out += ",v" + std::to_string(i);
    for (int i = 1; i <= sc.m; ++i) out += ",x" + std::to_string(i);
    for (int i = 1; i <= sc.m - 1; ++i) out += ",xhat" + std::to_string(i);
    out += ",u\n";
    for (std::size_t k = 0; k < res.trajectory.size(); ++k) {
        out += format_number(res.trajectory.t[k]);
        out += ',';
        out += format_number(res.trajectory.v[k]);
        for (int i = 0; i < sc.m; ++i) {
            out += ',';
            out += format_number(res.signal.clean[i][k]);
        }
        for (int i = 0; i < sc.m; ++i) {
            out += ',';
            out += format_number(res.trajectory.states[k][i]);
        }
        for (int i = 0; i + 1 < sc.m; ++i) {
            out += ',';
            out += format_number(res.compensated.xhat[i][k]);
        }
        out += ',';
        out += format_number(res.trajectory.u[k]);
        out += '\n';
    }
    return out;
}

inline std::string metrics_csv(const std::vector<ChannelMetrics>& metrics) {
    std::string out = "series,channel,lag_steps,amplitude_ratio,residual_rms\n";
    for (const ChannelMetrics& cm : metrics) {
        out += cm.series;
        out += ',';
        out += std::to_string(cm.channel);
        out += ',';
        out += format_number(cm.lag_steps);
        out += ',';
        out += format_number(cm.amplitude_ratio);
        out += ',';
        out += format_number(cm.residual_rms);
        out += '\n';
    }
    return out;
}

// Sweep rows: one line per (n0, gsm) combination, channels flattened.
inline std::string sweep_csv(const Scenario& base,
                             const std::vector<std::pair<Scenario, ScenarioResult>>& runs) {
    std::string out = "n0,gsm";
    for (int i = 1; i <= base.m; ++i) {
        const std::string tag = "x" + std::to_string(i);
        out += "," + tag + "_lag_steps," + tag + "_amplitude_ratio," + tag + "_residual_rms";
    }
    for (int i = 1; i <= base.m - 1; ++i) {
        const std::string tag = "xhat" + std::to_string(i);
        out += "," + tag + "_lag_steps," + tag + "_amplitude_ratio," + tag + "_residual_rms";
    }
    out += '\n';
    for (const auto& [sc, res] : runs) {
        out += format_number(sc.n0);
        out += ',';
        out += format_number(sc.gsm);
        for (const ChannelMetrics& cm : res.metrics) {
            out += ',';
            out += format_number(cm.lag_steps);
            out += ',';
            out += format_number(cm.amplitude_ratio);
            out += ',';
            out += format_number(cm.residual_rms);
        }
        out += '\n';
    }
    return out;
}

}  // namespace tocsyn
