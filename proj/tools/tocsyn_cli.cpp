// Command-line harness: `verify` runs the theorem suites, `run` executes
// one scenario and writes its trajectory/metrics CSVs, `sweep` aggregates
// metrics over filter-factor and noise-amplitude grids.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tocsyn/scenario.hpp"
#include "tocsyn/verify.hpp"

namespace {

int print_results(const std::vector<tocsyn::CheckResult>& rows) {
    int failures = 0;
    for (const auto& row : rows) {
        std::printf("%-34s %10lld pass %8lld fail\n", row.name.c_str(), row.passed, row.failed);
        if (row.failed > 0) ++failures;
    }
    return failures;
}

int cmd_verify(int max_m, int max_k, long long samples, std::uint64_t seed) {
    int failures = 0;
    std::printf("identity suite (m <= %d, k <= %d)\n", max_m, max_k);
    failures += print_results(tocsyn::identity_suite(max_m, max_k));
    std::printf("transition-matrix suite\n");
    failures += print_results(tocsyn::matrix_suite(std::min(max_m, 6), std::min(max_k, 20)));
    std::printf("geometry suite\n");
    failures += print_results(tocsyn::geometry_suite(std::min(max_m, 6), std::min(max_k, 20)));
    std::printf("kernel suite (%lld samples)\n", samples);
    failures += print_results(tocsyn::kernel_suite(max_m, max_k, samples, seed));
    if (failures > 0) {
        std::printf("FAIL: %d checks reported failures\n", failures);
        return 1;
    }
    std::printf("all checks passed\n");
    return 0;
}

void print_metrics_summary(const tocsyn::ScenarioResult& res) {
    for (const auto& cm : res.metrics)
        std::printf("  %-5s %d  lag %9.3f steps   amplitude %.6f   residual rms %.6g\n",
                    cm.series.c_str(), cm.channel, cm.lag_steps, cm.amplitude_ratio,
                    cm.residual_rms);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"time-optimal integrator-chain synthesis toolkit"};
    app.set_help_flag("--help", "print help");  // frees -h / --h for the step length
    app.require_subcommand(1);

    auto* verify = app.add_subcommand("verify", "run the identity/matrix/geometry/kernel suites");
    int max_m = 8;
    int max_k = 30;
    long long samples = 100000;
    std::uint64_t verify_seed = 1;
    verify->add_option("--max-m", max_m, "largest chain order to check")->check(CLI::Range(2, 8));
    verify->add_option("--max-k", max_k, "largest step index to check")->check(CLI::Range(1, 50));
    verify->add_option("--samples", samples, "random sample count for the kernel suite")
        ->check(CLI::PositiveNumber);
    verify->add_option("--seed", verify_seed, "seed for the sampled kernel checks");

    auto* runc = app.add_subcommand("run", "run one scenario and write trajectory + metrics CSVs");
    std::string run_config;
    runc->add_option("--config", run_config, "scenario config (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    int o_m = 0;
    double o_h = 0, o_r = 0, o_n0 = 0, o_vm = 0, o_omega = 0, o_gsm = 0, o_dbw = 0, o_duration = 0;
    std::uint64_t o_seed = 0;
    std::size_t o_length = 0;
    std::string o_out;
    runc->add_option("--m", o_m, "chain order override")->check(CLI::Range(2, 8));
    runc->add_option("--h", o_h, "step length override [s]");
    runc->add_option("--r", o_r, "control bound override");
    runc->add_option("--n0", o_n0, "filter factor override");
    runc->add_option("--vm", o_vm, "sinusoid amplitude override");
    runc->add_option("--omega", o_omega, "angular frequency override [rad/s]");
    runc->add_option("--gsm", o_gsm, "relative noise amplitude override");
    runc->add_option("--noise-dbw", o_dbw, "noise power override [dBW]");
    runc->add_option("--seed", o_seed, "RNG seed override");
    runc->add_option("--length", o_length, "sample count override");
    runc->add_option("--duration", o_duration, "duration override [s]");
    runc->add_option("--out-dir", o_out, "output directory override");

    auto* sweep = app.add_subcommand("sweep", "run a scenario grid and write aggregated metrics");
    std::string sweep_config;
    sweep->add_option("--config", sweep_config, "base scenario config (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    std::vector<double> n0_values;
    std::vector<double> gsm_values;
    sweep->add_option("--n0-values", n0_values, "filter factors to sweep")->delimiter(',');
    sweep->add_option("--gsm-values", gsm_values, "noise amplitudes to sweep")->delimiter(',');
    std::string sweep_out;
    sweep->add_option("--out-dir", sweep_out, "output directory override");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*verify) return cmd_verify(max_m, max_k, samples, verify_seed);

        if (*runc) {
            tocsyn::Scenario sc = tocsyn::load_scenario(run_config);
            if (runc->count("--m")) sc.m = o_m;
            if (runc->count("--h")) sc.h = o_h;
            if (runc->count("--r")) sc.r = o_r;
            if (runc->count("--n0")) sc.n0 = o_n0;
            if (runc->count("--vm")) sc.vm = o_vm;
            if (runc->count("--omega")) sc.omega = o_omega;
            if (runc->count("--gsm")) sc.gsm = o_gsm;
            if (runc->count("--noise-dbw")) sc.noise_dbw = o_dbw;
            if (runc->count("--seed")) sc.seed = o_seed;
            if (runc->count("--length")) sc.length = o_length;
            if (runc->count("--duration"))
                sc.length = static_cast<std::size_t>(std::llround(o_duration / sc.h));
            if (runc->count("--out-dir")) sc.out_dir = o_out;
            sc.validate();

            const tocsyn::ScenarioResult res = tocsyn::run_scenario(sc);
            const std::filesystem::path dir(sc.out_dir);
            tocsyn::write_file_atomic(dir / "trajectory.csv", tocsyn::trajectory_csv(sc, res));
            tocsyn::write_file_atomic(dir / "metrics.csv", tocsyn::metrics_csv(res.metrics));
            std::printf("wrote %s and %s\n", (dir / "trajectory.csv").c_str(),
                        (dir / "metrics.csv").c_str());
            print_metrics_summary(res);
            return 0;
        }

        if (*sweep) {
            tocsyn::Scenario base = tocsyn::load_scenario(sweep_config);
            if (sweep->count("--out-dir")) base.out_dir = sweep_out;
            if (n0_values.empty() && gsm_values.empty())
                throw std::invalid_argument("sweep: need --n0-values and/or --gsm-values");
            if (n0_values.empty()) n0_values.push_back(base.n0);
            if (gsm_values.empty()) gsm_values.push_back(base.gsm);

            std::vector<std::pair<tocsyn::Scenario, tocsyn::ScenarioResult>> runs;
            for (double n0 : n0_values)
                for (double gsm : gsm_values) {
                    tocsyn::Scenario sc = base;
                    sc.n0 = n0;
                    sc.gsm = gsm;
                    sc.validate();
                    std::printf("sweep: n0 = %g, gsm = %g\n", n0, gsm);
                    runs.emplace_back(sc, tocsyn::run_scenario(sc));
                    print_metrics_summary(runs.back().second);
                }
            const std::filesystem::path dir(base.out_dir);
            tocsyn::write_file_atomic(dir / "sweep_metrics.csv", tocsyn::sweep_csv(base, runs));
            std::printf("wrote %s\n", (dir / "sweep_metrics.csv").c_str());
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
