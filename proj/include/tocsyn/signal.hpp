#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace tocsyn {

/**
 * Deterministic test-signal generation: a sinusoid plus scaled Gaussian
 * white noise of a stated dBW power. The random contract is frozen:
 * mt19937_64 feeding a basic Box-Muller transform, so a seed fully
 * determines the sample stream.
 */

struct SignalSpec {
    double vm;          // sinusoid amplitude, > 0
    double omega;       // angular frequency in rad/s, > 0
    double gsm;         // relative noise amplitude, >= 0
    double noise_dbw;   // noise power in dBW; sigma = 10^(dbw/20)
    std::uint64_t seed; // RNG seed
    double h;           // sample spacing in seconds, > 0
    std::size_t length; // sample count, >= 1

    SignalSpec(double amplitude, double angular_freq, double rel_noise, double dbw,
               std::uint64_t rng_seed, double step, std::size_t samples)
        : vm(amplitude),
          omega(angular_freq),
          gsm(rel_noise),
          noise_dbw(dbw),
          seed(rng_seed),
          h(step),
          length(samples) {
        if (!(vm > 0.0)) throw std::invalid_argument("SignalSpec: vm must be positive");
        if (!(omega > 0.0)) throw std::invalid_argument("SignalSpec: omega must be positive");
        if (!(gsm >= 0.0)) throw std::invalid_argument("SignalSpec: gsm must be non-negative");
        if (!(h > 0.0)) throw std::invalid_argument("SignalSpec: h must be positive");
        if (length < 1) throw std::invalid_argument("SignalSpec: length must be >= 1");
    }

    /// Noise standard deviation before the vm*gsm scaling.
    double noise_sigma() const { return std::pow(10.0, noise_dbw / 20.0); }
};

// Standard-normal stream: mt19937_64 uniforms through Box-Muller.
class GaussianNoise {
  public:
    explicit GaussianNoise(std::uint64_t seed) : eng_(seed) {}

    double operator()() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log1p(-u1));  // log(1-u1), u1 in [0,1)
        const double angle = 2.0 * pi * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

  private:
    static constexpr double pi = 3.141592653589793238462643383279502884;

    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

struct GeneratedSignal {
    std::vector<double> t;
    std::vector<double> v;  // vm sin(omega t) + vm gsm sigma N(0,1)
    // clean[mu][k] = vm omega^mu sin(omega t_k + mu pi/2), the exact
    // order-mu derivative of the noiseless sinusoid
    std::vector<std::vector<double>> clean;
};

/// Samples the noisy signal plus clean derivative references of orders 0..orders-1.
inline GeneratedSignal generate(const SignalSpec& spec, int orders) {
    if (orders < 1) throw std::invalid_argument("generate: need at least one reference order");
    constexpr double half_pi = 1.5707963267948966192313216916397514;
    GeneratedSignal out;
    out.t.resize(spec.length);
    out.v.resize(spec.length);
    out.clean.assign(orders, std::vector<double>(spec.length));
    GaussianNoise noise(spec.seed);
    const double noise_amp = spec.vm * spec.gsm * spec.noise_sigma();
    for (std::size_t k = 0; k < spec.length; ++k) {
        const double t = static_cast<double>(k) * spec.h;
        out.t[k] = t;
        double scale = spec.vm;
        for (int mu = 0; mu < orders; ++mu) {
            out.clean[mu][k] = scale * std::sin(spec.omega * t + half_pi * mu);
            scale *= spec.omega;
        }
        out.v[k] = out.clean[0][k] + noise_amp * noise();
    }
    return out;
}

}  // namespace tocsyn
