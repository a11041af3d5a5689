#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace centrolab {

/// SplitMix64 finalizer; used to derive independent per-trial seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) {
    return splitmix64(master ^ trial);
}

/// Platform-stable variate source. std::mt19937_64 output is fixed by the
/// standard; the distribution transforms below are written out explicitly
/// because std::normal_distribution is implementation defined.
class Variates {
public:
    explicit Variates(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Standard normal via the Marsaglia polar method; both values of each
    /// accepted pair are used.
    double normal() {
        if (hasSpare_) {
            hasSpare_ = false;
            return spare_;
        }
        double u = 0.0;
        double v = 0.0;
        double s = 0.0;
        do {
            u = 2.0 * unit() - 1.0;
            v = 2.0 * unit() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double factor = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * factor;
        hasSpare_ = true;
        return u * factor;
    }

    /// Uniform on [-sqrt(3), sqrt(3)): mean 0, variance 1.
    double centered_uniform() {
        constexpr double half_width = 1.7320508075688772;
        return half_width * (2.0 * unit() - 1.0);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool hasSpare_ = false;
};

}  // namespace centrolab
