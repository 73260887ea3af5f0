#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace kuramoto {

/// Seeded Gaussian sampler with a fully pinned-down draw sequence.
///
/// std::normal_distribution leaves its algorithm to the standard library, so
/// traces generated with it would differ between toolchains. mt19937_64 output
/// is specified bit-for-bit; on top of it this uses the Marsaglia polar
/// transform, so a given seed yields the same noise everywhere.
class GaussianNoise {
public:
    explicit GaussianNoise(std::uint64_t seed) : gen_(seed) {}

    double sample(double stddev) {
        if (has_spare_) {
            has_spare_ = false;
            return spare_ * stddev;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return u * m * stddev;
    }

private:
    double uniform() {  // [0, 1) with 53 significant bits
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace kuramoto
