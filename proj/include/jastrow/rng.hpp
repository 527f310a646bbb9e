#ifndef JASTROW_RNG_HPP
#define JASTROW_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

#include "jastrow/common.hpp"

namespace jastrow {

/// Seeded random stream with portable uniform/gaussian draws. The raw
/// mt19937_64 output is mapped to doubles by hand so that sequences do not
/// depend on standard-library distribution internals: two runs with the
/// same seed produce the same stream on any platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Sub-stream k of a base seed (splitting rule: seed + stream index).
    static Rng stream(std::uint64_t seed, std::uint64_t index) { return Rng(seed + index); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// Uniform on [a, b).
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    /// Standard normal via Box-Muller; pairs are cached.
    double gaussian() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        cached_ = r * std::sin(2.0 * pi * u2);
        have_cached_ = true;
        return r * std::cos(2.0 * pi * u2);
    }

  private:
    std::mt19937_64 eng_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

}  // namespace jastrow

#endif
