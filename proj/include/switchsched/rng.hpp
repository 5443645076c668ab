#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace switchsched {

// Deterministic randomness for generators and the simulator. mt19937_64 is
// fully specified by the standard, so a seed yields the same stream on every
// platform. Distribution sampling is implemented here (not via <random>
// distributions, whose output is implementation-defined).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Unbiased integer in [0, n), by rejection.
    std::uint64_t uniform(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("uniform(0)");
        const std::uint64_t full = ~0ull;
        const std::uint64_t bound = n * (full / n);  // multiple of n, no overflow
        std::uint64_t r;
        do {
            r = engine_();
        } while (r >= bound);
        return r % n;
    }

    long long uniform_int(long long lo, long long hi) {  // inclusive bounds
        if (lo > hi) throw std::invalid_argument("uniform_int: empty range");
        return lo + static_cast<long long>(uniform(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    double uniform01() {  // [0, 1), 53-bit mantissa
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Poisson sampling by Knuth inversion. Means above 30 are split into
    // independent summands so the inversion product stays well above the
    // double underflow threshold.
    long long poisson(double mean) {
        if (mean <= 0.0) return 0;
        long long total = 0;
        while (mean > 30.0) {
            total += poisson_small(30.0);
            mean -= 30.0;
        }
        return total + poisson_small(mean);
    }

  private:
    long long poisson_small(double mean) {
        const double limit = std::exp(-mean);
        long long k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= uniform01();
        } while (p > limit);
        return k - 1;
    }

    std::mt19937_64 engine_;
};

}  // namespace switchsched
