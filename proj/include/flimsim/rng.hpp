#pragma once

#include <cmath>
#include <cstdint>

namespace flimsim {

// Counter-based random stream. Each (seed, stream, counter) triple opens an
// independent SplitMix64 sequence, so Monte Carlo workers can jump straight
// to any symbol without sharing generator state. Output is identical for any
// partitioning of the counter space across threads.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter)
        : state_(mix(mix(mix(seed + GOLDEN) + stream) + counter)) {}

    std::uint64_t next_u64() {
        state_ += GOLDEN;
        return mix(state_);
    }

    // uniform in [0, 1)
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // standard normal via Box-Muller; pairs are cached
    double next_gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = next_unit();
        const double u2 = next_unit();
        const double r = std::sqrt(-2.0 * std::log1p(-u1));  // log(1-u1), safe at u1=0
        const double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

private:
    static constexpr std::uint64_t GOLDEN = 0x9E3779B97F4A7C15ull;

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace flimsim
