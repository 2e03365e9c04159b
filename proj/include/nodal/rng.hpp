#pragma once

#include <cmath>
#include <cstdint>

namespace nodal {

// Counter-style seeding: every trial of an experiment derives its own seed
// from (base_seed, stream index), so results do not depend on which worker
// thread runs which trial.

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t stream) {
    std::uint64_t s = base_seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    return mix64(mix64(s) + 0x632BE59BD9B4E019ULL);
}

/// SplitMix64 generator with a portable Box-Muller Gaussian. Self-contained
/// so that sampled fields are bit-identical across standard libraries and
/// thread schedules.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix64(state_);
    }

    /// Uniform in (0, 1].
    double next_unit() {
        return 1.0 - static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Standard normal (Box-Muller, pairs cached).
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u = next_unit();
        double v = next_unit();
        double r = std::sqrt(-2.0 * std::log(u));
        double a = 2.0 * M_PI * v;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace nodal
