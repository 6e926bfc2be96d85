#pragma once

#include <cstdint>
#include <random>

#include "savgol/special_functions.hpp"

namespace savgol {

/// splitmix64 step, used to decorrelate seeds for per-trial substreams.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Deterministic standard-normal sampler: mt19937_64 (bit-exact across
/// platforms by the standard) driving the inverse normal CDF. Trial
/// substreams derived from (seed, trial) are schedule independent, so Monte
/// Carlo loops may run in any order or in parallel.
class NormalSampler {
public:
    explicit NormalSampler(std::uint64_t seed) : engine_(seed) {}

    static NormalSampler for_trial(std::uint64_t seed, std::uint64_t trial) {
        return NormalSampler(mix_seed(seed, trial));
    }

    double operator()() {
        // 53-bit uniform shifted into the open interval (0, 1).
        const double u = (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
        return inverse_normal_cdf(u);
    }

private:
    std::mt19937_64 engine_;
};

} // namespace savgol
