#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace specf {

/// Identifier recorded in generator metadata so outputs can be matched to the
/// exact sampling scheme that produced them.
inline constexpr const char* kRngAlgorithm = "mt19937_64+splitmix64/v1";

std::uint64_t splitmix64(std::uint64_t x);

/// Child seed for an independent stream derived from (seed, salt).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt);

/// mt19937_64 with hand-rolled draw mappings. std:: distributions are not
/// used because their output sequences are implementation-defined; the
/// mappings below are fixed so identical seeds give identical results on any
/// conforming standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform in [0, 1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    /// Unbiased integer in [0, n); n = 0 or 1 consumes no randomness.
    std::uint64_t next_below(std::uint64_t n);

    /// k distinct indices from 0..n-1, returned ascending.
    std::vector<int> sample_indices(int n, int k);

private:
    std::mt19937_64 eng_;
};

}  // namespace specf
