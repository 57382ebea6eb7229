#pragma once

#include <cstdint>
#include <random>

namespace rcm {

/// SplitMix64 finalizer; used only to derive independent engine seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// 64-bit Mersenne Twister seeded from (seed, stream). Streams with distinct
/// ids are derived through two SplitMix64 rounds, so chain i of a run with
/// seed s always sees the same numbers regardless of how many chains exist.
class Rng {
public:
    using engine_type = std::mt19937_64;

    explicit Rng(std::uint64_t seed = 0, std::uint64_t stream = 0)
        : seed_(seed), stream_(stream), engine_(splitmix64(seed ^ splitmix64(stream + 0x5851f42d4c957f2dull))) {}

    Rng split(std::uint64_t child) const { return Rng(seed_, splitmix64(stream_ * 0x100000001b3ull + child + 1)); }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

    /// Uniform on [0, 1).
    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

    /// Uniform on {0, ..., n-1}.
    int uniform_int(int n) { return std::uniform_int_distribution<int>(0, n - 1)(engine_); }

    bool bernoulli(double p) { return uniform() < p; }

    int poisson(double lambda) {
        if (lambda <= 0) return 0;
        return std::poisson_distribution<int>(lambda)(engine_);
    }

    engine_type& engine() { return engine_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    engine_type engine_;
};

} // namespace rcm
