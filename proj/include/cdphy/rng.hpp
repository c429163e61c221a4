#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>
#include <utility>

namespace cdphy {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Substream seed for a path of indices below a root seed. Distinct paths give
/// unrelated streams, so adding a sibling never perturbs existing ones.
inline std::uint64_t derive_seed(std::uint64_t root, std::initializer_list<std::uint64_t> path)
{
    std::uint64_t s = mix64(root);
    for (auto p : path)
        s = mix64(s ^ mix64(p + 0x632be59bd9b4e019ULL));
    return s;
}

/// mt19937_64 plus Box-Muller. Each call to normal_pair() consumes exactly two
/// 64-bit draws, which keeps streams reproducible independent of the standard
/// library's distribution implementations.
class GaussianSource {
public:
    explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in (0, 1].
    double uniform_open0() { return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53; }

    /// Uniform in [0, n) by rejection; n > 0.
    std::uint32_t uniform_below(std::uint32_t n)
    {
        if ((n & (n - 1)) == 0)
            return static_cast<std::uint32_t>(engine_() >> 32) & (n - 1);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t r;
        do {
            r = engine_();
        } while (r >= limit);
        return static_cast<std::uint32_t>(r % n);
    }

    /// Two independent standard normals.
    std::pair<double, double> normal_pair()
    {
        const double u1 = uniform_open0();
        const double u2 = uniform_open0();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        return {r * std::cos(t), r * std::sin(t)};
    }

private:
    std::mt19937_64 engine_;
};

} // namespace cdphy
