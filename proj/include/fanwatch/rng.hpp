// Seeded pseudorandom generator used everywhere randomness is needed.
// The generator identity is part of the on-disk config contract
// ("mt19937_64/boxmuller-v1"): all distributions are derived from the
// raw 64-bit stream here, never from std::*_distribution, so results
// are bit-identical across standard libraries and platforms.

#ifndef FANWATCH_RNG_HPP
#define FANWATCH_RNG_HPP

#include <cstdint>
#include <cmath>
#include <random>
#include <string_view>
#include <vector>

namespace fanwatch {

inline constexpr std::string_view kRngId = "mt19937_64/boxmuller-v1";

// splitmix64, used only for seed mixing / substream derivation.
inline std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index)
{
    return mix64(mix64(seed) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

inline std::uint64_t fnv1a(std::string_view s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t substream_seed(std::uint64_t seed, std::string_view tag, std::uint64_t index)
{
    return mix64(mix64(seed) ^ fnv1a(tag) ^ mix64(index + 0x9e3779b97f4a7c15ULL));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // uniform in [0, 1), 53-bit resolution
    double uniform()
    {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // unbiased integer in [0, n), n >= 1 (rejection sampling)
    std::uint64_t below(std::uint64_t n)
    {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

    // standard normal via Box-Muller; the cosine branch only, so one
    // draw consumes exactly two uniforms
    double gaussian()
    {
        double u1 = uniform();
        while (u1 <= 0.0)
            u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    double gaussian(double mean, double stddev) { return mean + stddev * gaussian(); }

    // Fisher-Yates
    template <typename T>
    void shuffle(std::vector<T>& xs)
    {
        for (std::size_t i = xs.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(xs[i - 1], xs[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

} // namespace fanwatch

#endif
