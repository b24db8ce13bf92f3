// Deterministic random number generation with explicit seed-stream derivation.
//
// All stochastic code in the library draws through Rng so that a seed fully
// determines every generated value, independent of the standard library's
// distribution implementations. Child streams are derived from a root seed
// with a splitmix64 mix, which keeps parallel and serial runs bit-identical.
#ifndef LRH_RNG_HPP
#define LRH_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace lrh
{

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed for substream `stream` of the generator rooted at `root`.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream)
{
    return splitmix64(root + 0x9E3779B97F4A7C15ULL * (stream + 1));
}

/// Seeded generator with uniform and Gaussian draws.
class Rng
{
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform on [0, 1).
    double uniform()
    {
        // 53-bit mantissa draw, deterministic across platforms.
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller; one spare value is cached.
    double gaussian()
    {
        if (has_spare_)
        {
            has_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do
        {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * M_PI * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

    std::uint64_t raw() { return gen_(); }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace lrh

#endif // LRH_RNG_HPP
