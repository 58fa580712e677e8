#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace morsekit {

// Mixes a root seed with a stream index so that parallel shards (Monte Carlo
// chunks, game trials, sampler tasks) get decorrelated, reproducible engines.
inline std::uint64_t split_seed(std::uint64_t root, std::uint64_t stream) {
    std::uint64_t z = root + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic uniform/normal generation on top of mt19937_64. The raw
// 53-bit conversion and the trigonometric Box-Muller transform avoid the
// unspecified behaviour of std distributions, so byte-identical reports
// come out of every run with the same seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t bits() { return eng_(); }

    // Uniform on [0, 1).
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    bool coin() { return (eng_() >> 63) != 0; }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Root seed used by the CLI when --seed is not given. Published in the README
// so that the shipped reports are reproducible.
inline constexpr std::uint64_t kDefaultSeed = 424242ULL;

}  // namespace morsekit
