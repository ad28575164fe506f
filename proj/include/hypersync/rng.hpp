#pragma once

#include <cstdint>
#include <random>

namespace hypersync {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Seedable generator with an explicit stream-splitting rule (child(i) derives a
// statistically independent stream), plus uniform/normal variates that do not
// depend on standard-library distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), gen_(splitmix64(seed)) {}

    Rng child(std::uint64_t stream) const {
        return Rng(splitmix64(seed_ ^ (0x9E3779B97F4A7C15ULL * (stream + 1))));
    }

    std::uint64_t bits() { return gen_(); }

    // uniform on [0, 1)
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // uniform on (-pi, pi]
    double uniform_angle();

    // standard normal via Box-Muller (cosine branch only; stateless)
    double normal();

private:
    std::uint64_t seed_;
    std::mt19937_64 gen_;
};

} // namespace hypersync
