#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace ggopt {

// Seeded random stream. The engine is std::mt19937_64 (bit-exact by the
// standard); all variate transforms are implemented here rather than via
// std::*_distribution, whose output is implementation-defined. Identical
// seeds therefore give identical streams on every platform.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed), seed_(seed) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on {-1, +1}.
    double sign() { return (next_u64() & 1u) ? 1.0 : -1.0; }

    // Unbiased integer in [0, n) by rejection.
    std::uint64_t below(std::uint64_t n);

    // Standard normal via the Marsaglia polar method (cached spare).
    double normal();

    // Gamma(shape, scale 1) via Marsaglia-Tsang; shape < 1 uses the
    // G_a = G_{a+1} * U^{1/a} boost.
    double gamma(double shape);

    // In-place Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // Independent child stream; stable function of (seed, id).
    RngStream derive(std::uint64_t id) const;

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace ggopt
