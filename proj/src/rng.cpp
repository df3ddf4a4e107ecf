#include "ggopt/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace ggopt {

std::uint64_t RngStream::below(std::uint64_t n) {
    if (n == 0) throw std::domain_error("RngStream::below: n must be positive");
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = next_u64();
    } while (x >= limit);
    return x % n;
}

double RngStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform01() - 1.0;
        v = 2.0 * uniform01() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
}

double RngStream::gamma(double shape) {
    if (!(shape > 0.0)) throw std::domain_error("RngStream::gamma: shape must be positive");
    if (shape < 1.0) {
        double g = gamma(shape + 1.0);
        double u;
        do {
            u = uniform01();
        } while (u == 0.0);
        return g * std::pow(u, 1.0 / shape);
    }
    double d = shape - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        double u = uniform01();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

namespace {
// splitmix64 step; used only to mix child-stream seeds.
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
}  // namespace

RngStream RngStream::derive(std::uint64_t id) const {
    return RngStream(mix64(seed_ ^ mix64(id + 1)));
}

}  // namespace ggopt
