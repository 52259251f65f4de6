#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace jns {

/// Deterministic random source. Draws are derived from the raw engine bits
/// rather than std distributions, so a fixed seed gives identical streams on
/// every platform and standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform01() { return double(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return engine_() % n; }

    std::int64_t int_in(std::int64_t lo, std::int64_t hi_inclusive) {
        return lo + std::int64_t(below(std::uint64_t(hi_inclusive - lo + 1)));
    }

    double normal() {
        double u1 = uniform01(), u2 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    template <typename T>
    const T& pick(const std::vector<T>& choices) {
        return choices[std::size_t(below(choices.size()))];
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace jns
