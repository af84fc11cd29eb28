#pragma once

// Shared fixtures for the unit tests.

#include <random>

#include "wgqed/emitter.hpp"
#include "wgqed/geometry.hpp"

namespace wgqed::testing {

// b = 1.2 um, a = 1.5 b: the reference cross section.
inline WaveguideGeometry reference_guide() { return WaveguideGeometry::from_aspect(1.2, 1.5); }

inline double rel_diff(double x, double y) {
    const double scale = std::max(std::abs(x), std::abs(y));
    return scale == 0.0 ? 0.0 : std::abs(x - y) / scale;
}

class Draw {
public:
    explicit Draw(unsigned long long seed) : rng_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace wgqed::testing
