#include "sqc/sampling.hpp"

#include <cmath>

namespace sqc {

namespace {

BlochVector random_direction(std::mt19937_64& eng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (;;) {
        const BlochVector v{gauss(eng), gauss(eng), gauss(eng)};
        const double n = v.norm();
        if (n > 1e-8) return {v.x / n, v.y / n, v.z / n};
    }
}

BlochVector scaled(const BlochVector& v, double k) { return {v.x * k, v.y * k, v.z * k}; }

}  // namespace

BlochVector random_bloch(std::mt19937_64& eng, double radius) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    // Stays strictly inside the ball so from_bloch never sees rounding past 1.
    return scaled(random_direction(eng), radius * std::cbrt(unif(eng)) * (1.0 - 1e-15));
}

BlochVector random_coherent_bloch(std::mt19937_64& eng, double min_coherence, double radius) {
    for (;;) {
        const BlochVector v = random_bloch(eng, radius);
        if (std::hypot(v.x, v.y) >= min_coherence) return v;
    }
}

BlochVector random_pure_bloch(std::mt19937_64& eng, double min_coherence) {
    for (;;) {
        const BlochVector v = scaled(random_direction(eng), 1.0 - 1e-15);
        if (std::hypot(v.x, v.y) >= min_coherence) return v;
    }
}

}  // namespace sqc
