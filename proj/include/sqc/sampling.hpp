#pragma once

#include <random>

#include "sqc/qubit.hpp"

namespace sqc {

/// Uniform in the Bloch ball of radius `radius`.
BlochVector random_bloch(std::mt19937_64& eng, double radius = 1.0);

/// Uniform in the ball with transverse radius at least `min_coherence`.
BlochVector random_coherent_bloch(std::mt19937_64& eng, double min_coherence = 1e-3, double radius = 1.0);

/// Uniform on the unit sphere with transverse radius at least `min_coherence`.
BlochVector random_pure_bloch(std::mt19937_64& eng, double min_coherence = 1e-3);

inline DensityMatrix random_state(std::mt19937_64& eng) { return from_bloch(random_bloch(eng)); }

}  // namespace sqc
