#pragma once

#include "sqc/qubit.hpp"

namespace sqc {

// All entropies are in bits; 0 log 0 is taken as 0.

/// h(x) = -x log2 x - (1-x) log2 (1-x).  Throws DomainError outside [0, 1]
/// (inputs within 1e-12 of the interval are clamped).
double binary_entropy(double x);

double von_neumann_entropy(const DensityMatrix& state);

/// Removes the off-diagonal elements in the incoherent basis.
DensityMatrix dephase(const DensityMatrix& state);

/// S(dephase(rho)) - S(rho).
double distillable_coherence(const DensityMatrix& state);

/// Coherence cost, equal to the coherence of formation for a qubit:
/// h((1 + sqrt(1 - 4 |rho01|^2)) / 2).
double coherence_cost(const DensityMatrix& state);

/// l1-norm of coherence, 2 |rho01| for a qubit.
double l1_coherence(const DensityMatrix& state);

}  // namespace sqc
