#pragma once

// Seeded generators for random operators and models. Used by the CLI's
// randomized checks and by the property tests.

#include <random>

#include "qbs/ito_flow.hpp"

namespace qbs {

using Rng = std::mt19937_64;

/// Entries with independent N(0, scale^2) real and imaginary parts.
ComplexMatrix random_complex(Index dim, Rng& rng, double scale = 1.0);
/// (G + G*) / 2 for G = random_complex(dim, rng, scale).
HermitianMatrix random_hermitian(Index dim, Rng& rng, double scale = 1.0);
/// Haar-distributed unitary (QR of a Ginibre matrix with phase correction).
UnitaryMatrix random_unitary(Index dim, Rng& rng);
/// U diag(eigenvalues) U* with eigenvalues drawn uniformly from [lo, hi].
HermitianMatrix random_with_spectrum(Index dim, Rng& rng, double lo, double hi);
/// Random unit vector.
ComplexVector random_state(Index dim, Rng& rng);

/// Random (X, H, L, S): Hermitian X, H and complex L with entries of order
/// `scale`, Haar S.
ModelOperators random_model(Index dim, Rng& rng, double scale = 0.5);

}  // namespace qbs
