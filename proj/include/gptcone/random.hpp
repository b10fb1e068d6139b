#pragma once

// Seeded samplers. Every randomized routine in the library takes an explicit
// engine or seed so that runs are reproducible.

#include <cstdint>
#include <random>

#include "gptcone/herm.hpp"

namespace gptcone {

using Rng = std::mt19937_64;

CVector random_gaussian_vector(int n, Rng& rng);
CVector random_unit_vector(int n, Rng& rng);
// Haar-distributed unitary (QR of a Ginibre matrix with phase correction).
CMatrix haar_unitary(int n, Rng& rng);
// GUE-like Hermitian matrix with unit-variance entries.
HermMatrix random_hermitian(int n, Rng& rng);
// Hilbert-Schmidt random density matrix of the given rank (rank <= 0 means full).
HermMatrix random_density(int n, Rng& rng, int rank = 0);
HermMatrix random_pure_state(int n, Rng& rng);
HermMatrix random_product_pure_state(BipartiteDims dims, Rng& rng);
// Convex mixture of `terms` random product pure states.
HermMatrix random_separable_state(BipartiteDims dims, Rng& rng, int terms = 4);
double uniform01(Rng& rng);

}  // namespace gptcone
