#pragma once

#include "qsep/linalg.hpp"

#include <cstdint>
#include <random>

namespace qsep {

// All randomized routines take an explicit engine (or seed) and are
// deterministic given it.
using Rng = std::mt19937_64;

// Matrix with independent standard complex Gaussian entries.
ComplexMatrix random_gaussian_matrix(int rows, int cols, Rng& rng);

// Full-support random density matrix: G G^dag / tr(G G^dag) with Gaussian G.
ComplexMatrix random_density_matrix(int dim, Rng& rng);

// Haar-distributed unitary via QR of a Gaussian matrix with phase fixing.
ComplexMatrix random_unitary(int dim, Rng& rng);

// Unit-Frobenius-norm coefficient matrix of a random pure state.
ComplexMatrix random_pure_coefficients(int dim_a, int dim_b, Rng& rng);

}  // namespace qsep
