#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <vector>

namespace qsep {

using Complex = std::complex<double>;

// Dense complex matrix, the carrier type for states, operators and
// realigned matrices throughout the library.
using ComplexMatrix = Eigen::MatrixXcd;

// Default absolute tolerance for floating-point comparisons and for the
// violation threshold of the separability criteria.
inline constexpr double kDefaultTol = 1e-9;

// Thrown when a numerical routine cannot produce a trustworthy result
// (eigensolver non-convergence, invalid radicand, ...). Never silent.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Kronecker product: entry ((i*Brows+p),(j*Bcols+q)) = A(i,j)*B(p,q).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Singular values in non-increasing order, length min(rows, cols). Computed
// by a two-sided Jacobi SVD, which keeps even the vanishing values accurate
// to machine precision.
std::vector<double> singular_values(const ComplexMatrix& a);

// Sum of singular values (nuclear norm).
double trace_norm(const ComplexMatrix& a);

// Hilbert-Schmidt inner product tr(A^dag B); antilinear in the first
// argument. Throws std::invalid_argument on shape mismatch.
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

// Largest singular value.
double operator_norm(const ComplexMatrix& a);

// Eigenvalues of a Hermitian matrix, ascending. The input is symmetrized
// before the solve so callers may pass matrices that are Hermitian only up
// to rounding noise.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

double min_hermitian_eigenvalue(const ComplexMatrix& m);

bool all_finite(const ComplexMatrix& m);

}  // namespace qsep
