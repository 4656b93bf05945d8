#pragma once

#include "qsep/linalg.hpp"

namespace qsep {

// Validation thresholds applied when a density matrix is constructed.
inline constexpr double kHermitianTol = 1e-9;
inline constexpr double kTraceTol = 1e-9;
inline constexpr double kEigenvalueFloor = -1e-9;

// A density matrix on C^{N_A} (x) C^{N_B} together with the factorization
// of its index space. The checked constructor enforces Hermiticity, unit
// trace and positive semidefiniteness; `unchecked` skips validation for
// intermediate operators that are not density matrices.
class BipartiteState {
 public:
  BipartiteState(int dim_a, int dim_b, ComplexMatrix matrix);

  static BipartiteState unchecked(int dim_a, int dim_b, ComplexMatrix matrix);

  int dim_a() const { return dim_a_; }
  int dim_b() const { return dim_b_; }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  struct SkipValidation {};
  BipartiteState(SkipValidation, int dim_a, int dim_b, ComplexMatrix matrix);

  int dim_a_;
  int dim_b_;
  ComplexMatrix matrix_;
};

// Coefficient matrix psi of a pure state |psi> = sum_{n,nu} psi(n,nu) |n>|nu>,
// with Latin (row) indices on side A and Greek (column) indices on side B.
// Must have unit Frobenius norm.
class PureCoefficients {
 public:
  explicit PureCoefficients(ComplexMatrix psi);

  int dim_a() const { return static_cast<int>(psi_.rows()); }
  int dim_b() const { return static_cast<int>(psi_.cols()); }
  const ComplexMatrix& psi() const { return psi_; }

 private:
  ComplexMatrix psi_;
};

// Realignment: regroups the entries of an (N_A N_B)-square matrix into an
// N_A^2 x N_B^2 rectangle,
//   out(m*N_A + n, mu*N_B + nu) = op(m*N_B + mu, n*N_B + nu)
// (all indices 0-based). Linear in op; a pure entry permutation.
ComplexMatrix realign(const ComplexMatrix& op, int dim_a, int dim_b);

// Exact inverse of realign.
ComplexMatrix unrealign(const ComplexMatrix& r, int dim_a, int dim_b);

// Partial traces. marginal_a(m)(i,j) = sum_mu m(i*N_B+mu, j*N_B+mu).
ComplexMatrix marginal_a(const ComplexMatrix& op, int dim_a, int dim_b);
ComplexMatrix marginal_b(const ComplexMatrix& op, int dim_a, int dim_b);
ComplexMatrix marginal_a(const BipartiteState& state);
ComplexMatrix marginal_b(const BipartiteState& state);

// Transposition of one tensor factor, relative to the storage basis.
ComplexMatrix partial_transpose_a(const ComplexMatrix& op, int dim_a, int dim_b);
ComplexMatrix partial_transpose_b(const ComplexMatrix& op, int dim_a, int dim_b);
ComplexMatrix partial_transpose_b(const BipartiteState& state);

// Schmidt coefficients of an operator with respect to the local operator
// spaces: the singular values of its realigned matrix. Returns the full
// min(N_A^2, N_B^2) values; trailing entries that would vanish in exact
// arithmetic are kept so callers can apply their own threshold.
std::vector<double> schmidt_coefficients(const ComplexMatrix& op, int dim_a, int dim_b);

// Rank-one projector |psi><psi| as a validated state.
BipartiteState pure_state(const PureCoefficients& coeffs);

// Re tr(m^2); equals sum |m_ij|^2 for Hermitian m.
double purity(const ComplexMatrix& m);

}  // namespace qsep
