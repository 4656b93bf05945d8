#pragma once

#include "qsep/bipartite.hpp"
#include "qsep/random.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace qsep {

// A linear or antilinear map on the space of dim x dim matrices,
//   A  |->  phase * X * f(A) * Y,
// where f is the identity, transpose, entrywise conjugate or adjoint,
// selected by the two input flags. conjugate_input = true makes the map
// antilinear. This representation covers identity and transposition maps,
// (anti)unitary conjugations, and the two-sided products X.Y used for
// local filtering, while keeping the action of a tensor product of two
// such maps on composite operators computable in closed form.
class SuperOp {
 public:
  SuperOp(ComplexMatrix left, ComplexMatrix right, Complex phase = Complex(1.0),
          bool conjugate_input = false, bool transpose_input = false);

  static SuperOp identity(int dim);
  static SuperOp transposition(int dim);
  static SuperOp conjugation(int dim);
  // A |-> x A y
  static SuperOp sandwich(ComplexMatrix x, ComplexMatrix y);
  // A |-> u A u^dag
  static SuperOp unitary_conjugation(const ComplexMatrix& u);

  // Same map multiplied by a unit-modulus scalar.
  SuperOp times_phase(Complex unit_phase) const;

  // phase * X * f(A) * Y with f selected by the input flags.
  ComplexMatrix apply(const ComplexMatrix& a) const;

  int dim() const { return static_cast<int>(left_.rows()); }
  const ComplexMatrix& left() const { return left_; }
  const ComplexMatrix& right() const { return right_; }
  Complex phase() const { return phase_; }
  bool conjugate_input() const { return conjugate_input_; }
  bool transpose_input() const { return transpose_input_; }
  bool antilinear() const { return conjugate_input_; }

 private:
  ComplexMatrix left_;
  ComplexMatrix right_;
  Complex phase_;
  bool conjugate_input_;
  bool transpose_input_;
};

// Action of e_a (x) e_b on an operator of the composite system. For
// antilinear families the composite input is conjugated entrywise once,
// then the transpose flags act as partial transpositions and the two
// sandwiches and phases are applied. Requires both maps to have the same
// linearity character.
ComplexMatrix apply_composite(const SuperOp& e_a, const SuperOp& e_b, const ComplexMatrix& m,
                              int dim_a, int dim_b);

// The 2n local super-operators entering the generalized criterion, plus the
// bounds eps_a, eps_b they are claimed to satisfy:
//   sum_k |E_k(sigma_k)|_HS^2 <= n * eps   for all density tuples (sigma_k).
// Construction validates structure (matching sizes and dimensions, one
// linearity character across all 2n maps); the eps bounds themselves are
// audited separately by check_condicio.
class SuperOpFamily {
 public:
  SuperOpFamily(std::vector<SuperOp> ops_a, std::vector<SuperOp> ops_b, double eps_a,
                double eps_b);

  int n() const { return static_cast<int>(ops_a_.size()); }
  int dim_a() const { return ops_a_.front().dim(); }
  int dim_b() const { return ops_b_.front().dim(); }
  const std::vector<SuperOp>& ops_a() const { return ops_a_; }
  const std::vector<SuperOp>& ops_b() const { return ops_b_; }
  double eps_a() const { return eps_a_; }
  double eps_b() const { return eps_b_; }
  bool antilinear() const { return ops_a_.front().antilinear(); }

 private:
  std::vector<SuperOp> ops_a_;
  std::vector<SuperOp> ops_b_;
  double eps_a_;
  double eps_b_;
};

// n = 1 identity pair with eps = 1; recovers the plain realignment test.
SuperOpFamily identity_family(int dim_a, int dim_b);
// n = 2 pair {identity, -identity} with eps = 1; produces rho - rho_A (x) rho_B.
SuperOpFamily deviation_family(int dim_a, int dim_b);
// n = 2 pair {e^{i theta} I_A (x) e^{-i theta} T_B, identity pair}, eps = 1.
SuperOpFamily partial_transpose_family(int dim_a, int dim_b, double theta);

struct CondicioAudit {
  bool ok = false;
  double worst_ratio_a = 0.0;  // max over draws of sum_k |E_k(sigma_k)|^2 / n
  double worst_ratio_b = 0.0;
};

// Randomized audit of the eps bounds: draws `samples` density-matrix
// n-tuples per side and checks the bound on every draw. A failed audit is
// reported in the result, never thrown.
CondicioAudit check_condicio(const SuperOpFamily& fam, int samples, std::uint64_t seed);

// Sampled lower bound for the optimal eps of a family side: the maximum
// over density tuples of n^{-1} sum_k |E_k(sigma_k)|_HS^2. Non-decreasing
// in `samples` for a fixed seed.
double estimate_breve_epsilon(std::span<const SuperOp> ops, int samples, std::uint64_t seed);

// The operator associated with a state by the family:
//   n^{-1} [ sum_k (E_k^A (x) E_k^B)(rho)
//          + sum_{k != l} (E_k^A (x) E_l^B)(rho_A (x) rho_B) ].
// Generally neither Hermitian nor trace-one.
ComplexMatrix build_rho_e(const BipartiteState& state, const SuperOpFamily& fam);

}  // namespace qsep
