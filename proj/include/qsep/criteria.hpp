#pragma once

#include "qsep/superop.hpp"

#include <map>
#include <string>
#include <vector>

namespace qsep {

// Result of one criterion evaluation. A positive margin beyond `tol`
// certifies entanglement; margin <= tol is compatible with separability
// (every criterion here is a necessary condition only).
struct CriterionReport {
  std::string criterion_id;
  std::map<std::string, double> params;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // lhs - rhs
  bool violated = false;
  double tol = kDefaultTol;
};

// Realignment test: |realign(rho)|_tr <= 1 for separable states.
CriterionReport rc(const BipartiteState& state, double tol = kDefaultTol);

// |realign(rho - rho_A (x) rho_B)|_tr <= sqrt((1 - tr rho_A^2)(1 - tr rho_B^2)).
CriterionReport zhang(const BipartiteState& state, double tol = kDefaultTol);

// Three-phase family: for separable rho and any real omega, theta, phi,
//   |realign( (e^{iw}+e^{i(w+t+f)})/2 rho + (e^{i(w+t)}+e^{i(w+f)})/2 rho_A(x)rho_B )|_tr
//     <= sqrt(1 + cos t * tr rho_A^2) sqrt(1 + cos f * tr rho_B^2).
CriterionReport omega_family(const BipartiteState& state, double omega, double theta, double phi,
                             double tol = kDefaultTol);

// omega_family at (0, theta, -theta): |realign(rho + cos(theta) rho_A (x) rho_B)|_tr
// against the same bound with cos(theta) in both factors. theta in [0, pi].
// theta = pi/2 is the plain realignment test; theta = pi is zhang.
CriterionReport theta_criterion(const BipartiteState& state, double theta,
                                double tol = kDefaultTol);

// omega_family at (0, theta, theta), theta in [0, 2*pi).
CriterionReport mirror_theta_criterion(const BipartiteState& state, double theta,
                                       double tol = kDefaultTol);

// Variant built from {e^{i theta} Id_A, e^{-i theta} T_B; Id_A, Id_B}:
//   lhs operator (rho^{T_B} + rho)/2
//              + (e^{i theta} rho_A (x) rho_B + e^{-i theta} rho_A (x) rho_B^T)/2,
//   rhs sqrt((1 + cos theta tr rho_A^2)(1 + cos theta tr(rho_B^T rho_B))).
// The second rhs factor uses the transpose pairing tr(rho_B^T rho_B), which
// for complex Hermitian marginals is not the same number as tr(rho_B^2).
CriterionReport transpose_theta_criterion(const BipartiteState& state, double theta,
                                          double tol = kDefaultTol);

// Local-filtering enhancement with contractions f_a, f_b (operator norm <= 1):
// the theta inequality evaluated on (f_a (x) f_b) rho (f_a (x) f_b)^dag and the
// filtered marginals.
CriterionReport filter_criterion(const BipartiteState& state, const ComplexMatrix& f_a,
                                 const ComplexMatrix& f_b, double theta,
                                 double tol = kDefaultTol);

// Generalized test for an arbitrary audited family:
//   |realign(rho_E)|_tr <= sqrt(eps_A + n^{-1} sum_{k<l} 2 Re<E_k(rho_A), E_l(rho_A)>)
//                        * (same for B).
// Throws NumericalError if a radicand is negative beyond tolerance, which
// signals an eps bound that is too small for the family.
CriterionReport generalized_rc(const BipartiteState& state, const SuperOpFamily& fam,
                               double tol = kDefaultTol);

// Positivity of the partial transpose. The raw minimum eigenvalue is kept
// in params["min_eigenvalue"]; lhs is its negative part so that
// violated <=> min eigenvalue < -tol.
CriterionReport ppt_check(const BipartiteState& state, double tol = kDefaultTol);

// Grid used by run_all and the scan front end when none is given:
// {0, pi/4, pi/2, 3pi/4, pi}.
const std::vector<double>& default_theta_grid();

// Evaluates ppt, rc, theta (over the grid), transpose_theta (over the grid)
// and zhang, in that order (criterion_id ascending, then theta ascending).
// Per-criterion failures are appended to *errors (when given) and do not
// abort the batch.
std::vector<CriterionReport> run_all(const BipartiteState& state,
                                     const std::vector<double>& theta_grid,
                                     double tol = kDefaultTol,
                                     std::vector<std::string>* errors = nullptr);

}  // namespace qsep
