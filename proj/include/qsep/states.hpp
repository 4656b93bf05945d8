#pragma once

#include "qsep/bipartite.hpp"
#include "qsep/random.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qsep {

// One-parameter family of 3x3 (x) 3x3 bound entangled states, prefactor
// 1/(8a+1); PPT for every a in [0,1].
BipartiteState horodecki_a(double a);

// p * horodecki_a(a) + (1-p)/9 * I_9.
BipartiteState horodecki_mixture(double a, double p);

// Two-qubit family
//   1/2 [ 1+r 0 0   t
//         0   0 0   0
//         0   0 s-r 0
//         t   0 0   1-s ],
// separable iff t = 0. The PSD domain is validated per instance; the
// constructor names the offending eigenvalue on failure.
BipartiteState two_qubit_tsr(double t, double s, double r);

// Pure state with coefficient matrix I_d / sqrt(d).
BipartiteState max_entangled(int d);

// p * max_entangled(d) + (1-p)/d^2 * I.
BipartiteState isotropic_identity_mixture(int d, double p);

enum class Family {
  horodecki_a,
  horodecki_mixture,
  two_qubit_tsr,
  max_entangled,
  isotropic_identity_mixture,
};

Family family_from_string(const std::string& name);
std::string family_name(Family family);

// Parameter names a family accepts, e.g. {"a", "p"} for horodecki_mixture.
const std::vector<std::string>& family_parameter_names(Family family);

struct FamilyParams {
  Family family = Family::max_entangled;
  std::map<std::string, double> values;
};

// Dispatches to the family constructors above, validating that all required
// parameters are present and in range.
BipartiteState make_family_state(const FamilyParams& params);

// Random separable state with an explicit decomposition
// sum_i p_i rho_i^A (x) rho_i^B: simplex-distributed weights, Gaussian local
// density matrices. The decomposition is returned so soundness tests can
// evaluate sum formulas directly.
struct SeparableSample {
  BipartiteState state;
  std::vector<double> weights;
  std::vector<ComplexMatrix> factors_a;
  std::vector<ComplexMatrix> factors_b;
};

SeparableSample random_separable(int dim_a, int dim_b, int terms, std::uint64_t seed);
SeparableSample random_separable(int dim_a, int dim_b, int terms, Rng& rng);

}  // namespace qsep
