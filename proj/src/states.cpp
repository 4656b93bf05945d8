#include "qsep/states.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qsep {

namespace {

void check_unit_interval(double x, const char* name, const char* who) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument(std::string(who) + ": " + name + " = " + std::to_string(x) +
                                " outside [0, 1]");
  }
}

}  // namespace

BipartiteState horodecki_a(double a) {
  check_unit_interval(a, "a", "horodecki_a");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(9, 9);
  for (int i = 0; i < 9; ++i) m(i, i) = a;
  // The three corner couplings of the |11>+|22>+|33> block.
  m(0, 4) = m(4, 0) = a;
  m(0, 8) = m(8, 0) = a;
  m(4, 8) = m(8, 4) = a;
  // Lower-right sector.
  const double half = 0.5 * (1.0 + a);
  const double cross = 0.5 * std::sqrt(1.0 - a * a);
  m(6, 6) = half;
  m(8, 8) = half;
  m(6, 8) = m(8, 6) = cross;
  return BipartiteState(3, 3, (m / (8.0 * a + 1.0)).cast<Complex>());
}

BipartiteState horodecki_mixture(double a, double p) {
  check_unit_interval(a, "a", "horodecki_mixture");
  check_unit_interval(p, "p", "horodecki_mixture");
  const ComplexMatrix mixed =
      p * horodecki_a(a).matrix() + ((1.0 - p) / 9.0) * ComplexMatrix::Identity(9, 9);
  return BipartiteState(3, 3, mixed);
}

BipartiteState two_qubit_tsr(double t, double s, double r) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 4);
  m(0, 0) = 1.0 + r;
  m(0, 3) = m(3, 0) = t;
  m(2, 2) = s - r;
  m(3, 3) = 1.0 - s;
  return BipartiteState(2, 2, (0.5 * m).cast<Complex>());
}

BipartiteState max_entangled(int d) {
  if (d < 2) {
    throw std::invalid_argument("max_entangled: d must be >= 2");
  }
  const ComplexMatrix psi = ComplexMatrix::Identity(d, d) / std::sqrt(static_cast<double>(d));
  return pure_state(PureCoefficients(psi));
}

BipartiteState isotropic_identity_mixture(int d, double p) {
  if (d < 2) {
    throw std::invalid_argument("isotropic_identity_mixture: d must be >= 2");
  }
  check_unit_interval(p, "p", "isotropic_identity_mixture");
  const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
  const ComplexMatrix mixed =
      p * max_entangled(d).matrix() + ((1.0 - p) / static_cast<double>(n)) * ComplexMatrix::Identity(n, n);
  return BipartiteState(d, d, mixed);
}

Family family_from_string(const std::string& name) {
  if (name == "horodecki_a") return Family::horodecki_a;
  if (name == "horodecki_mixture") return Family::horodecki_mixture;
  if (name == "two_qubit_tsr") return Family::two_qubit_tsr;
  if (name == "max_entangled") return Family::max_entangled;
  if (name == "isotropic_identity_mixture") return Family::isotropic_identity_mixture;
  throw std::invalid_argument("unknown family '" + name + "'");
}

std::string family_name(Family family) {
  switch (family) {
    case Family::horodecki_a: return "horodecki_a";
    case Family::horodecki_mixture: return "horodecki_mixture";
    case Family::two_qubit_tsr: return "two_qubit_tsr";
    case Family::max_entangled: return "max_entangled";
    case Family::isotropic_identity_mixture: return "isotropic_identity_mixture";
  }
  throw std::logic_error("family_name: unreachable");
}

const std::vector<std::string>& family_parameter_names(Family family) {
  static const std::vector<std::string> a_only = {"a"};
  static const std::vector<std::string> a_p = {"a", "p"};
  static const std::vector<std::string> t_s_r = {"t", "s", "r"};
  static const std::vector<std::string> dim_only = {"dim"};
  static const std::vector<std::string> dim_p = {"dim", "p"};
  switch (family) {
    case Family::horodecki_a: return a_only;
    case Family::horodecki_mixture: return a_p;
    case Family::two_qubit_tsr: return t_s_r;
    case Family::max_entangled: return dim_only;
    case Family::isotropic_identity_mixture: return dim_p;
  }
  throw std::logic_error("family_parameter_names: unreachable");
}

namespace {

void reject_unknown_params(const FamilyParams& params) {
  const auto& known = family_parameter_names(params.family);
  for (const auto& [name, value] : params.values) {
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      throw std::invalid_argument("family '" + family_name(params.family) +
                                  "' has no parameter '" + name + "'");
    }
  }
}

double require_param(const FamilyParams& params, const char* name) {
  const auto it = params.values.find(name);
  if (it == params.values.end()) {
    throw std::invalid_argument("family '" + family_name(params.family) +
                                "' requires parameter '" + name + "'");
  }
  return it->second;
}

int require_int_param(const FamilyParams& params, const char* name) {
  const double v = require_param(params, name);
  const double rounded = std::llround(v);
  if (std::abs(v - rounded) > 1e-9) {
    throw std::invalid_argument(std::string("parameter '") + name + "' must be an integer");
  }
  return static_cast<int>(rounded);
}

}  // namespace

BipartiteState make_family_state(const FamilyParams& params) {
  reject_unknown_params(params);
  switch (params.family) {
    case Family::horodecki_a:
      return horodecki_a(require_param(params, "a"));
    case Family::horodecki_mixture:
      return horodecki_mixture(require_param(params, "a"), require_param(params, "p"));
    case Family::two_qubit_tsr:
      return two_qubit_tsr(require_param(params, "t"), require_param(params, "s"),
                           require_param(params, "r"));
    case Family::max_entangled:
      return max_entangled(require_int_param(params, "dim"));
    case Family::isotropic_identity_mixture:
      return isotropic_identity_mixture(require_int_param(params, "dim"),
                                        require_param(params, "p"));
  }
  throw std::logic_error("make_family_state: unreachable");
}

SeparableSample random_separable(int dim_a, int dim_b, int terms, Rng& rng) {
  if (terms < 1) {
    throw std::invalid_argument("random_separable: terms must be >= 1");
  }
  std::vector<double> weights(terms);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  double total = 0.0;
  for (int i = 0; i < terms; ++i) {
    // Exponential spacings give a uniform draw from the simplex.
    double u = uniform(rng);
    if (u < 1e-300) u = 1e-300;
    weights[i] = -std::log(u);
    total += weights[i];
  }
  std::vector<ComplexMatrix> factors_a;
  std::vector<ComplexMatrix> factors_b;
  const Eigen::Index n = static_cast<Eigen::Index>(dim_a) * dim_b;
  ComplexMatrix mixture = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < terms; ++i) {
    weights[i] /= total;
    factors_a.push_back(random_density_matrix(dim_a, rng));
    factors_b.push_back(random_density_matrix(dim_b, rng));
    mixture += weights[i] * kron(factors_a[i], factors_b[i]);
  }
  return SeparableSample{BipartiteState(dim_a, dim_b, std::move(mixture)), std::move(weights),
                         std::move(factors_a), std::move(factors_b)};
}

SeparableSample random_separable(int dim_a, int dim_b, int terms, std::uint64_t seed) {
  Rng rng(seed);
  return random_separable(dim_a, dim_b, terms, rng);
}

}  // namespace qsep
