#include "qsep/criteria.hpp"

#include <algorithm>
#include <cmath>

namespace qsep {

namespace {

constexpr double kRadicandFloor = -1e-9;

CriterionReport finish(std::string id, std::map<std::string, double> params, double lhs,
                       double rhs, double tol) {
  CriterionReport r;
  r.criterion_id = std::move(id);
  r.params = std::move(params);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = lhs - rhs;
  r.tol = tol;
  r.violated = r.margin > tol;
  return r;
}

// Square root of an rhs radicand that is non-negative in exact arithmetic.
// Rounding noise down to kRadicandFloor is clamped to zero; anything below
// is a hard error. `upper` guards radicands with a known a-priori bound.
double sqrt_radicand(double radicand, double upper, const char* who) {
  if (radicand < kRadicandFloor) {
    throw NumericalError(std::string(who) + ": rhs radicand " + std::to_string(radicand) +
                         " is negative beyond tolerance");
  }
  if (upper > 0.0 && radicand > upper + 1e-9) {
    throw NumericalError(std::string(who) + ": rhs radicand " + std::to_string(radicand) +
                         " exceeds its bound " + std::to_string(upper));
  }
  return radicand > 0.0 ? std::sqrt(radicand) : 0.0;
}

void check_theta_range(double theta, double max, const char* who) {
  if (theta < -1e-12 || theta > max + 1e-12) {
    throw std::invalid_argument(std::string(who) + ": theta = " + std::to_string(theta) +
                                " outside the admissible range");
  }
}

// tr(m^T m) = sum_ij m_ij^2. Real for Hermitian m, but in general distinct
// from tr(m^2) when m has complex entries.
double transpose_pairing(const ComplexMatrix& m) {
  return m.cwiseProduct(m).sum().real();
}

}  // namespace

CriterionReport rc(const BipartiteState& state, double tol) {
  const double lhs = trace_norm(realign(state.matrix(), state.dim_a(), state.dim_b()));
  return finish("rc", {}, lhs, 1.0, tol);
}

CriterionReport zhang(const BipartiteState& state, double tol) {
  const ComplexMatrix rho_a = marginal_a(state);
  const ComplexMatrix rho_b = marginal_b(state);
  const ComplexMatrix diff = state.matrix() - kron(rho_a, rho_b);
  const double lhs = trace_norm(realign(diff, state.dim_a(), state.dim_b()));
  const double rhs = sqrt_radicand((1.0 - purity(rho_a)) * (1.0 - purity(rho_b)), 1.0, "zhang");
  return finish("zhang", {}, lhs, rhs, tol);
}

CriterionReport omega_family(const BipartiteState& state, double omega, double theta, double phi,
                             double tol) {
  const ComplexMatrix rho_a = marginal_a(state);
  const ComplexMatrix rho_b = marginal_b(state);
  const Complex c_state = 0.5 * (std::polar(1.0, omega) + std::polar(1.0, omega + theta + phi));
  const Complex c_marginals = 0.5 * (std::polar(1.0, omega + theta) + std::polar(1.0, omega + phi));
  const ComplexMatrix op = c_state * state.matrix() + c_marginals * kron(rho_a, rho_b);
  const double lhs = trace_norm(realign(op, state.dim_a(), state.dim_b()));
  const double rhs = sqrt_radicand(1.0 + std::cos(theta) * purity(rho_a), 2.0, "omega_family") *
                     sqrt_radicand(1.0 + std::cos(phi) * purity(rho_b), 2.0, "omega_family");
  return finish("omega", {{"omega", omega}, {"theta", theta}, {"phi", phi}}, lhs, rhs, tol);
}

CriterionReport theta_criterion(const BipartiteState& state, double theta, double tol) {
  check_theta_range(theta, M_PI, "theta_criterion");
  CriterionReport r = omega_family(state, 0.0, theta, -theta, tol);
  r.criterion_id = "theta";
  r.params = {{"theta", theta}};
  return r;
}

CriterionReport mirror_theta_criterion(const BipartiteState& state, double theta, double tol) {
  if (theta < -1e-12 || theta >= 2.0 * M_PI) {
    throw std::invalid_argument("mirror_theta_criterion: theta = " + std::to_string(theta) +
                                " outside [0, 2*pi)");
  }
  CriterionReport r = omega_family(state, 0.0, theta, theta, tol);
  r.criterion_id = "mirror_theta";
  r.params = {{"theta", theta}};
  return r;
}

CriterionReport transpose_theta_criterion(const BipartiteState& state, double theta, double tol) {
  check_theta_range(theta, M_PI, "transpose_theta_criterion");
  const ComplexMatrix rho_a = marginal_a(state);
  const ComplexMatrix rho_b = marginal_b(state);
  const ComplexMatrix rho_bt = rho_b.transpose();
  const ComplexMatrix op =
      0.5 * (partial_transpose_b(state) + state.matrix()) +
      0.5 * (std::polar(1.0, theta) * kron(rho_a, rho_b) +
             std::polar(1.0, -theta) * kron(rho_a, rho_bt));
  const double lhs = trace_norm(realign(op, state.dim_a(), state.dim_b()));
  const double c = std::cos(theta);
  const double rhs = sqrt_radicand((1.0 + c * purity(rho_a)) * (1.0 + c * transpose_pairing(rho_b)),
                                   4.0, "transpose_theta_criterion");
  return finish("transpose_theta", {{"theta", theta}}, lhs, rhs, tol);
}

CriterionReport filter_criterion(const BipartiteState& state, const ComplexMatrix& f_a,
                                 const ComplexMatrix& f_b, double theta, double tol) {
  check_theta_range(theta, M_PI, "filter_criterion");
  const double norm_a = operator_norm(f_a);
  const double norm_b = operator_norm(f_b);
  if (norm_a > 1.0 + kDefaultTol || norm_b > 1.0 + kDefaultTol) {
    throw std::invalid_argument(
        "filter_criterion: filters must be contractions; rescale by 1/operator_norm "
        "(got |f_a| = " +
        std::to_string(norm_a) + ", |f_b| = " + std::to_string(norm_b) + ")");
  }
  if (f_a.rows() != state.dim_a() || f_a.cols() != state.dim_a() || f_b.rows() != state.dim_b() ||
      f_b.cols() != state.dim_b()) {
    throw std::invalid_argument("filter_criterion: filter dimensions do not match the state");
  }
  const ComplexMatrix filtered_a = f_a * marginal_a(state) * f_a.adjoint();
  const ComplexMatrix filtered_b = f_b * marginal_b(state) * f_b.adjoint();
  const ComplexMatrix big = kron(f_a, f_b);
  const double c = std::cos(theta);
  const ComplexMatrix op =
      big * state.matrix() * big.adjoint() + c * kron(filtered_a, filtered_b);
  const double lhs = trace_norm(realign(op, state.dim_a(), state.dim_b()));
  const double rhs = sqrt_radicand(1.0 + c * purity(filtered_a), 2.0, "filter_criterion") *
                     sqrt_radicand(1.0 + c * purity(filtered_b), 2.0, "filter_criterion");
  return finish("filter", {{"theta", theta}}, lhs, rhs, tol);
}

CriterionReport generalized_rc(const BipartiteState& state, const SuperOpFamily& fam, double tol) {
  const double lhs =
      trace_norm(realign(build_rho_e(state, fam), state.dim_a(), state.dim_b()));
  const ComplexMatrix rho_a = marginal_a(state);
  const ComplexMatrix rho_b = marginal_b(state);
  const int n = fam.n();
  double cross_a = 0.0;
  double cross_b = 0.0;
  for (int k = 0; k < n; ++k) {
    for (int l = k + 1; l < n; ++l) {
      cross_a += 2.0 * hs_inner(fam.ops_a()[k].apply(rho_a), fam.ops_a()[l].apply(rho_a)).real();
      cross_b += 2.0 * hs_inner(fam.ops_b()[k].apply(rho_b), fam.ops_b()[l].apply(rho_b)).real();
    }
  }
  const double rad_a = fam.eps_a() + cross_a / n;
  const double rad_b = fam.eps_b() + cross_b / n;
  const double rhs = sqrt_radicand(rad_a, 0.0, "generalized_rc (check eps_a)") *
                     sqrt_radicand(rad_b, 0.0, "generalized_rc (check eps_b)");
  return finish("generalized_rc", {{"n", static_cast<double>(n)}}, lhs, rhs, tol);
}

CriterionReport ppt_check(const BipartiteState& state, double tol) {
  const double min_eig = min_hermitian_eigenvalue(partial_transpose_b(state));
  const double lhs = std::max(0.0, -min_eig);
  return finish("ppt", {{"min_eigenvalue", min_eig}}, lhs, 0.0, tol);
}

const std::vector<double>& default_theta_grid() {
  static const std::vector<double> grid = {0.0, M_PI / 4.0, M_PI / 2.0, 3.0 * M_PI / 4.0, M_PI};
  return grid;
}

std::vector<CriterionReport> run_all(const BipartiteState& state,
                                     const std::vector<double>& theta_grid, double tol,
                                     std::vector<std::string>* errors) {
  std::vector<double> grid = theta_grid.empty() ? default_theta_grid() : theta_grid;
  std::sort(grid.begin(), grid.end());

  std::vector<CriterionReport> reports;
  auto attempt = [&](const char* id, auto&& eval) {
    try {
      reports.push_back(eval());
    } catch (const std::exception& ex) {
      if (errors) errors->push_back(std::string(id) + ": " + ex.what());
    }
  };

  attempt("ppt", [&] { return ppt_check(state, tol); });
  attempt("rc", [&] { return rc(state, tol); });
  for (double theta : grid) {
    attempt("theta", [&] { return theta_criterion(state, theta, tol); });
  }
  for (double theta : grid) {
    attempt("transpose_theta", [&] { return transpose_theta_criterion(state, theta, tol); });
  }
  attempt("zhang", [&] { return zhang(state, tol); });
  return reports;
}

}  // namespace qsep
