#include "qsep/superop.hpp"
#include "qsep/states.hpp"

#include "oracles.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

using namespace qsep;
using qsep::testing::fonda_double_sum;
using qsep::testing::max_abs_diff;
using qsep::testing::random_contraction_family;

namespace {

// Composite action evaluated entry by entry on the partial-isometry basis:
// expands m = sum c |m><n| (x) |mu><nu| and maps each basis element through
// the factor maps, conjugating the coefficient for antilinear families.
ComplexMatrix composite_by_basis_expansion(const SuperOp& ea, const SuperOp& eb,
                                           const ComplexMatrix& m, int da, int db) {
  ComplexMatrix out = ComplexMatrix::Zero(da * db, da * db);
  for (int i = 0; i < da; ++i) {
    for (int j = 0; j < da; ++j) {
      ComplexMatrix e_a = ComplexMatrix::Zero(da, da);
      e_a(i, j) = 1.0;
      const ComplexMatrix mapped_a = ea.apply(e_a);
      for (int mu = 0; mu < db; ++mu) {
        for (int nu = 0; nu < db; ++nu) {
          ComplexMatrix e_b = ComplexMatrix::Zero(db, db);
          e_b(mu, nu) = 1.0;
          Complex c = m(i * db + mu, j * db + nu);
          if (ea.antilinear()) c = std::conj(c);
          out += c * kron(mapped_a, eb.apply(e_b));
        }
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("apply: identity, transposition, sandwich") {
  Rng rng(211);
  const ComplexMatrix a = random_gaussian_matrix(3, 3, rng);
  CHECK(max_abs_diff((SuperOp::identity(3)).apply(a), a) == 0.0);
  CHECK(max_abs_diff((SuperOp::transposition(3)).apply(a), a.transpose()) == 0.0);
  const ComplexMatrix f = random_gaussian_matrix(3, 3, rng);
  CHECK(max_abs_diff((SuperOp::sandwich(f, f.adjoint())).apply(a), f * a * f.adjoint()) < 1e-12);
  CHECK_THROWS_AS((SuperOp::identity(2)).apply(a), std::invalid_argument);
}

TEST_CASE("apply is exactly linear or antilinear") {
  Rng rng(223);
  const ComplexMatrix a = random_gaussian_matrix(3, 3, rng);
  const ComplexMatrix b = random_gaussian_matrix(3, 3, rng);
  const Complex alpha(0.3, 0.8), beta(-1.1, 0.2);
  const SuperOp linear(random_gaussian_matrix(3, 3, rng), random_gaussian_matrix(3, 3, rng),
                       std::polar(1.0, 0.4), false, true);
  CHECK(max_abs_diff(linear.apply(alpha * a + beta * b),
                     alpha * linear.apply(a) + beta * linear.apply(b)) < 1e-12);
  const SuperOp anti(random_gaussian_matrix(3, 3, rng), random_gaussian_matrix(3, 3, rng),
                     std::polar(1.0, -1.2), true, false);
  CHECK(max_abs_diff(anti.apply(alpha * a + beta * b),
                     std::conj(alpha) * anti.apply(a) + std::conj(beta) * anti.apply(b)) <
        1e-12);
}

TEST_CASE("unit phase is required") {
  CHECK_THROWS_AS(SuperOp::identity(2).times_phase(Complex(0.5, 0.0)), std::invalid_argument);
}

TEST_CASE("family construction enforces joint linearity") {
  std::vector<SuperOp> ops_a = {SuperOp::identity(2), SuperOp::conjugation(2)};
  std::vector<SuperOp> ops_b = {SuperOp::identity(2), SuperOp::identity(2)};
  CHECK_THROWS_AS(SuperOpFamily(std::move(ops_a), std::move(ops_b), 1.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("condicio audit accepts unitary families and rejects eps = 0") {
  Rng rng(227);
  std::vector<SuperOp> ua = {SuperOp::unitary_conjugation(random_unitary(2, rng)),
                             SuperOp::unitary_conjugation(random_unitary(2, rng))};
  std::vector<SuperOp> ub = {SuperOp::unitary_conjugation(random_unitary(3, rng)),
                             SuperOp::unitary_conjugation(random_unitary(3, rng))};
  const SuperOpFamily unitary_fam(std::move(ua), std::move(ub), 1.0, 1.0);
  const CondicioAudit good = check_condicio(unitary_fam, 100, 7);
  CHECK(good.ok);
  CHECK(good.worst_ratio_a <= 1.0 + 1e-12);
  CHECK(good.worst_ratio_b <= 1.0 + 1e-12);

  const SuperOpFamily degenerate({SuperOp::identity(2)}, {SuperOp::identity(3)}, 0.0, 0.0);
  CHECK_FALSE(check_condicio(degenerate, 50, 7).ok);
}

TEST_CASE("condicio audit accepts the transpose-based family") {
  const SuperOpFamily fam = partial_transpose_family(3, 3, 0.7);
  CHECK(check_condicio(fam, 100, 11).ok);
}

TEST_CASE("breve-epsilon estimates") {
  const std::vector<SuperOp> identity = {SuperOp::identity(2)};
  const double est = estimate_breve_epsilon(identity, 400, 13);
  CHECK(est <= 1.0 + 1e-12);
  CHECK(est > 0.6);  // pure states approach the supremum 1

  const std::vector<SuperOp> halved = {
      SuperOp::sandwich(0.5 * ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2))};
  const double est_half = estimate_breve_epsilon(halved, 400, 13);
  CHECK(est_half <= 0.25 + 1e-12);
  CHECK(est_half > 0.15);

  Rng rng(229);
  const std::vector<SuperOp> unitaries = {SuperOp::unitary_conjugation(random_unitary(3, rng)),
                                          SuperOp::unitary_conjugation(random_unitary(3, rng))};
  const double est_u = estimate_breve_epsilon(unitaries, 400, 17);
  CHECK(est_u <= 1.0 + 1e-12);
  CHECK(est_u > 0.5);
}

TEST_CASE("breve-epsilon is monotone in the sample count for a fixed seed") {
  const std::vector<SuperOp> ops = {SuperOp::identity(3)};
  const double few = estimate_breve_epsilon(ops, 20, 41);
  const double many = estimate_breve_epsilon(ops, 200, 41);
  CHECK(many >= few);
}

TEST_CASE("build_rho_e: identity family returns the state") {
  const SeparableSample sample = random_separable(2, 3, 4, 303);
  const ComplexMatrix out = build_rho_e(sample.state, identity_family(2, 3));
  CHECK(max_abs_diff(out, sample.state.matrix()) == 0.0);
}

TEST_CASE("build_rho_e: deviation family subtracts the product of marginals") {
  const SeparableSample sample = random_separable(2, 2, 3, 307);
  const ComplexMatrix out = build_rho_e(sample.state, deviation_family(2, 2));
  const ComplexMatrix expected =
      sample.state.matrix() - kron(marginal_a(sample.state), marginal_b(sample.state));
  CHECK(max_abs_diff(out, expected) < 1e-15);
}

TEST_CASE("build_rho_e equals the decomposition double sum") {
  Rng rng(311);
  std::uniform_int_distribution<int> n_dist(1, 3);
  std::uniform_int_distribution<int> terms_dist(1, 6);
  std::uniform_int_distribution<int> dim_dist(2, 3);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int trial = 0; trial < 30; ++trial) {
    const int da = dim_dist(rng), db = dim_dist(rng);
    const SeparableSample sample = random_separable(da, db, terms_dist(rng), rng);
    const SuperOpFamily fam = random_contraction_family(da, db, n_dist(rng), coin(rng) == 1, rng);
    CHECK(max_abs_diff(build_rho_e(sample.state, fam), fonda_double_sum(sample, fam)) < 1e-10);
  }
}

TEST_CASE("build_rho_e is invariant under permuting the family index") {
  const SeparableSample sample = random_separable(2, 2, 4, 313);
  Rng rng(317);
  const SuperOpFamily fam = random_contraction_family(2, 2, 3, false, rng);
  std::vector<SuperOp> pa = {fam.ops_a()[2], fam.ops_a()[0], fam.ops_a()[1]};
  std::vector<SuperOp> pb = {fam.ops_b()[2], fam.ops_b()[0], fam.ops_b()[1]};
  const SuperOpFamily permuted(std::move(pa), std::move(pb), fam.eps_a(), fam.eps_b());
  CHECK(max_abs_diff(build_rho_e(sample.state, fam), build_rho_e(sample.state, permuted)) <
        1e-12);
}

TEST_CASE("composite action matches the index-expanded oracle") {
  Rng rng(331);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  for (int trial = 0; trial < 20; ++trial) {
    const bool anti = coin(rng) == 1;
    const SuperOp ea(random_gaussian_matrix(2, 2, rng), random_gaussian_matrix(2, 2, rng),
                     std::polar(1.0, angle(rng)), anti, coin(rng) == 1);
    const SuperOp eb(random_gaussian_matrix(2, 2, rng), random_gaussian_matrix(2, 2, rng),
                     std::polar(1.0, angle(rng)), anti, coin(rng) == 1);
    const ComplexMatrix m = random_gaussian_matrix(4, 4, rng);
    CHECK(max_abs_diff(apply_composite(ea, eb, m, 2, 2),
                       composite_by_basis_expansion(ea, eb, m, 2, 2)) < 1e-12);
  }
}

TEST_CASE("composite action factorizes on product operators") {
  Rng rng(337);
  const SuperOp ea(random_gaussian_matrix(2, 2, rng), random_gaussian_matrix(2, 2, rng),
                   std::polar(1.0, 0.3), true, true);
  const SuperOp eb(random_gaussian_matrix(3, 3, rng), random_gaussian_matrix(3, 3, rng),
                   std::polar(1.0, -0.9), true, false);
  const ComplexMatrix p = random_gaussian_matrix(2, 2, rng);
  const ComplexMatrix q = random_gaussian_matrix(3, 3, rng);
  CHECK(max_abs_diff(apply_composite(ea, eb, kron(p, q), 2, 3),
                     kron(ea.apply(p), eb.apply(q))) < 1e-12);
}
