#include "qsep/random.hpp"

#include <Eigen/QR>

#include <cmath>

namespace qsep {

ComplexMatrix random_gaussian_matrix(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

ComplexMatrix random_density_matrix(int dim, Rng& rng) {
  const ComplexMatrix g = random_gaussian_matrix(dim, dim, rng);
  ComplexMatrix w = g * g.adjoint();
  return w / w.trace().real();
}

ComplexMatrix random_unitary(int dim, Rng& rng) {
  const ComplexMatrix g = random_gaussian_matrix(dim, dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phases of Q so the distribution is Haar.
  for (int j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    const double a = std::abs(d);
    q.col(j) *= (a > 0.0) ? d / a : Complex(1.0);
  }
  return q;
}

ComplexMatrix random_pure_coefficients(int dim_a, int dim_b, Rng& rng) {
  ComplexMatrix psi = random_gaussian_matrix(dim_a, dim_b, rng);
  return psi / psi.norm();
}

}  // namespace qsep
