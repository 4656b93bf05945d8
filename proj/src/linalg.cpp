#include "qsep/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qsep {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

namespace {

std::vector<double> solve_hermitian(const ComplexMatrix& m, const char* who) {
  // Symmetrize so that rounding noise in the input cannot push the solver
  // off the Hermitian path.
  ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError(std::string(who) + ": Hermitian eigensolver failed to converge");
  }
  const auto& ev = solver.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

}  // namespace

std::vector<double> singular_values(const ComplexMatrix& a) {
  if (a.size() == 0) return {};
  // Two-sided Jacobi keeps the absolute error of every singular value at
  // machine precision; a Hermitian solve of the Gram matrix would smear the
  // vanishing ones by sqrt(eps), which the saturation checks cannot afford.
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  if (svd.info() != Eigen::Success) {
    throw NumericalError("singular_values: SVD failed to converge");
  }
  const auto& sv = svd.singularValues();
  return std::vector<double>(sv.data(), sv.data() + sv.size());
}

double trace_norm(const ComplexMatrix& a) {
  const std::vector<double> sv = singular_values(a);
  return std::accumulate(sv.begin(), sv.end(), 0.0);
}

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("hs_inner: shape mismatch");
  }
  return a.conjugate().cwiseProduct(b).sum();
}

double operator_norm(const ComplexMatrix& a) {
  const std::vector<double> sv = singular_values(a);
  return sv.empty() ? 0.0 : sv.front();
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("hermitian_eigenvalues: matrix must be square");
  }
  return solve_hermitian(m, "hermitian_eigenvalues");
}

double min_hermitian_eigenvalue(const ComplexMatrix& m) {
  return hermitian_eigenvalues(m).front();
}

bool all_finite(const ComplexMatrix& m) { return m.allFinite(); }

}  // namespace qsep
