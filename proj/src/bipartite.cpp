#include "qsep/bipartite.hpp"

#include <cmath>
#include <string>

namespace qsep {

namespace {

void check_composite_shape(const ComplexMatrix& op, int dim_a, int dim_b, const char* who) {
  if (dim_a < 2 || dim_b < 2) {
    throw std::invalid_argument(std::string(who) + ": local dimensions must be >= 2");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(dim_a) * dim_b;
  if (op.rows() != n || op.cols() != n) {
    throw std::invalid_argument(std::string(who) + ": expected a " + std::to_string(n) + "x" +
                                std::to_string(n) + " matrix, got " + std::to_string(op.rows()) +
                                "x" + std::to_string(op.cols()));
  }
}

}  // namespace

BipartiteState::BipartiteState(int dim_a, int dim_b, ComplexMatrix matrix)
    : dim_a_(dim_a), dim_b_(dim_b), matrix_(std::move(matrix)) {
  check_composite_shape(matrix_, dim_a_, dim_b_, "BipartiteState");
  if (!all_finite(matrix_)) {
    throw std::invalid_argument("BipartiteState: matrix has non-finite entries");
  }
  const double herm_defect = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (herm_defect > kHermitianTol) {
    throw std::invalid_argument("BipartiteState: not Hermitian (defect " +
                                std::to_string(herm_defect) + ")");
  }
  const Complex tr = matrix_.trace();
  if (std::abs(tr - Complex(1.0)) > kTraceTol) {
    throw std::invalid_argument("BipartiteState: trace is not 1 (got " + std::to_string(tr.real()) +
                                (tr.imag() >= 0 ? "+" : "") + std::to_string(tr.imag()) + "i)");
  }
  const double min_eig = min_hermitian_eigenvalue(matrix_);
  if (min_eig < kEigenvalueFloor) {
    throw std::invalid_argument("BipartiteState: not positive semidefinite (min eigenvalue " +
                                std::to_string(min_eig) + ")");
  }
}

BipartiteState::BipartiteState(SkipValidation, int dim_a, int dim_b, ComplexMatrix matrix)
    : dim_a_(dim_a), dim_b_(dim_b), matrix_(std::move(matrix)) {
  check_composite_shape(matrix_, dim_a_, dim_b_, "BipartiteState::unchecked");
}

BipartiteState BipartiteState::unchecked(int dim_a, int dim_b, ComplexMatrix matrix) {
  return BipartiteState(SkipValidation{}, dim_a, dim_b, std::move(matrix));
}

PureCoefficients::PureCoefficients(ComplexMatrix psi) : psi_(std::move(psi)) {
  if (psi_.rows() < 2 || psi_.cols() < 2) {
    throw std::invalid_argument("PureCoefficients: local dimensions must be >= 2");
  }
  if (!all_finite(psi_)) {
    throw std::invalid_argument("PureCoefficients: non-finite entries");
  }
  const double norm2 = psi_.squaredNorm();
  if (std::abs(norm2 - 1.0) > kDefaultTol) {
    throw std::invalid_argument("PureCoefficients: squared norm is " + std::to_string(norm2) +
                                ", expected 1");
  }
}

ComplexMatrix realign(const ComplexMatrix& op, int dim_a, int dim_b) {
  check_composite_shape(op, dim_a, dim_b, "realign");
  ComplexMatrix out(static_cast<Eigen::Index>(dim_a) * dim_a,
                    static_cast<Eigen::Index>(dim_b) * dim_b);
  for (int m = 0; m < dim_a; ++m) {
    for (int n = 0; n < dim_a; ++n) {
      for (int mu = 0; mu < dim_b; ++mu) {
        for (int nu = 0; nu < dim_b; ++nu) {
          out(m * dim_a + n, mu * dim_b + nu) = op(m * dim_b + mu, n * dim_b + nu);
        }
      }
    }
  }
  return out;
}

ComplexMatrix unrealign(const ComplexMatrix& r, int dim_a, int dim_b) {
  if (r.rows() != static_cast<Eigen::Index>(dim_a) * dim_a ||
      r.cols() != static_cast<Eigen::Index>(dim_b) * dim_b) {
    throw std::invalid_argument("unrealign: expected a " + std::to_string(dim_a * dim_a) + "x" +
                                std::to_string(dim_b * dim_b) + " matrix");
  }
  ComplexMatrix out(static_cast<Eigen::Index>(dim_a) * dim_b,
                    static_cast<Eigen::Index>(dim_a) * dim_b);
  for (int m = 0; m < dim_a; ++m) {
    for (int n = 0; n < dim_a; ++n) {
      for (int mu = 0; mu < dim_b; ++mu) {
        for (int nu = 0; nu < dim_b; ++nu) {
          out(m * dim_b + mu, n * dim_b + nu) = r(m * dim_a + n, mu * dim_b + nu);
        }
      }
    }
  }
  return out;
}

ComplexMatrix marginal_a(const ComplexMatrix& op, int dim_a, int dim_b) {
  check_composite_shape(op, dim_a, dim_b, "marginal_a");
  ComplexMatrix out = ComplexMatrix::Zero(dim_a, dim_a);
  for (int m = 0; m < dim_a; ++m) {
    for (int n = 0; n < dim_a; ++n) {
      for (int mu = 0; mu < dim_b; ++mu) {
        out(m, n) += op(m * dim_b + mu, n * dim_b + mu);
      }
    }
  }
  return out;
}

ComplexMatrix marginal_b(const ComplexMatrix& op, int dim_a, int dim_b) {
  check_composite_shape(op, dim_a, dim_b, "marginal_b");
  ComplexMatrix out = ComplexMatrix::Zero(dim_b, dim_b);
  for (int mu = 0; mu < dim_b; ++mu) {
    for (int nu = 0; nu < dim_b; ++nu) {
      for (int m = 0; m < dim_a; ++m) {
        out(mu, nu) += op(m * dim_b + mu, m * dim_b + nu);
      }
    }
  }
  return out;
}

ComplexMatrix marginal_a(const BipartiteState& state) {
  return marginal_a(state.matrix(), state.dim_a(), state.dim_b());
}

ComplexMatrix marginal_b(const BipartiteState& state) {
  return marginal_b(state.matrix(), state.dim_a(), state.dim_b());
}

ComplexMatrix partial_transpose_a(const ComplexMatrix& op, int dim_a, int dim_b) {
  check_composite_shape(op, dim_a, dim_b, "partial_transpose_a");
  ComplexMatrix out(op.rows(), op.cols());
  for (int m = 0; m < dim_a; ++m) {
    for (int n = 0; n < dim_a; ++n) {
      for (int mu = 0; mu < dim_b; ++mu) {
        for (int nu = 0; nu < dim_b; ++nu) {
          out(m * dim_b + mu, n * dim_b + nu) = op(n * dim_b + mu, m * dim_b + nu);
        }
      }
    }
  }
  return out;
}

ComplexMatrix partial_transpose_b(const ComplexMatrix& op, int dim_a, int dim_b) {
  check_composite_shape(op, dim_a, dim_b, "partial_transpose_b");
  ComplexMatrix out(op.rows(), op.cols());
  for (int m = 0; m < dim_a; ++m) {
    for (int n = 0; n < dim_a; ++n) {
      for (int mu = 0; mu < dim_b; ++mu) {
        for (int nu = 0; nu < dim_b; ++nu) {
          out(m * dim_b + mu, n * dim_b + nu) = op(m * dim_b + nu, n * dim_b + mu);
        }
      }
    }
  }
  return out;
}

ComplexMatrix partial_transpose_b(const BipartiteState& state) {
  return partial_transpose_b(state.matrix(), state.dim_a(), state.dim_b());
}

std::vector<double> schmidt_coefficients(const ComplexMatrix& op, int dim_a, int dim_b) {
  return singular_values(realign(op, dim_a, dim_b));
}

BipartiteState pure_state(const PureCoefficients& coeffs) {
  const int da = coeffs.dim_a();
  const int db = coeffs.dim_b();
  // Flatten psi row-major so that component (m,mu) sits at m*N_B + mu.
  Eigen::VectorXcd v(static_cast<Eigen::Index>(da) * db);
  for (int m = 0; m < da; ++m) {
    for (int mu = 0; mu < db; ++mu) {
      v(m * db + mu) = coeffs.psi()(m, mu);
    }
  }
  return BipartiteState(da, db, v * v.adjoint());
}

double purity(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("purity: matrix must be square");
  }
  // tr(m^2) = sum_ij m_ij m_ji
  return m.cwiseProduct(m.transpose()).sum().real();
}

}  // namespace qsep
