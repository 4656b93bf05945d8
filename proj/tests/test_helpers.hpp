#pragma once

#include "qsep/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace qsep::testing {

// Cyclic Jacobi eigensolver for Hermitian matrices. Deliberately written
// from scratch so it shares no code path with the library solver; used as
// the independent oracle for singular-value and eigenvalue checks.
inline std::vector<double> jacobi_hermitian_eigenvalues(ComplexMatrix h) {
  const int n = static_cast<int>(h.rows());
  const double scale = std::max(1.0, h.norm());
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) off += std::norm(h(p, q));
    }
    if (std::sqrt(off) < 1e-15 * scale) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const Complex b = h(p, q);
        const double ab = std::abs(b);
        if (ab < 1e-300) continue;
        const Complex eip = b / ab;
        const double a = h(p, p).real();
        const double d = h(q, q).real();
        const double tau = (a - d) / (2.0 * ab);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int j = 0; j < n; ++j) {  // H <- H U
          const Complex hp = h(j, p), hq = h(j, q);
          h(j, p) = c * hp + s * std::conj(eip) * hq;
          h(j, q) = -s * eip * hp + c * hq;
        }
        for (int j = 0; j < n; ++j) {  // H <- U^dag H
          const Complex hp = h(p, j), hq = h(q, j);
          h(p, j) = c * hp + s * eip * hq;
          h(q, j) = -s * std::conj(eip) * hp + c * hq;
        }
      }
    }
  }
  std::vector<double> eigs(n);
  for (int i = 0; i < n; ++i) eigs[i] = h(i, i).real();
  std::sort(eigs.begin(), eigs.end());
  return eigs;
}

// Singular values through the oracle eigensolver on A^dag A, descending,
// truncated to the min(rows, cols) values an SVD yields.
inline std::vector<double> singular_values_oracle(const ComplexMatrix& a) {
  const std::vector<double> eigs = jacobi_hermitian_eigenvalues(a.adjoint() * a);
  std::vector<double> sv;
  const std::size_t count = static_cast<std::size_t>(std::min(a.rows(), a.cols()));
  for (auto it = eigs.rbegin(); it != eigs.rend() && sv.size() < count; ++it) {
    sv.push_back(*it > 0.0 ? std::sqrt(*it) : 0.0);
  }
  return sv;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = std::abs(static_cast<double>(a.size()) - static_cast<double>(b.size()));
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

}  // namespace qsep::testing
