#include "qsep/superop.hpp"

#include <cmath>
#include <string>

namespace qsep {

SuperOp::SuperOp(ComplexMatrix left, ComplexMatrix right, Complex phase, bool conjugate_input,
                 bool transpose_input)
    : left_(std::move(left)),
      right_(std::move(right)),
      phase_(phase),
      conjugate_input_(conjugate_input),
      transpose_input_(transpose_input) {
  if (left_.rows() != left_.cols() || right_.rows() != right_.cols() ||
      left_.rows() != right_.rows()) {
    throw std::invalid_argument("SuperOp: left and right factors must be square and equal-sized");
  }
  if (std::abs(std::abs(phase_) - 1.0) > 1e-12) {
    throw std::invalid_argument("SuperOp: phase must have unit modulus");
  }
  if (!all_finite(left_) || !all_finite(right_)) {
    throw std::invalid_argument("SuperOp: non-finite factor entries");
  }
}

SuperOp SuperOp::identity(int dim) {
  return SuperOp(ComplexMatrix::Identity(dim, dim), ComplexMatrix::Identity(dim, dim));
}

SuperOp SuperOp::transposition(int dim) {
  return SuperOp(ComplexMatrix::Identity(dim, dim), ComplexMatrix::Identity(dim, dim),
                 Complex(1.0), false, true);
}

SuperOp SuperOp::conjugation(int dim) {
  return SuperOp(ComplexMatrix::Identity(dim, dim), ComplexMatrix::Identity(dim, dim),
                 Complex(1.0), true, false);
}

SuperOp SuperOp::sandwich(ComplexMatrix x, ComplexMatrix y) {
  return SuperOp(std::move(x), std::move(y));
}

SuperOp SuperOp::unitary_conjugation(const ComplexMatrix& u) {
  return SuperOp(u, u.adjoint());
}

SuperOp SuperOp::times_phase(Complex unit_phase) const {
  return SuperOp(left_, right_, phase_ * unit_phase, conjugate_input_, transpose_input_);
}

ComplexMatrix SuperOp::apply(const ComplexMatrix& a) const {
  if (a.rows() != dim() || a.cols() != dim()) {
    throw std::invalid_argument("SuperOp::apply: operand must be " + std::to_string(dim()) + "x" +
                                std::to_string(dim()));
  }
  ComplexMatrix f;
  if (conjugate_input_ && transpose_input_) {
    f = a.adjoint();
  } else if (conjugate_input_) {
    f = a.conjugate();
  } else if (transpose_input_) {
    f = a.transpose();
  } else {
    f = a;
  }
  return phase_ * (left_ * f * right_);
}

ComplexMatrix apply_composite(const SuperOp& e_a, const SuperOp& e_b, const ComplexMatrix& m,
                              int dim_a, int dim_b) {
  if (e_a.conjugate_input() != e_b.conjugate_input()) {
    throw std::invalid_argument("apply_composite: factors must share one linearity character");
  }
  if (e_a.dim() != dim_a || e_b.dim() != dim_b) {
    throw std::invalid_argument("apply_composite: factor dimensions do not match the bipartition");
  }
  ComplexMatrix g = e_a.conjugate_input() ? ComplexMatrix(m.conjugate()) : m;
  if (e_a.transpose_input()) g = partial_transpose_a(g, dim_a, dim_b);
  if (e_b.transpose_input()) g = partial_transpose_b(g, dim_a, dim_b);
  return (e_a.phase() * e_b.phase()) *
         (kron(e_a.left(), e_b.left()) * g * kron(e_a.right(), e_b.right()));
}

SuperOpFamily::SuperOpFamily(std::vector<SuperOp> ops_a, std::vector<SuperOp> ops_b, double eps_a,
                             double eps_b)
    : ops_a_(std::move(ops_a)), ops_b_(std::move(ops_b)), eps_a_(eps_a), eps_b_(eps_b) {
  if (ops_a_.empty() || ops_a_.size() != ops_b_.size()) {
    throw std::invalid_argument("SuperOpFamily: need n >= 1 operators on each side");
  }
  if (eps_a_ < 0.0 || eps_b_ < 0.0) {
    throw std::invalid_argument("SuperOpFamily: eps bounds must be non-negative");
  }
  const bool anti = ops_a_.front().conjugate_input();
  for (const auto& e : ops_a_) {
    if (e.dim() != ops_a_.front().dim()) {
      throw std::invalid_argument("SuperOpFamily: A-side operators act on different dimensions");
    }
    if (e.conjugate_input() != anti) {
      throw std::invalid_argument(
          "SuperOpFamily: operators must be jointly linear or antilinear");
    }
  }
  for (const auto& e : ops_b_) {
    if (e.dim() != ops_b_.front().dim()) {
      throw std::invalid_argument("SuperOpFamily: B-side operators act on different dimensions");
    }
    if (e.conjugate_input() != anti) {
      throw std::invalid_argument(
          "SuperOpFamily: operators must be jointly linear or antilinear");
    }
  }
}

SuperOpFamily identity_family(int dim_a, int dim_b) {
  return SuperOpFamily({SuperOp::identity(dim_a)}, {SuperOp::identity(dim_b)}, 1.0, 1.0);
}

SuperOpFamily deviation_family(int dim_a, int dim_b) {
  const Complex minus(-1.0);
  return SuperOpFamily({SuperOp::identity(dim_a), SuperOp::identity(dim_a).times_phase(minus)},
                       {SuperOp::identity(dim_b), SuperOp::identity(dim_b).times_phase(minus)},
                       1.0, 1.0);
}

SuperOpFamily partial_transpose_family(int dim_a, int dim_b, double theta) {
  return SuperOpFamily(
      {SuperOp::identity(dim_a).times_phase(std::polar(1.0, theta)), SuperOp::identity(dim_a)},
      {SuperOp::transposition(dim_b).times_phase(std::polar(1.0, -theta)),
       SuperOp::identity(dim_b)},
      1.0, 1.0);
}

namespace {

double tuple_ratio(const std::vector<SuperOp>& ops, Rng& rng) {
  double sum = 0.0;
  for (const auto& e : ops) {
    const ComplexMatrix sigma = random_density_matrix(e.dim(), rng);
    sum += e.apply(sigma).squaredNorm();
  }
  return sum / static_cast<double>(ops.size());
}

}  // namespace

CondicioAudit check_condicio(const SuperOpFamily& fam, int samples, std::uint64_t seed) {
  Rng rng(seed);
  CondicioAudit audit;
  for (int s = 0; s < samples; ++s) {
    audit.worst_ratio_a = std::max(audit.worst_ratio_a, tuple_ratio(fam.ops_a(), rng));
    audit.worst_ratio_b = std::max(audit.worst_ratio_b, tuple_ratio(fam.ops_b(), rng));
  }
  // Slack of 1e-12 so exactly saturating families (e.g. unitary ones) pass.
  audit.ok = audit.worst_ratio_a <= fam.eps_a() + 1e-12 &&
             audit.worst_ratio_b <= fam.eps_b() + 1e-12;
  return audit;
}

double estimate_breve_epsilon(std::span<const SuperOp> ops, int samples, std::uint64_t seed) {
  if (ops.empty()) {
    throw std::invalid_argument("estimate_breve_epsilon: need at least one operator");
  }
  Rng rng(seed);
  double best = 0.0;
  for (int s = 0; s < samples; ++s) {
    double sum = 0.0;
    for (const auto& e : ops) {
      const ComplexMatrix sigma = random_density_matrix(e.dim(), rng);
      sum += e.apply(sigma).squaredNorm();
    }
    best = std::max(best, sum / static_cast<double>(ops.size()));
  }
  return best;
}

ComplexMatrix build_rho_e(const BipartiteState& state, const SuperOpFamily& fam) {
  const int da = state.dim_a();
  const int db = state.dim_b();
  if (fam.dim_a() != da || fam.dim_b() != db) {
    throw std::invalid_argument("build_rho_e: family dimensions do not match the state");
  }
  const ComplexMatrix rho_a = marginal_a(state);
  const ComplexMatrix rho_b = marginal_b(state);
  const int n = fam.n();

  ComplexMatrix out = ComplexMatrix::Zero(state.matrix().rows(), state.matrix().cols());
  for (int k = 0; k < n; ++k) {
    out += apply_composite(fam.ops_a()[k], fam.ops_b()[k], state.matrix(), da, db);
  }
  // On the product rho_A (x) rho_B the composite action factorizes exactly.
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      if (k == l) continue;
      out += kron(fam.ops_a()[k].apply(rho_a), fam.ops_b()[l].apply(rho_b));
    }
  }
  return out / static_cast<double>(n);
}

}  // namespace qsep
