#include "weyl/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

namespace weyl {

namespace {

void check_index(const AlgebraParams& p, int i, const char* what) {
  if (i < 0 || i >= p.n()) {
    throw std::out_of_range(std::string(what) + ": index " + std::to_string(i) +
                            " outside [0, " + std::to_string(p.n()) + ")");
  }
}

Matrix dft_matrix(const AlgebraParams& p) {
  const int n = p.n();
  Matrix f(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) f(i, j) = p.omega_pow(static_cast<long long>(i) * j) * scale;
  }
  return f;
}

void require_same_n(const AlgebraParams& a, const AlgebraParams& b) {
  if (!(a == b)) throw ParameterMismatch(a.n(), b.n());
}

}  // namespace

std::string_view to_string(Basis b) {
  return b == Basis::position ? "position" : "momentum";
}

Basis basis_from_string(std::string_view s) {
  if (s == "position") return Basis::position;
  if (s == "momentum") return Basis::momentum;
  throw std::invalid_argument("unknown basis tag: " + std::string(s));
}

void require_normalized(const StateVector& psi) {
  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > tolerance(psi.n())) {
    throw std::invalid_argument("state is not normalized: |psi| = " + std::to_string(norm));
  }
}

StateVector position_ket(const AlgebraParams& params, int j) {
  check_index(params, j, "position_ket");
  Vector amps = Vector::Zero(params.n());
  amps(j) = 1.0;
  return {params, std::move(amps), Basis::position};
}

AlgebraElement position_operator(const AlgebraParams& params) {
  const int n = params.n();
  AlgebraElement x(params);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      x.coeff(0, k) += static_cast<double>(j) * params.omega_pow(-static_cast<long long>(j) * k) /
                       static_cast<double>(n);
    }
  }
  return x;
}

AlgebraElement momentum_operator(const AlgebraParams& params) {
  const int n = params.n();
  AlgebraElement p(params);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      p.coeff(k, 0) += static_cast<double>(j) * params.omega_pow(-static_cast<long long>(j) * k) /
                       static_cast<double>(n);
    }
  }
  return p;
}

AlgebraElement translation_position(const AlgebraParams& params, int a) {
  return basis_element(params, -a, 0);
}

AlgebraElement translation_momentum(const AlgebraParams& params, int b) {
  return basis_element(params, 0, b);
}

AlgebraElement dual_idempotent(const AlgebraParams& params, int j) {
  check_index(params, j, "dual_idempotent");
  const int n = params.n();
  AlgebraElement e(params);
  for (int k = 0; k < n; ++k) {
    e.coeff(k, 0) = params.omega_pow(-static_cast<long long>(j) * k) / static_cast<double>(n);
  }
  return e;
}

IdempotentSet dual_idempotents(const AlgebraParams& params) {
  IdempotentSet set{params, {}};
  for (int j = 0; j < params.n(); ++j) set.elements.push_back(dual_idempotent(params, j));
  return set;
}

AlgebraElement duality_map_dft(const AlgebraParams& params) {
  return from_matrix(dft_matrix(params));
}

AlgebraElement duality_map_literal(const AlgebraParams& params) {
  const int n = params.n();
  const double scale = 1.0 / std::pow(static_cast<double>(n), 1.5);
  AlgebraElement z(params);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        z.coeff(j - i, k) += params.omega_pow(static_cast<long long>(j) * (i - k)) * scale;
      }
    }
  }
  return z;
}

DualityAudit audit_duality_map(const AlgebraParams& params) {
  const int n = params.n();
  DualityAudit audit;
  audit.n = n;

  const AlgebraElement z = duality_map_literal(params);
  const Matrix zm = to_matrix(z);
  const Matrix fm = dft_matrix(params);

  audit.unitarity_deviation = max_abs_diff(Matrix(zm.adjoint() * zm), Matrix::Identity(n, n));

  try {
    const AlgebraElement z_inv = inverse(z);
    audit.invertible = true;
    for (int j = 0; j < n; ++j) {
      const AlgebraElement moved =
          multiply(multiply(z, primitive_idempotent(params, j)), z_inv);
      audit.transport_deviation =
          std::max(audit.transport_deviation, max_abs_diff(moved, dual_idempotent(params, j)));
    }
  } catch (const SingularElement&) {
    audit.invertible = false;
    audit.transport_deviation = std::numeric_limits<double>::infinity();
  }

  // Least squares over c for |Z - cF|_F; F is unitary so <F, F> = n.
  audit.best_scalar = (fm.adjoint() * zm).trace() / static_cast<double>(n);
  audit.scalar_residual = max_abs_diff(zm, Matrix(audit.best_scalar * fm));

  // Column-wise fit: each Z column against its best-aligned F column, up to phase.
  audit.permutation.assign(static_cast<std::size_t>(n), -1);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  bool distinct = true;
  for (int j = 0; j < n; ++j) {
    const Vector overlaps = fm.adjoint() * zm.col(j);
    Eigen::Index best = 0;
    overlaps.cwiseAbs().maxCoeff(&best);
    audit.permutation[static_cast<std::size_t>(j)] = static_cast<int>(best);
    if (used[static_cast<std::size_t>(best)]) distinct = false;
    used[static_cast<std::size_t>(best)] = true;
    const Vector residual = zm.col(j) - overlaps(best) * fm.col(best);
    audit.permutation_residual =
        std::max(audit.permutation_residual, residual.cwiseAbs().maxCoeff());
  }
  audit.column_permutation = distinct && audit.permutation_residual <= tolerance(n);
  return audit;
}

StateVector momentum_ket(const AlgebraParams& params, int j) {
  check_index(params, j, "momentum_ket");
  const int n = params.n();
  const double scale = 1.0 / std::pow(static_cast<double>(n), 1.5);
  AlgebraElement ket(params);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      ket.coeff(-i, k) += params.omega_pow(static_cast<long long>(i) * j) * scale;
    }
  }
  return ideal_to_ket(ket);
}

StateVector ideal_to_ket(const AlgebraElement& a) {
  const AlgebraParams& p = a.params();
  const int n = p.n();
  const double residual = max_abs_diff(multiply(a, primitive_idempotent(p, 0)), a);
  if (residual > tolerance(n)) {
    throw std::invalid_argument("element is not in the left ideal of e_00: |A e_00 - A| = " +
                                std::to_string(residual));
  }
  // A = sum_i psi_i I_L(i) puts psi_i / n on every clock power of shift sector -i.
  Vector amps(n);
  for (int i = 0; i < n; ++i) {
    Complex sum{};
    for (int b = 0; b < n; ++b) sum += a.coeff(-i, b);
    amps(i) = sum;
  }
  return {p, std::move(amps), Basis::position};
}

AlgebraElement ket_to_ideal(const StateVector& psi) {
  const StateVector pos = to_position_basis(psi);
  const int n = pos.n();
  AlgebraElement a(pos.params);
  for (int i = 0; i < n; ++i) {
    for (int b = 0; b < n; ++b) a.coeff(-i, b) = pos.amps(i) / static_cast<double>(n);
  }
  return a;
}

Complex inner_product(const StateVector& phi, const StateVector& psi) {
  require_same_n(phi.params, psi.params);
  if (phi.basis != psi.basis) {
    return to_position_basis(phi).amps.dot(to_position_basis(psi).amps);
  }
  return phi.amps.dot(psi.amps);
}

StateVector apply(const AlgebraElement& op, const StateVector& psi) {
  require_same_n(op.params(), psi.params);
  const StateVector pos = to_position_basis(psi);
  return {pos.params, to_matrix(op) * pos.amps, Basis::position};
}

StateVector to_momentum_basis(const StateVector& psi) {
  if (psi.basis == Basis::momentum) return psi;
  return {psi.params, dft_matrix(psi.params).adjoint() * psi.amps, Basis::momentum};
}

StateVector to_position_basis(const StateVector& psi) {
  if (psi.basis == Basis::position) return psi;
  return {psi.params, dft_matrix(psi.params) * psi.amps, Basis::position};
}

std::vector<double> hermitian_spectrum(const AlgebraElement& x) {
  const Eigen::SelfAdjointEigenSolver<Matrix> solver(to_matrix(x), Eigen::EigenvaluesOnly);
  const auto& values = solver.eigenvalues();
  std::vector<double> out(values.data(), values.data() + values.size());
  std::sort(out.begin(), out.end());
  return out;
}

ExpFormReport exp_form_report(const AlgebraParams& params) {
  const int n = params.n();
  ExpFormReport report;
  report.n = n;
  const Complex phase(0.0, 2.0 * std::numbers::pi / n);
  const Matrix p = to_matrix(momentum_operator(params));
  const Matrix x = to_matrix(position_operator(params));
  const Matrix shift = to_matrix(generator_shift(params));
  const Matrix clock = to_matrix(generator_clock(params));

  report.shift_plus = max_abs_diff(Matrix((phase * p).exp()), shift);
  report.shift_minus = max_abs_diff(Matrix((-phase * p).exp()), shift);
  report.clock_plus = max_abs_diff(Matrix((phase * x).exp()), clock);
  report.clock_minus = max_abs_diff(Matrix((-phase * x).exp()), clock);

  const double tol = tolerance(n);
  auto pick = [tol](double plus, double minus) {
    if (plus <= tol) return +1;
    if (minus <= tol) return -1;
    return 0;
  };
  report.shift_sign = pick(report.shift_plus, report.shift_minus);
  report.clock_sign = pick(report.clock_plus, report.clock_minus);
  report.degenerate = report.shift_plus <= tol && report.shift_minus <= tol &&
                      report.clock_plus <= tol && report.clock_minus <= tol;
  return report;
}

}  // namespace weyl
