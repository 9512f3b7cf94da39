#include "weyl/limits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace weyl {

AlgebraElement commutator_xp(const AlgebraParams& params) {
  return commutator(position_operator(params), momentum_operator(params));
}

double observable_scale(int n) { return std::sqrt(2.0 * std::numbers::pi / n); }

double observable_center(int n) { return (n - 1) / 2.0; }

std::pair<AlgebraElement, AlgebraElement> scaled_observables(const AlgebraParams& params) {
  const double s = observable_scale(params.n());
  const AlgebraElement shift = observable_center(params.n()) * identity(params);
  return {s * (position_operator(params) - shift), s * (momentum_operator(params) - shift)};
}

Complex expectation(const Matrix& op, const StateVector& psi) {
  if (op.rows() != psi.n() || op.cols() != psi.n()) {
    throw ParameterMismatch(static_cast<int>(op.rows()), psi.n());
  }
  require_normalized(psi);
  const StateVector pos = to_position_basis(psi);
  return pos.amps.dot(op * pos.amps);
}

Complex expectation(const AlgebraElement& op, const StateVector& psi) {
  if (!(op.params() == psi.params)) throw ParameterMismatch(op.n(), psi.n());
  return expectation(to_matrix(op), psi);
}

RobertsonReport robertson_check(const StateVector& psi, const AlgebraElement& a,
                                const AlgebraElement& b) {
  const int n = psi.n();
  if (!is_hermitian(a, tolerance(n)) || !is_hermitian(b, tolerance(n))) {
    throw std::invalid_argument("robertson_check: operators must be hermitian");
  }
  const Matrix am = to_matrix(a);
  const Matrix bm = to_matrix(b);
  auto spread = [&psi](const Matrix& m) {
    const double mean = expectation(m, psi).real();
    const double second = expectation(Matrix(m * m), psi).real();
    return std::sqrt(std::max(0.0, second - mean * mean));
  };
  RobertsonReport r;
  r.delta_a = spread(am);
  r.delta_b = spread(bm);
  r.product = r.delta_a * r.delta_b;
  r.bound = 0.5 * std::abs(expectation(Matrix(am * bm - bm * am), psi));
  r.holds = r.product >= r.bound - tolerance(n);
  return r;
}

UncertaintyReport uncertainty_exists(const AlgebraParams& params, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("uncertainty_exists: trials must be >= 1");
  const int n = params.n();
  const Matrix k = to_matrix(commutator_xp(params));
  Rng rng(seed);
  UncertaintyReport report;
  report.n = n;
  report.trials = trials;
  report.seed = seed;
  report.best_bound = -1.0;
  for (int t = 0; t < trials; ++t) {
    const StateVector psi{params, random_unit_vector(n, rng), Basis::position};
    const double bound = 0.5 * std::abs(expectation(k, psi));
    if (bound > report.best_bound) {
      report.best_bound = bound;
      report.best_amps = psi.amps;
    }
  }
  report.witness_found = report.best_bound > kWitnessThreshold;
  return report;
}

StateVector gaussian_state(const AlgebraParams& params, const GaussianSpec& spec) {
  if (!(spec.width > 0.0)) {
    throw std::invalid_argument("gaussian_state: width must be > 0, got " +
                                std::to_string(spec.width));
  }
  const int n = params.n();
  Vector amps(n);
  for (int j = 0; j < n; ++j) {
    const double raw = std::abs(j - spec.center);
    const double dist = std::min(std::fmod(raw, n), n - std::fmod(raw, n));
    const double envelope = std::exp(-dist * dist / (4.0 * spec.width * spec.width));
    const double phase = 2.0 * std::numbers::pi * spec.momentum_shift * j / n;
    amps(j) = envelope * Complex(std::cos(phase), std::sin(phase));
  }
  amps /= amps.norm();
  return {params, std::move(amps), Basis::position};
}

double WidthRule::width(int n) const {
  return factor * std::sqrt(n / (4.0 * std::numbers::pi));
}

StateVector mid_lattice_gaussian(const AlgebraParams& params, const WidthRule& rule) {
  const int n = params.n();
  return gaussian_state(params, {.center = n / 2.0, .width = rule.width(n), .momentum_shift = n / 2.0});
}

bool non_increasing(std::span<const ConvergenceRow> rows) {
  for (std::size_t k = 1; k < rows.size(); ++k) {
    if (rows[k].error > rows[k - 1].error + tolerance(rows[k].n)) return false;
  }
  return true;
}

Complex scaled_commutator_expectation(const AlgebraParams& params, const StateVector& psi) {
  const auto [x, p] = scaled_observables(params);
  return expectation(commutator(x, p), psi);
}

ConvergenceReport continuum_limit_study(std::span<const int> n_list, const WidthRule& rule) {
  if (n_list.empty()) throw std::invalid_argument("continuum_limit_study: empty n list");
  for (std::size_t k = 0; k < n_list.size(); ++k) {
    if (n_list[k] < kContinuumMinN) {
      throw std::invalid_argument("continuum_limit_study: n = " + std::to_string(n_list[k]) +
                                  " is below the minimum " + std::to_string(kContinuumMinN));
    }
    if (k > 0 && n_list[k] <= n_list[k - 1]) {
      throw std::invalid_argument("continuum_limit_study: n list must be strictly ascending");
    }
  }
  ConvergenceReport report;
  for (const int n : n_list) {
    const AlgebraParams params(n);
    const Complex value = scaled_commutator_expectation(params, mid_lattice_gaussian(params, rule));
    report.rows.push_back({n, value, std::abs(value - Complex(0.0, 1.0))});
  }
  report.monotone_flag = non_increasing(report.rows);
  return report;
}

}  // namespace weyl
