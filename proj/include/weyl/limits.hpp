#pragma once

// The [X, P] commutator, Robertson uncertainty checks on the discrete space,
// and the scaled continuum-limit study of <[X~, P~]> -> i on smooth states.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "weyl/core.hpp"
#include "weyl/operators.hpp"
#include "weyl/random.hpp"

namespace weyl {

/// [X, P] with X and P built from their defining sums.
AlgebraElement commutator_xp(const AlgebraParams& params);

/// X~ = s (X - c), P~ = s (P - c) with s = sqrt(2 pi / n), c = (n - 1) / 2.
std::pair<AlgebraElement, AlgebraElement> scaled_observables(const AlgebraParams& params);
double observable_scale(int n);
double observable_center(int n);

/// psi^dagger M psi. psi must be unit norm within tolerance(n).
Complex expectation(const AlgebraElement& op, const StateVector& psi);
Complex expectation(const Matrix& op, const StateVector& psi);

struct RobertsonReport {
  double delta_a = 0.0;
  double delta_b = 0.0;
  double product = 0.0;  // delta_a * delta_b
  double bound = 0.0;    // |<[A, B]>| / 2
  bool holds = false;    // product >= bound - tolerance(n)
};

/// Throws std::invalid_argument if A or B is not hermitian within tolerance(n).
RobertsonReport robertson_check(const StateVector& psi, const AlgebraElement& a,
                                const AlgebraElement& b);

struct UncertaintyReport {
  int n = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  double best_bound = 0.0;  // max over trials of |<[X, P]>| / 2
  Vector best_amps;  // position-basis amplitudes of the maximizing state
  bool witness_found = false;  // best_bound > kWitnessThreshold
};

inline constexpr double kWitnessThreshold = 0.01;

/// Searches `trials` Haar-random states for the largest Robertson bound of (X, P).
UncertaintyReport uncertainty_exists(const AlgebraParams& params, int trials, std::uint64_t seed);

/// Wrapped Gaussian psi_j ~ exp(-d(j, center)^2 / (4 width^2)) exp(2 pi i shift j / n),
/// d the cyclic distance, normalized.
struct GaussianSpec {
  double center = 0.0;
  double width = 1.0;
  double momentum_shift = 0.0;
};

StateVector gaussian_state(const AlgebraParams& params, const GaussianSpec& spec);

/// width = factor * sqrt(n / (4 pi)); factor 1 gives equal position and momentum spreads.
struct WidthRule {
  double factor = 1.0;
  double width(int n) const;
};

/// Gaussian centred mid-lattice in position (n/2) and in momentum (n/2 cycles), where
/// both X and P are far from the wrap of their sawtooth spectra.
StateVector mid_lattice_gaussian(const AlgebraParams& params, const WidthRule& rule = {});

struct ConvergenceRow {
  int n = 0;
  Complex expectation{};
  double error = 0.0;  // |expectation - i|
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  bool monotone_flag = false;
};

/// Final-row error bound. The default width gives 1.09e-4 at n = 8 and falls below
/// double precision from n = 32 on.
inline constexpr double kContinuumErrorThreshold = 1e-3;

/// Smallest n accepted by the study.
inline constexpr int kContinuumMinN = 8;

/// Errors count as non-increasing when each is at most the previous one plus
/// tolerance(n) of the later row.
bool non_increasing(std::span<const ConvergenceRow> rows);

/// Throws std::invalid_argument if n_list is empty, not strictly ascending, or has n < 8.
ConvergenceReport continuum_limit_study(std::span<const int> n_list, const WidthRule& rule = {});

/// <psi|[X~, P~]|psi> for one n, as computed by the study.
Complex scaled_commutator_expectation(const AlgebraParams& params, const StateVector& psi);

}  // namespace weyl
