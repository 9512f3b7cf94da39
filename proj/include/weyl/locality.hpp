#pragma once

// Neighbourhood operators, lattice difference stencils and the lattice wave
// equation, transport of fields and operators under unitary automorphisms,
// and band-energy measures of how local an operator is.

#include <span>
#include <vector>

#include "weyl/core.hpp"

namespace weyl {

/// Periodic lattice field psi_0 .. psi_{n-1}.
struct LatticeField {
  AlgebraParams params;
  Vector values;

  int n() const { return params.n(); }
};

LatticeField zero_field(const AlgebraParams& params);
LatticeField delta_field(const AlgebraParams& params, int site);

/// N+ psi_j = psi_{j+1}; equal to e_0^1.
AlgebraElement neighbour_plus(const AlgebraParams& params);
/// N- psi_j = psi_{j-1}; equal to e_0^{-1}.
AlgebraElement neighbour_minus(const AlgebraParams& params);

LatticeField apply(const AlgebraElement& op, const LatticeField& f);

/// psi_{j+1} - psi_{j-1}
LatticeField central_difference(const LatticeField& f);
/// psi_{j+1} - 2 psi_j + psi_{j-1}
LatticeField laplacian(const LatticeField& f);

struct WaveConfig {
  double alpha = 1.0;
  double dt = 0.05;
  int steps = 1;
  /// Keep every sample_every-th field in the trajectory (the final step is always kept).
  int sample_every = 1;
};

/// Upper bound on sqrt(alpha) * dt accepted by wave_evolve.
inline constexpr double kWaveStabilityLimit = 0.5;

struct TrajectorySample {
  int step = 0;
  Vector values;
};

struct Trajectory {
  WaveConfig config;
  std::vector<TrajectorySample> samples;  // includes step 0
  /// Leapfrog discrete energy at steps 1..steps:
  /// |v_{m+1/2}|^2 / 2 + (alpha/2) Re sum_j conj(D psi^{m+1})_j (D psi^m)_j, D the forward difference.
  /// Conserved by the scheme up to rounding.
  std::vector<double> energy;
  /// Collocated energy |v_m|^2 / 2 + (alpha/2) |D psi^m|^2 at steps 0..steps; oscillates at O(dt^2).
  std::vector<double> collocated_energy;

  /// max_m |E_m - E_1| / |E_1| over the leapfrog energy (0 for zero data).
  double energy_drift() const;
  /// Same measure on the collocated energy.
  double collocated_energy_variation() const;
};

/// Velocity-Verlet (leapfrog) integration of d^2 psi / dt^2 = alpha (psi_{j+1} - 2 psi_j + psi_{j-1}).
/// Throws std::invalid_argument when sqrt(alpha) dt > kWaveStabilityLimit.
Trajectory wave_evolve(const LatticeField& f0, const LatticeField& v0, const WaveConfig& cfg);

/// Omega(k) = 2 sqrt(alpha) |sin(pi k / n)|.
double lattice_frequency(int n, int k, double alpha);

/// Angular frequency the leapfrog scheme actually produces for mode k:
/// (2 / dt) asin(Omega(k) dt / 2).
double leapfrog_frequency(int n, int k, double alpha, double dt);

struct ModeFrequency {
  int k = 0;
  double measured = 0.0;   // fitted from the trajectory
  double exact = 0.0;      // lattice_frequency
  double leapfrog = 0.0;   // leapfrog_frequency
  double relative_error() const;  // |measured - exact| / exact
};

/// Evolves the single mode cos(2 pi k j / n) from rest and fits its frequency from
/// the modal amplitude a_m via the three-term recurrence a_{m+1} + a_{m-1} = 2 cos(W dt) a_m.
ModeFrequency measure_mode_frequency(const AlgebraParams& params, int k, const WaveConfig& cfg);

/// Max |C^dagger C - 1|.
double unitarity_deviation(const Matrix& c);

/// psi_j -> sum_k conj(C_jk) psi_k. Throws std::invalid_argument if C is not unitary within tolerance(n).
LatticeField apply_automorphism_field(const LatticeField& f, const Matrix& c);

/// C^dagger M C. Throws std::invalid_argument if C is not unitary within tolerance(n).
Matrix apply_automorphism_operator(const Matrix& m, const Matrix& c);

/// Eigenvalues of a square matrix in canonical order: by argument in [0, 2 pi),
/// then by modulus.
std::vector<Complex> canonical_spectrum(const Matrix& m);

/// Largest distance between paired eigenvalues after greedy nearest matching.
double spectrum_deviation(std::span<const Complex> lhs, std::span<const Complex> rhs);

struct LocalityReport {
  double band_energy = 0.0;
  double delocalization_index = 0.0;
  std::vector<Complex> spectrum;
};

/// Fraction of squared matrix mass with cyclic |i - j| <= band_radius.
double band_energy(const Matrix& m, int band_radius = 1);

LocalityReport locality_report(const Matrix& m, int band_radius = 1);

/// Unitary V with V^dagger Np V equal to the canonical cyclic shift. Eigenvectors are
/// ordered by eigenvalue phase and each is rotated so its largest-magnitude component
/// (lowest index among ties) is real positive. Throws std::invalid_argument if Np is not
/// unitary with simple spectrum equal to the n-th roots of unity.
Matrix recover_canonical_basis(const Matrix& np);

struct BandReductionReport {
  bool reducible = false;
  std::vector<double> band_energies;  // per operator, in the recovered basis
};

/// Recovers a basis from the first operator and reports whether every operator of the
/// family is banded (band energy 1 within tol) in that single basis.
BandReductionReport simultaneous_band_reduction(std::span<const Matrix> family, double tol = 1e-9);

/// <psi| (n / (4 pi i)) (N- - N+) |psi>, the neighbour-difference estimate of P - n/2
/// for states near mid-lattice momentum. psi given as position amplitudes, unit norm.
double neighbour_momentum_expectation(const AlgebraParams& params, const Vector& psi);

}  // namespace weyl
