#pragma once

// Position and momentum operators, translations, the dual (momentum-space)
// idempotent system, the duality maps between the two, and kets as elements
// of the minimal left ideal generated by e_00.

#include <optional>
#include <string_view>
#include <vector>

#include "weyl/core.hpp"
#include "weyl/ideals.hpp"

namespace weyl {

/// Conventions fixed by this library. They are written into every report.
namespace convention {
/// e_0^1 |j> = |j-1>. The opposite direction violates e_0^1 e_1^0 = w e_1^0 e_0^1
/// under the diagonal clock e_1^0 = diag(w^j).
inline constexpr std::string_view kShiftDirection = "e_0^1|j> = |j-1>";
/// e_0^1 = exp(kMomentumExpSign * 2 pi i P / n).
inline constexpr int kMomentumExpSign = +1;
/// e_1^0 = exp(kPositionExpSign * 2 pi i X / n).
inline constexpr int kPositionExpSign = +1;
/// N+ = e_0^{kNeighbourPlusShiftPower}.
inline constexpr int kNeighbourPlusShiftPower = +1;
}  // namespace convention

enum class Basis { position, momentum };

std::string_view to_string(Basis b);
Basis basis_from_string(std::string_view s);

/// n amplitudes tagged with the basis they are expressed in.
struct StateVector {
  AlgebraParams params;
  Vector amps;
  Basis basis = Basis::position;

  int n() const { return params.n(); }
  double norm() const { return amps.norm(); }
};

/// Throws std::invalid_argument unless | |psi| - 1 | <= tolerance(n).
void require_normalized(const StateVector& psi);

/// Standard basis ket |j> in the position basis.
StateVector position_ket(const AlgebraParams& params, int j);

/// X = (1/n) sum_jk j w^{-jk} e_k^0 = sum_j j eps_jj; matrix image diag(0..n-1).
AlgebraElement position_operator(const AlgebraParams& params);

/// P = (1/n) sum_jk j w^{-jk} e_0^k = sum_j j eps'_jj.
AlgebraElement momentum_operator(const AlgebraParams& params);

/// T^a = e_0^{-a}; moves position labels j -> j + a.
AlgebraElement translation_position(const AlgebraParams& params, int a);

/// e_b^0; moves momentum labels j -> j + b.
AlgebraElement translation_momentum(const AlgebraParams& params, int b);

/// eps'_jj = e_j^0 eps'_00 e_{-j}^0 = (1/n) sum_k w^{-jk} e_0^k.
AlgebraElement dual_idempotent(const AlgebraParams& params, int j);
IdempotentSet dual_idempotents(const AlgebraParams& params);

/// Unitary F with matrix image F_ij = w^{ij} / sqrt(n); F eps_jj F^{-1} = eps'_jj.
AlgebraElement duality_map_dft(const AlgebraParams& params);

/// Z = n^{-3/2} sum_ijk w^{j(i-k)} e_k^{j-i}, evaluated term by term.
AlgebraElement duality_map_literal(const AlgebraParams& params);

struct DualityAudit {
  int n = 0;
  double unitarity_deviation = 0.0;     // max |Z^dagger Z - 1|
  bool invertible = false;
  double transport_deviation = 0.0;     // max_j max |Z eps_jj Z^{-1} - eps'_jj|
  Complex best_scalar{};                // argmin_c |Z - c F|_F
  double scalar_residual = 0.0;         // max |Z - c F| at the optimum
  bool column_permutation = false;      // columns of Z match distinct columns of F up to phase
  std::vector<int> permutation;         // Z column j ~ F column permutation[j]
  double permutation_residual = 0.0;    // max entry deviation after per-column phase fit
};

DualityAudit audit_duality_map(const AlgebraParams& params);

/// |P_j> built as the left-ideal element n^{-3/2} sum_ik w^{ij} e_k^{-i}; the returned
/// amplitudes are its position-basis coordinates w^{ij}/sqrt(n).
StateVector momentum_ket(const AlgebraParams& params, int j);

/// Coordinates of an element of the left ideal of e_00 over the basis I_L(i).
/// Throws std::invalid_argument with the residual |A e_00 - A| if A is not in the ideal.
StateVector ideal_to_ket(const AlgebraElement& a);
AlgebraElement ket_to_ideal(const StateVector& psi);

/// <phi|psi>, both states must share basis and n.
Complex inner_product(const StateVector& phi, const StateVector& psi);

/// Applies an element's matrix image to position-basis amplitudes.
StateVector apply(const AlgebraElement& op, const StateVector& psi);

StateVector to_momentum_basis(const StateVector& psi);
StateVector to_position_basis(const StateVector& psi);

/// Sorted eigenvalues of a hermitian element's matrix image.
std::vector<double> hermitian_spectrum(const AlgebraElement& x);

/// Checks which sign in exp(+-2 pi i P / n) and exp(+-2 pi i X / n) reproduces each generator.
struct ExpFormReport {
  int n = 0;
  double shift_plus = 0.0;   // max |exp(+2 pi i P/n) - e_0^1|
  double shift_minus = 0.0;  // max |exp(-2 pi i P/n) - e_0^1|
  double clock_plus = 0.0;   // max |exp(+2 pi i X/n) - e_1^0|
  double clock_minus = 0.0;  // max |exp(-2 pi i X/n) - e_1^0|
  int shift_sign = 0;        // sign that matches within tolerance, 0 if neither
  int clock_sign = 0;
  bool degenerate = false;   // both signs match (n = 2)
};

ExpFormReport exp_form_report(const AlgebraParams& params);

}  // namespace weyl
