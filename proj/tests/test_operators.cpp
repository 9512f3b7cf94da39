#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "weyl/operators.hpp"
#include "weyl/random.hpp"

using namespace weyl;

namespace {

const Complex kI(0.0, 1.0);

Matrix dft(int n) {
  const AlgebraParams p(n);
  Matrix f(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) f(i, j) = p.omega_pow(static_cast<long long>(i) * j) / std::sqrt(n);
  return f;
}

}  // namespace

TEST(Conventions, Frozen) {
  EXPECT_EQ(convention::kShiftDirection, "e_0^1|j> = |j-1>");
  EXPECT_EQ(convention::kMomentumExpSign, 1);
  EXPECT_EQ(convention::kPositionExpSign, 1);
  EXPECT_EQ(convention::kNeighbourPlusShiftPower, 1);
}

TEST(Basis, StringRoundTrip) {
  EXPECT_EQ(basis_from_string(to_string(Basis::position)), Basis::position);
  EXPECT_EQ(basis_from_string(to_string(Basis::momentum)), Basis::momentum);
  EXPECT_THROW(basis_from_string("spin"), std::invalid_argument);
}

TEST(Position, EigenrelationOnIdempotents) {
  const AlgebraParams p(6);
  const AlgebraElement x = position_operator(p);
  for (int j = 0; j < 6; ++j) {
    const AlgebraElement e = primitive_idempotent(p, j);
    EXPECT_LE(max_abs_diff(x * e, static_cast<double>(j) * e), tolerance(6));
  }
}

TEST(Position, EigenrelationOnMatrixUnits) {
  const AlgebraParams p(5);
  const AlgebraElement x = position_operator(p);
  for (int j = 0; j < 5; ++j)
    for (int m = 0; m < 5; ++m) {
      const AlgebraElement e = matrix_unit(p, j, m);
      EXPECT_LE(max_abs_diff(x * e, static_cast<double>(j) * e), tolerance(5));
    }
}

TEST(Position, AtTwo) {
  const AlgebraParams p(2);
  const AlgebraElement x = position_operator(p);
  EXPECT_LE(max_abs_diff(x, 0.5 * (identity(p) - generator_clock(p))), tolerance(2));
  Matrix expected = Matrix::Zero(2, 2);
  expected(1, 1) = 1.0;
  EXPECT_LE(max_abs_diff(to_matrix(x), expected), tolerance(2));
}

TEST(Position, Hermitian) {
  EXPECT_TRUE(is_hermitian(position_operator(AlgebraParams(8)), tolerance(8)));
}

TEST(Momentum, AtTwo) {
  const AlgebraParams p(2);
  const AlgebraElement mom = momentum_operator(p);
  EXPECT_LE(max_abs_diff(mom, 0.5 * (identity(p) - generator_shift(p))), tolerance(2));
  Matrix expected(2, 2);
  expected << 0.5, -0.5, -0.5, 0.5;
  EXPECT_LE(max_abs_diff(to_matrix(mom), expected), tolerance(2));
  const auto spec = hermitian_spectrum(mom);
  EXPECT_NEAR(spec[0], 0.0, 1e-14);
  EXPECT_NEAR(spec[1], 1.0, 1e-14);
}

TEST(Momentum, DualEigenrelation) {
  const AlgebraParams p(5);
  const AlgebraElement mom = momentum_operator(p);
  for (int j = 0; j < 5; ++j) {
    const AlgebraElement e = dual_idempotent(p, j);
    EXPECT_LE(max_abs_diff(mom * e, static_cast<double>(j) * e), tolerance(5));
  }
}

TEST(Momentum, SpectrumIsZeroToNMinusOne) {
  const auto spec = hermitian_spectrum(momentum_operator(AlgebraParams(7)));
  ASSERT_EQ(spec.size(), 7U);
  for (int j = 0; j < 7; ++j) EXPECT_NEAR(spec[j], j, 1e-12);
}

TEST(Translation, MovesIdempotentsUp) {
  const int n = 6;
  const AlgebraParams p(n);
  const IdempotentSet canon = canonical_idempotents(p);
  const IdempotentSet moved = conjugate_set(canon, translation_position(p, 1));
  for (int j = 0; j < n; ++j) {
    EXPECT_LE(max_abs_diff(moved.elements[j], canon.elements[mod(j + 1, n)]), tolerance(n));
  }
}

TEST(Translation, TrivialPowers) {
  const AlgebraParams p(6);
  EXPECT_EQ(max_abs_diff(translation_position(p, 0), identity(p)), 0.0);
  EXPECT_EQ(max_abs_diff(translation_position(p, 6), identity(p)), 0.0);
}

TEST(Translation, MovesKets) {
  const AlgebraParams p(7);
  for (int j = 0; j < 7; ++j) {
    const StateVector out = apply(translation_position(p, 3), position_ket(p, j));
    EXPECT_LE((out.amps - position_ket(p, mod(j + 3, 7)).amps).cwiseAbs().maxCoeff(), tolerance(7));
  }
}

TEST(Translation, MomentumTranslationMovesDualIdempotents) {
  const int n = 5;
  const AlgebraParams p(n);
  const IdempotentSet dual = dual_idempotents(p);
  const IdempotentSet moved = conjugate_set(dual, translation_momentum(p, 2));
  for (int j = 0; j < n; ++j) {
    EXPECT_LE(max_abs_diff(moved.elements[j], dual.elements[mod(j + 2, n)]), tolerance(n));
  }
}

TEST(DualIdempotent, ResolvesIdentity) {
  const AlgebraParams p(5);
  AlgebraElement sum = zero(p);
  for (int j = 0; j < 5; ++j) sum += dual_idempotent(p, j);
  EXPECT_LE(max_abs_diff(sum, identity(p)), tolerance(5));
}

TEST(DualIdempotent, AtTwo) {
  const AlgebraParams p(2);
  EXPECT_LE(max_abs_diff(dual_idempotent(p, 0), 0.5 * (identity(p) + generator_shift(p))), tolerance(2));
}

TEST(DualIdempotent, Orthogonal) {
  const AlgebraParams p(4);
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) {
      if (j == k) continue;
      EXPECT_LE(max_abs(dual_idempotent(p, j) * dual_idempotent(p, k)), tolerance(4));
    }
}

TEST(DualIdempotent, ConjugatedFromZero) {
  const AlgebraParams p(6);
  const AlgebraElement e0 = dual_idempotent(p, 0);
  for (int j = 0; j < 6; ++j) {
    const AlgebraElement moved = basis_element(p, 0, j) * e0 * basis_element(p, 0, -j);
    EXPECT_LE(max_abs_diff(moved, dual_idempotent(p, j)), tolerance(6));
  }
}

TEST(Duality, DftIsUnitary) {
  const Matrix f = to_matrix(duality_map_dft(AlgebraParams(8)));
  EXPECT_LE(max_abs_diff(Matrix(f.adjoint() * f), Matrix::Identity(8, 8)), tolerance(8));
}

TEST(Duality, DftTransportsIdempotents) {
  const AlgebraParams p(6);
  const IdempotentSet mapped = conjugate_set(canonical_idempotents(p), duality_map_dft(p));
  for (int j = 0; j < 6; ++j) {
    EXPECT_LE(max_abs_diff(mapped.elements[j], dual_idempotent(p, j)), tolerance(6));
  }
}

TEST(Duality, DftAtTwo) {
  Matrix expected(2, 2);
  expected << 1.0, 1.0, 1.0, -1.0;
  expected /= std::sqrt(2.0);
  EXPECT_LE(max_abs_diff(to_matrix(duality_map_dft(AlgebraParams(2))), expected), tolerance(2));
}

TEST(Duality, LiteralTripleSumEqualsDft) {
  for (int n = 2; n <= 9; ++n) {
    const AlgebraParams p(n);
    EXPECT_LE(max_abs_diff(to_matrix(duality_map_literal(p)), dft(n)), tolerance(n)) << "n=" << n;
  }
}

TEST(Duality, AuditAtFour) {
  const DualityAudit a = audit_duality_map(AlgebraParams(4));
  EXPECT_EQ(a.n, 4);
  EXPECT_TRUE(a.invertible);
  EXPECT_LE(a.unitarity_deviation, tolerance(4));
  EXPECT_LE(a.transport_deviation, tolerance(4));
  EXPECT_LE(std::abs(a.best_scalar - 1.0), tolerance(4));
  EXPECT_LE(a.scalar_residual, tolerance(4));
  EXPECT_TRUE(a.column_permutation);
  EXPECT_EQ(a.permutation, (std::vector<int>{0, 1, 2, 3}));
}

TEST(Duality, ScalarFitAtThree) {
  const DualityAudit a = audit_duality_map(AlgebraParams(3));
  EXPECT_LE(a.scalar_residual, tolerance(3));
}

TEST(MomentumKet, EigenstateOfMomentum) {
  const AlgebraParams p(5);
  const AlgebraElement mom = momentum_operator(p);
  for (int j = 0; j < 5; ++j) {
    const StateVector k = momentum_ket(p, j);
    const StateVector out = apply(mom, k);
    EXPECT_LE((out.amps - static_cast<double>(j) * k.amps).cwiseAbs().maxCoeff(), tolerance(5));
  }
}

TEST(MomentumKet, ZeroIsUniform) {
  const StateVector k = momentum_ket(AlgebraParams(6), 0);
  for (int j = 0; j < 6; ++j) EXPECT_NEAR(std::abs(k.amps(j) - 1.0 / std::sqrt(6.0)), 0.0, 1e-15);
}

TEST(MomentumKet, Orthonormal) {
  const AlgebraParams p(6);
  for (int j = 0; j < 6; ++j)
    for (int k = 0; k < 6; ++k) {
      const Complex ip = inner_product(momentum_ket(p, j), momentum_ket(p, k));
      EXPECT_NEAR(std::abs(ip - (j == k ? 1.0 : 0.0)), 0.0, tolerance(6));
    }
}

TEST(MomentumKet, MatchesDftColumns) {
  const Matrix f = dft(7);
  for (int j = 0; j < 7; ++j) {
    EXPECT_LE((momentum_ket(AlgebraParams(7), j).amps - f.col(j)).cwiseAbs().maxCoeff(), tolerance(7));
  }
}

TEST(ExpForm, SignsAtEight) {
  const ExpFormReport r = exp_form_report(AlgebraParams(8));
  EXPECT_EQ(r.shift_sign, convention::kMomentumExpSign);
  EXPECT_EQ(r.clock_sign, convention::kPositionExpSign);
  EXPECT_LE(r.shift_plus, tolerance(8));
  EXPECT_GT(r.shift_minus, 0.1);
  EXPECT_FALSE(r.degenerate);
}

TEST(ExpForm, MinusSignGivesInverseClockAtFour) {
  const AlgebraParams p(4);
  const ExpFormReport r = exp_form_report(p);
  EXPECT_LE(r.clock_plus, tolerance(4));
  EXPECT_GT(r.clock_minus, 1.0);
  // exp(-2 pi i X / 4) = diag(1, -i, -1, i) is the inverse clock.
  const Matrix inv = to_matrix(basis_element(p, 0, -1));
  Matrix expected = Matrix::Zero(4, 4);
  expected.diagonal() << 1.0, -kI, -1.0, kI;
  EXPECT_LE(max_abs_diff(inv, expected), 1e-15);
}

TEST(ExpForm, DegenerateAtTwo) {
  const ExpFormReport r = exp_form_report(AlgebraParams(2));
  EXPECT_TRUE(r.degenerate);
  EXPECT_EQ(r.shift_sign, 1);
  EXPECT_EQ(r.clock_sign, 1);
}

TEST(ExpForm, FrozenSignsHoldUpToSixteen) {
  for (int n = 2; n <= 16; ++n) {
    const ExpFormReport r = exp_form_report(AlgebraParams(n));
    EXPECT_EQ(r.shift_sign, convention::kMomentumExpSign) << "n=" << n;
    EXPECT_EQ(r.clock_sign, convention::kPositionExpSign) << "n=" << n;
  }
}

TEST(Kets, LeftIdealBasisIsStandardBasis) {
  const AlgebraParams p(4);
  for (int i = 0; i < 4; ++i) {
    const StateVector k = ideal_to_ket(left_ideal_basis(p, i));
    EXPECT_LE((k.amps - position_ket(p, i).amps).cwiseAbs().maxCoeff(), tolerance(4));
  }
}

TEST(Kets, IdealRoundTrip) {
  const AlgebraParams p(6);
  Rng rng(17);
  for (int t = 0; t < 10; ++t) {
    const AlgebraElement a = random_element(p, rng) * primitive_idempotent(p, 0);
    EXPECT_LE(max_abs_diff(ket_to_ideal(ideal_to_ket(a)), a), tolerance(6));
  }
}

TEST(Kets, NonIdealElementRejected) {
  const AlgebraParams p(4);
  EXPECT_THROW(ideal_to_ket(identity(p)), std::invalid_argument);
}

TEST(Kets, InnerProductReproducesIdealProduct) {
  const AlgebraParams p(3);
  const AlgebraElement e00 = primitive_idempotent(p, 0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const Complex ip = inner_product(position_ket(p, i), position_ket(p, j));
      const AlgebraElement product = adjoint(left_ideal_basis(p, i)) * left_ideal_basis(p, j);
      EXPECT_LE(max_abs_diff(product, ip * e00), tolerance(3));
    }
}

TEST(Kets, BasisChangeRoundTrip) {
  const AlgebraParams p(8);
  Rng rng(4);
  const StateVector psi{p, random_unit_vector(8, rng), Basis::position};
  const StateVector mom = to_momentum_basis(psi);
  EXPECT_EQ(mom.basis, Basis::momentum);
  EXPECT_NEAR(mom.norm(), 1.0, tolerance(8));
  EXPECT_LE((to_position_basis(mom).amps - psi.amps).cwiseAbs().maxCoeff(), tolerance(8));
  // A momentum eigenket is a standard basis vector in the momentum basis.
  const StateVector k3 = to_momentum_basis(momentum_ket(p, 3));
  EXPECT_NEAR(std::abs(k3.amps(3)), 1.0, tolerance(8));
}

TEST(Kets, NormalizationEnforced) {
  const AlgebraParams p(3);
  StateVector psi{p, Vector::Ones(3), Basis::position};
  EXPECT_THROW(require_normalized(psi), std::invalid_argument);
  psi.amps /= psi.amps.norm();
  EXPECT_NO_THROW(require_normalized(psi));
}
