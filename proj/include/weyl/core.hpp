#pragma once

// Finite Weyl algebra of order n^2: generated by a shift e_0^1 and a clock e_1^0
// with (e_0^1)^n = (e_1^0)^n = 1 and e_0^1 e_1^0 = w e_1^0 e_0^1, w = exp(2 pi i / n).
//
// Elements are stored as dense n x n coefficient tables over the basis
// e_b^a = (e_0^1)^a (e_1^0)^b, row-major in (a, b).

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace weyl {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Thrown when two operands belong to algebras of different order.
class ParameterMismatch : public std::invalid_argument {
 public:
  ParameterMismatch(int lhs, int rhs);
};

/// Absolute per-coefficient tolerance used throughout: 1e-12 * n.
constexpr double tolerance(int n) { return 1e-12 * n; }

/// Reduces k into [0, n).
constexpr int mod(long long k, int n) {
  const long long r = k % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

/// Order n of the algebra together with a shared table of the n-th roots of unity.
class AlgebraParams {
 public:
  explicit AlgebraParams(int n);

  int n() const { return n_; }
  Complex omega() const { return (*roots_)[n_ > 1 ? 1 : 0]; }
  /// w^k for any integer k, read from the table (no accumulated rounding).
  Complex omega_pow(long long k) const { return (*roots_)[mod(k, n_)]; }

  friend bool operator==(const AlgebraParams& a, const AlgebraParams& b) {
    return a.n_ == b.n_;
  }

 private:
  int n_;
  std::shared_ptr<const std::vector<Complex>> roots_;
};

/// Basis label (a, b) of e_b^a: a is the shift power, b the clock power.
struct BasisIndex {
  int a = 0;
  int b = 0;

  BasisIndex reduced(int n) const { return {mod(a, n), mod(b, n)}; }
  friend bool operator==(const BasisIndex&, const BasisIndex&) = default;
};

class AlgebraElement {
 public:
  /// The zero element.
  explicit AlgebraElement(AlgebraParams params);
  AlgebraElement(AlgebraParams params, std::vector<Complex> coeffs);

  const AlgebraParams& params() const { return params_; }
  int n() const { return params_.n(); }

  Complex coeff(int a, int b) const {
    return coeffs_[index(mod(a, n()), mod(b, n()))];
  }
  Complex& coeff(int a, int b) { return coeffs_[index(mod(a, n()), mod(b, n()))]; }
  Complex coeff(BasisIndex i) const { return coeff(i.a, i.b); }

  std::span<const Complex> coeffs() const { return coeffs_; }

  AlgebraElement& operator+=(const AlgebraElement& rhs);
  AlgebraElement& operator-=(const AlgebraElement& rhs);
  AlgebraElement& operator*=(Complex s);

  friend AlgebraElement operator+(AlgebraElement lhs, const AlgebraElement& rhs) {
    return lhs += rhs;
  }
  friend AlgebraElement operator-(AlgebraElement lhs, const AlgebraElement& rhs) {
    return lhs -= rhs;
  }
  friend AlgebraElement operator-(AlgebraElement x) { return x *= -1.0; }
  friend AlgebraElement operator*(Complex s, AlgebraElement x) { return x *= s; }
  friend AlgebraElement operator*(AlgebraElement x, Complex s) { return x *= s; }
  friend AlgebraElement operator*(const AlgebraElement& lhs, const AlgebraElement& rhs);

 private:
  std::size_t index(int a, int b) const {
    return static_cast<std::size_t>(a) * static_cast<std::size_t>(n()) +
           static_cast<std::size_t>(b);
  }

  AlgebraParams params_;
  std::vector<Complex> coeffs_;
};

AlgebraElement zero(const AlgebraParams& params);
AlgebraElement identity(const AlgebraParams& params);
/// e_b^a with both labels reduced mod n.
AlgebraElement basis_element(const AlgebraParams& params, int a, int b);
inline AlgebraElement generator_shift(const AlgebraParams& p) { return basis_element(p, 1, 0); }
inline AlgebraElement generator_clock(const AlgebraParams& p) { return basis_element(p, 0, 1); }

/// Twisted product e_b^a e_d^c = w^{-bc} e_{b+d}^{a+c}, extended bilinearly.
///
/// Runs in O(n^3): each element is transformed along the clock index into
/// its n shift bands, bands are combined by a shifted pointwise product,
/// and the result is transformed back. multiply_direct is the literal
/// O(n^4) double loop and is kept as a reference.
AlgebraElement multiply(const AlgebraElement& lhs, const AlgebraElement& rhs);
AlgebraElement multiply_direct(const AlgebraElement& lhs, const AlgebraElement& rhs);

/// x^k for k >= 0 by repeated squaring.
AlgebraElement power(const AlgebraElement& x, unsigned k);

AlgebraElement linear_combine(std::span<const std::pair<Complex, AlgebraElement>> terms);

/// Pullback of conjugate-transpose: (e_b^a)^dagger = w^{-ab} e_{-b}^{-a}, antilinear.
AlgebraElement adjoint(const AlgebraElement& x);

AlgebraElement commutator(const AlgebraElement& lhs, const AlgebraElement& rhs);

/// Clock/shift representation. e_1^0 -> diag(w^0, ..., w^{n-1}); e_0^1 lowers
/// the position label, e_0^1 |j> = |j-1>, i.e. (e_0^1 psi)_j = psi_{j+1}.
Matrix to_matrix(const AlgebraElement& x);

/// Inverse of to_matrix via the trace pairing A_ab = (1/n) tr(M (e_b^a)^{-1}).
AlgebraElement from_matrix(const Matrix& m);
/// As above, additionally requiring m to be params.n() x params.n().
AlgebraElement from_matrix(const AlgebraParams& params, const Matrix& m);

/// Equals n * A_00, the trace of the matrix image.
Complex trace(const AlgebraElement& x);

double max_abs_diff(const AlgebraElement& lhs, const AlgebraElement& rhs);
double max_abs_diff(const Matrix& lhs, const Matrix& rhs);
bool approx_equal(const AlgebraElement& lhs, const AlgebraElement& rhs);
bool approx_equal(const AlgebraElement& lhs, const AlgebraElement& rhs, double tol);

/// Largest coefficient modulus.
double max_abs(const AlgebraElement& x);

bool is_hermitian(const AlgebraElement& x, double tol);

}  // namespace weyl
