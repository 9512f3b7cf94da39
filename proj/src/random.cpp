#include "weyl/random.hpp"

#include <cmath>
#include <numbers>

namespace weyl {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11U) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(theta);
  has_spare_ = true;
  return radius * std::cos(theta);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return Complex{re, im} / std::numbers::sqrt2;
}

AlgebraElement random_element(const AlgebraParams& params, Rng& rng) {
  const int n = params.n();
  std::vector<Complex> coeffs(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (auto& c : coeffs) c = rng.complex_normal() / static_cast<double>(n);
  return AlgebraElement(params, std::move(coeffs));
}

Matrix random_unitary(int n, Rng& rng) {
  Matrix g(n, n);
  for (int c = 0; c < n; ++c) {
    for (int r = 0; r < n; ++r) g(r, c) = rng.complex_normal();
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < n; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

Vector random_unit_vector(int n, Rng& rng) {
  Vector v(n);
  for (int k = 0; k < n; ++k) v(k) = rng.complex_normal();
  return v / v.norm();
}

}  // namespace weyl
