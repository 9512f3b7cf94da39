#include "weyl/core.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include <fftw3.h>

namespace weyl {

ParameterMismatch::ParameterMismatch(int lhs, int rhs)
    : std::invalid_argument("algebra order mismatch: n=" + std::to_string(lhs) +
                            " vs n=" + std::to_string(rhs)) {}

AlgebraParams::AlgebraParams(int n) : n_(n) {
  if (n < 2) {
    throw std::invalid_argument("algebra order must be >= 2, got " + std::to_string(n));
  }
  std::vector<Complex> roots(static_cast<std::size_t>(n));
  for (int k = 0; 2 * k <= n; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / n;
    roots[static_cast<std::size_t>(k)] = {std::cos(theta), std::sin(theta)};
    if (k > 0) roots[static_cast<std::size_t>(n - k)] = std::conj(roots[static_cast<std::size_t>(k)]);
  }
  // Exact values at the quarter turns keep small-n identities free of 1e-17 noise.
  if (n % 4 == 0) {
    roots[static_cast<std::size_t>(n / 4)] = {0.0, 1.0};
    roots[static_cast<std::size_t>(3 * n / 4)] = {0.0, -1.0};
  }
  if (n % 2 == 0) roots[static_cast<std::size_t>(n / 2)] = {-1.0, 0.0};
  roots_ = std::make_shared<const std::vector<Complex>>(std::move(roots));
}

namespace {

void require_same(const AlgebraElement& lhs, const AlgebraElement& rhs) {
  if (!(lhs.params() == rhs.params())) throw ParameterMismatch(lhs.n(), rhs.n());
}

using Table = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Table as_table(const AlgebraElement& x) {
  const int n = x.n();
  return Eigen::Map<const Table>(x.coeffs().data(), n, n);
}

// Batched plans for the n row transforms of an n x n row-major table, one per (n, sign).
fftw_plan row_plan(int n, int sign) {
  static std::mutex guard;
  static std::map<std::pair<int, int>, fftw_plan> plans;
  const std::lock_guard lock(guard);
  auto& plan = plans[{n, sign}];
  if (plan == nullptr) {
    const auto size = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    auto* scratch = static_cast<fftw_complex*>(fftw_malloc(2 * size * sizeof(fftw_complex)));
    plan = fftw_plan_many_dft(1, &n, n, scratch, nullptr, 1, n, scratch + size, nullptr, 1, n, sign,
                              FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
  }
  return plan;
}

// out(a, j) = sum_b in(a, b) w^{sign * bj}
Table row_dft(const Table& in, int sign) {
  const int n = static_cast<int>(in.rows());
  Table out(n, n);
  auto* src = reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in.data()));
  fftw_execute_dft(row_plan(n, sign > 0 ? FFTW_BACKWARD : FFTW_FORWARD), src,
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

// b += u * v on split complex planes. No FMA clone, so every clone rounds identically.
__attribute__((target_clones("avx2", "default"))) void accumulate_band(std::size_t len, const double* __restrict ur, const double* __restrict ui,
                     const double* __restrict vr, const double* __restrict vi, double* __restrict br,
                     double* __restrict bi) {
  for (std::size_t j = 0; j < len; ++j) {
    br[j] += ur[j] * vr[j] - ui[j] * vi[j];
    bi[j] += ur[j] * vi[j] + ui[j] * vr[j];
  }
}

}  // namespace

AlgebraElement::AlgebraElement(AlgebraParams params)
    : params_(std::move(params)),
      coeffs_(static_cast<std::size_t>(params_.n()) * static_cast<std::size_t>(params_.n())) {}

AlgebraElement::AlgebraElement(AlgebraParams params, std::vector<Complex> coeffs)
    : params_(std::move(params)), coeffs_(std::move(coeffs)) {
  const auto n = static_cast<std::size_t>(params_.n());
  if (coeffs_.size() != n * n) {
    throw std::invalid_argument("coefficient table must hold n^2 = " + std::to_string(n * n) +
                                " entries, got " + std::to_string(coeffs_.size()));
  }
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& rhs) {
  require_same(*this, rhs);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& rhs) {
  require_same(*this, rhs);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(Complex s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

AlgebraElement operator*(const AlgebraElement& lhs, const AlgebraElement& rhs) {
  return multiply(lhs, rhs);
}

AlgebraElement zero(const AlgebraParams& params) { return AlgebraElement(params); }

AlgebraElement identity(const AlgebraParams& params) { return basis_element(params, 0, 0); }

AlgebraElement basis_element(const AlgebraParams& params, int a, int b) {
  AlgebraElement e(params);
  e.coeff(a, b) = 1.0;
  return e;
}

AlgebraElement multiply(const AlgebraElement& lhs, const AlgebraElement& rhs) {
  require_same(lhs, rhs);
  const AlgebraParams& p = lhs.params();
  const int n = p.n();
  const auto un = static_cast<std::size_t>(n);

  // Band a of an element is the diagonal of its a-th shift sector:
  // A = sum_a (e_0^1)^a diag(D(a, .)), D(a, j) = sum_b A_ab w^{bj}.
  const Table left = row_dft(as_table(lhs), +1);
  const Table right = row_dft(as_table(rhs), +1);

  // Split planes; left rows are stored twice over so that u_{j-c} is a contiguous read.
  std::vector<double> lre(2 * un * un), lim(2 * un * un), rre(un * un), rim(un * un);
  for (std::size_t a = 0; a < un; ++a) {
    for (std::size_t j = 0; j < un; ++j) {
      const Complex u = left(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(j));
      const Complex v = right(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(j));
      lre[2 * un * a + j] = lre[2 * un * a + un + j] = u.real();
      lim[2 * un * a + j] = lim[2 * un * a + un + j] = u.imag();
      rre[un * a + j] = v.real();
      rim[un * a + j] = v.imag();
    }
  }

  // (e_0^1)^a diag(u) (e_0^1)^c diag(v) = (e_0^1)^{a+c} diag(u_{j-c} v_j)
  std::vector<double> bre(un * un, 0.0), bim(un * un, 0.0);
  for (std::size_t a = 0; a < un; ++a) {
    for (std::size_t c = 0; c < un; ++c) {
      const std::size_t t = (a + c) % un;
      accumulate_band(un, &lre[2 * un * a + un - c], &lim[2 * un * a + un - c], &rre[un * c], &rim[un * c],
                      &bre[un * t], &bim[un * t]);
    }
  }

  Table bands(n, n);
  for (std::size_t k = 0; k < un * un; ++k) bands.data()[k] = {bre[k], bim[k]};
  std::vector<Complex> out(un * un);
  Eigen::Map<Table>(out.data(), n, n) = row_dft(bands, -1) / static_cast<double>(n);
  return AlgebraElement(p, std::move(out));
}

AlgebraElement multiply_direct(const AlgebraElement& lhs, const AlgebraElement& rhs) {
  require_same(lhs, rhs);
  const AlgebraParams& p = lhs.params();
  const int n = p.n();
  AlgebraElement out(p);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const Complex x = lhs.coeff(a, b);
      if (x == Complex{}) continue;
      for (int c = 0; c < n; ++c) {
        const Complex twist = x * p.omega_pow(-static_cast<long long>(b) * c);
        for (int d = 0; d < n; ++d) {
          out.coeff(a + c, b + d) += twist * rhs.coeff(c, d);
        }
      }
    }
  }
  return out;
}

AlgebraElement power(const AlgebraElement& x, unsigned k) {
  AlgebraElement result = identity(x.params());
  AlgebraElement base = x;
  while (k > 0) {
    if (k & 1U) result = multiply(result, base);
    k >>= 1U;
    if (k > 0) base = multiply(base, base);
  }
  return result;
}

AlgebraElement linear_combine(std::span<const std::pair<Complex, AlgebraElement>> terms) {
  if (terms.empty()) throw std::invalid_argument("linear_combine: empty term list");
  AlgebraElement out(terms.front().second.params());
  for (const auto& [weight, element] : terms) out += weight * element;
  return out;
}

AlgebraElement adjoint(const AlgebraElement& x) {
  const AlgebraParams& p = x.params();
  const int n = p.n();
  AlgebraElement out(p);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      out.coeff(-a, -b) = std::conj(x.coeff(a, b)) * p.omega_pow(-static_cast<long long>(a) * b);
    }
  }
  return out;
}

AlgebraElement commutator(const AlgebraElement& lhs, const AlgebraElement& rhs) {
  return multiply(lhs, rhs) - multiply(rhs, lhs);
}

Matrix to_matrix(const AlgebraElement& x) {
  const int n = x.n();
  // (e_0^1)^a (e_1^0)^b |c> = w^{bc} |c - a>
  const Table bands = row_dft(as_table(x), +1);
  Matrix m = Matrix::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    for (int c = 0; c < n; ++c) m(mod(c - a, n), c) = bands(a, c);
  }
  return m;
}

AlgebraElement from_matrix(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("from_matrix: matrix must be square, got " +
                                std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  const AlgebraParams p(static_cast<int>(m.rows()));
  const int n = p.n();
  Table bands(n, n);
  for (int a = 0; a < n; ++a) {
    for (int c = 0; c < n; ++c) bands(a, c) = m(mod(c - a, n), c);
  }
  std::vector<Complex> out(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  Eigen::Map<Table>(out.data(), n, n) = row_dft(bands, -1) / static_cast<double>(n);
  return AlgebraElement(p, std::move(out));
}

AlgebraElement from_matrix(const AlgebraParams& params, const Matrix& m) {
  if (m.rows() != params.n() || m.cols() != params.n()) {
    throw std::invalid_argument("from_matrix: expected " + std::to_string(params.n()) + "x" +
                                std::to_string(params.n()) + " matrix, got " +
                                std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  return from_matrix(m);
}

Complex trace(const AlgebraElement& x) { return static_cast<double>(x.n()) * x.coeff(0, 0); }

double max_abs_diff(const AlgebraElement& lhs, const AlgebraElement& rhs) {
  require_same(lhs, rhs);
  double worst = 0.0;
  const auto l = lhs.coeffs();
  const auto r = rhs.coeffs();
  for (std::size_t i = 0; i < l.size(); ++i) worst = std::max(worst, std::abs(l[i] - r[i]));
  return worst;
}

double max_abs_diff(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) {
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  }
  if (lhs.size() == 0) return 0.0;
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

bool approx_equal(const AlgebraElement& lhs, const AlgebraElement& rhs, double tol) {
  return max_abs_diff(lhs, rhs) <= tol;
}

bool approx_equal(const AlgebraElement& lhs, const AlgebraElement& rhs) {
  return approx_equal(lhs, rhs, tolerance(lhs.n()));
}

double max_abs(const AlgebraElement& x) {
  double worst = 0.0;
  for (const Complex c : x.coeffs()) worst = std::max(worst, std::abs(c));
  return worst;
}

bool is_hermitian(const AlgebraElement& x, double tol) {
  return max_abs_diff(adjoint(x), x) <= tol;
}

}  // namespace weyl
