#include "weyl/locality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace weyl {

namespace {

// Forward difference (D psi)_j = psi_{j+1} - psi_j, periodic.
Vector forward_difference(const Vector& x) {
  const Eigen::Index n = x.size();
  Vector d(n);
  for (Eigen::Index j = 0; j < n; ++j) d(j) = x((j + 1) % n) - x(j);
  return d;
}

Vector laplacian_of(const Vector& x) {
  const Eigen::Index n = x.size();
  Vector out(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out(j) = x((j + 1) % n) - 2.0 * x(j) + x((j + n - 1) % n);
  }
  return out;
}

void require_unitary(const Matrix& c, const char* what) {
  if (c.rows() != c.cols()) throw std::invalid_argument(std::string(what) + ": matrix not square");
  const double dev = unitarity_deviation(c);
  if (dev > tolerance(static_cast<int>(c.rows()))) {
    throw std::invalid_argument(std::string(what) + ": transform is not unitary (deviation " +
                                std::to_string(dev) + ")");
  }
}

double canonical_arg(Complex z) {
  double a = std::arg(z);
  if (a < 0.0) a += 2.0 * std::numbers::pi;
  if (a >= 2.0 * std::numbers::pi - 1e-12) a = 0.0;
  return a;
}

}  // namespace

LatticeField zero_field(const AlgebraParams& params) {
  return {params, Vector::Zero(params.n())};
}

LatticeField delta_field(const AlgebraParams& params, int site) {
  LatticeField f = zero_field(params);
  f.values(mod(site, params.n())) = 1.0;
  return f;
}

AlgebraElement neighbour_plus(const AlgebraParams& params) { return basis_element(params, 1, 0); }

AlgebraElement neighbour_minus(const AlgebraParams& params) { return basis_element(params, -1, 0); }

LatticeField apply(const AlgebraElement& op, const LatticeField& f) {
  if (!(op.params() == f.params)) throw ParameterMismatch(op.n(), f.n());
  return {f.params, to_matrix(op) * f.values};
}

LatticeField central_difference(const LatticeField& f) {
  const int n = f.n();
  Vector out(n);
  for (int j = 0; j < n; ++j) out(j) = f.values(mod(j + 1, n)) - f.values(mod(j - 1, n));
  return {f.params, std::move(out)};
}

LatticeField laplacian(const LatticeField& f) { return {f.params, laplacian_of(f.values)}; }

double Trajectory::energy_drift() const {
  if (energy.empty() || energy.front() == 0.0) return 0.0;
  double worst = 0.0;
  for (const double e : energy) worst = std::max(worst, std::abs(e - energy.front()));
  return worst / std::abs(energy.front());
}

double Trajectory::collocated_energy_variation() const {
  if (collocated_energy.empty() || collocated_energy.front() == 0.0) return 0.0;
  double worst = 0.0;
  for (const double e : collocated_energy) worst = std::max(worst, std::abs(e - collocated_energy.front()));
  return worst / std::abs(collocated_energy.front());
}

Trajectory wave_evolve(const LatticeField& f0, const LatticeField& v0, const WaveConfig& cfg) {
  if (!(f0.params == v0.params)) throw ParameterMismatch(f0.n(), v0.n());
  if (!(cfg.alpha > 0.0) || !(cfg.dt > 0.0) || cfg.steps < 1 || cfg.sample_every < 1) {
    throw std::invalid_argument("wave_evolve: need alpha > 0, dt > 0, steps >= 1, sample_every >= 1");
  }
  const double courant = std::sqrt(cfg.alpha) * cfg.dt;
  if (courant > kWaveStabilityLimit) {
    throw std::invalid_argument("wave_evolve: sqrt(alpha) * dt = " + std::to_string(courant) +
                                " exceeds the stability bound " +
                                std::to_string(kWaveStabilityLimit));
  }

  const double h = cfg.dt;
  const double alpha = cfg.alpha;
  Trajectory traj;
  traj.config = cfg;
  traj.energy.reserve(static_cast<std::size_t>(cfg.steps));
  traj.collocated_energy.reserve(static_cast<std::size_t>(cfg.steps) + 1);

  Vector x = f0.values;
  Vector v = v0.values;
  Vector accel = alpha * laplacian_of(x);
  Vector dx = forward_difference(x);

  auto collocated = [alpha](const Vector& vel, const Vector& diff) {
    return 0.5 * vel.squaredNorm() + 0.5 * alpha * diff.squaredNorm();
  };

  traj.samples.push_back({0, x});
  traj.collocated_energy.push_back(collocated(v, dx));

  for (int step = 1; step <= cfg.steps; ++step) {
    const Vector v_half = v + 0.5 * h * accel;
    const Vector x_next = x + h * v_half;
    const Vector dx_next = forward_difference(x_next);
    traj.energy.push_back(0.5 * v_half.squaredNorm() + 0.5 * alpha * dx_next.dot(dx).real());

    accel = alpha * laplacian_of(x_next);
    v = v_half + 0.5 * h * accel;
    x = x_next;
    dx = dx_next;
    traj.collocated_energy.push_back(collocated(v, dx));
    if (step % cfg.sample_every == 0 || step == cfg.steps) traj.samples.push_back({step, x});
  }
  return traj;
}

double lattice_frequency(int n, int k, double alpha) {
  return 2.0 * std::sqrt(alpha) * std::abs(std::sin(std::numbers::pi * k / n));
}

double leapfrog_frequency(int n, int k, double alpha, double dt) {
  return 2.0 / dt * std::asin(0.5 * lattice_frequency(n, k, alpha) * dt);
}

double ModeFrequency::relative_error() const { return std::abs(measured - exact) / exact; }

ModeFrequency measure_mode_frequency(const AlgebraParams& params, int k, const WaveConfig& cfg) {
  const int n = params.n();
  if (mod(k, n) == 0) throw std::invalid_argument("measure_mode_frequency: mode 0 does not oscillate");
  WaveConfig run = cfg;
  run.sample_every = 1;

  LatticeField f0 = zero_field(params);
  Vector mode(n);
  for (int j = 0; j < n; ++j) mode(j) = std::cos(2.0 * std::numbers::pi * k * j / n);
  f0.values = mode;
  const Trajectory traj = wave_evolve(f0, zero_field(params), run);

  // Modal amplitude by projection onto the initial mode shape.
  const double norm = mode.squaredNorm();
  std::vector<double> amp;
  amp.reserve(traj.samples.size());
  for (const auto& s : traj.samples) amp.push_back(mode.dot(s.values).real() / norm);

  double num = 0.0;
  double den = 0.0;
  for (std::size_t m = 1; m + 1 < amp.size(); ++m) {
    num += amp[m] * (amp[m + 1] + amp[m - 1]);
    den += 2.0 * amp[m] * amp[m];
  }
  const double cos_step = std::clamp(num / den, -1.0, 1.0);

  ModeFrequency out;
  out.k = k;
  out.measured = std::acos(cos_step) / cfg.dt;
  out.exact = lattice_frequency(n, k, cfg.alpha);
  out.leapfrog = leapfrog_frequency(n, k, cfg.alpha, cfg.dt);
  return out;
}

double unitarity_deviation(const Matrix& c) {
  return max_abs_diff(Matrix(c.adjoint() * c), Matrix::Identity(c.rows(), c.cols()));
}

LatticeField apply_automorphism_field(const LatticeField& f, const Matrix& c) {
  if (c.rows() != f.n()) throw ParameterMismatch(static_cast<int>(c.rows()), f.n());
  require_unitary(c, "apply_automorphism_field");
  return {f.params, c.conjugate() * f.values};
}

Matrix apply_automorphism_operator(const Matrix& m, const Matrix& c) {
  if (m.rows() != c.rows() || m.cols() != c.cols()) {
    throw ParameterMismatch(static_cast<int>(m.rows()), static_cast<int>(c.rows()));
  }
  require_unitary(c, "apply_automorphism_operator");
  return c.adjoint() * m * c;
}

std::vector<Complex> canonical_spectrum(const Matrix& m) {
  const Eigen::ComplexEigenSolver<Matrix> solver(m, false);
  const auto& ev = solver.eigenvalues();
  std::vector<Complex> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
    const double aa = canonical_arg(a);
    const double ab = canonical_arg(b);
    if (std::abs(aa - ab) > 1e-12) return aa < ab;
    return std::abs(a) < std::abs(b);
  });
  return out;
}

double spectrum_deviation(std::span<const Complex> lhs, std::span<const Complex> rhs) {
  if (lhs.size() != rhs.size()) return std::numeric_limits<double>::infinity();
  std::vector<bool> taken(rhs.size(), false);
  double worst = 0.0;
  for (const Complex z : lhs) {
    std::size_t best = rhs.size();
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < rhs.size(); ++k) {
      if (taken[k]) continue;
      const double d = std::abs(z - rhs[k]);
      if (d < best_dist) {
        best_dist = d;
        best = k;
      }
    }
    taken[best] = true;
    worst = std::max(worst, best_dist);
  }
  return worst;
}

double band_energy(const Matrix& m, int band_radius) {
  const Eigen::Index n = m.rows();
  double inside = 0.0;
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double w = std::norm(m(i, j));
      const Eigen::Index d = std::abs(i - j);
      if (std::min(d, n - d) <= band_radius) inside += w;
      total += w;
    }
  }
  return total == 0.0 ? 1.0 : inside / total;
}

LocalityReport locality_report(const Matrix& m, int band_radius) {
  if (m.rows() != m.cols()) throw std::invalid_argument("locality_report: matrix not square");
  LocalityReport r;
  r.band_energy = band_energy(m, band_radius);
  r.delocalization_index = 1.0 - r.band_energy;
  r.spectrum = canonical_spectrum(m);
  return r;
}

Matrix recover_canonical_basis(const Matrix& np) {
  const auto n = static_cast<int>(np.rows());
  const std::string reject = "not an exploded neighbourhood operator: ";
  if (np.rows() != np.cols() || n < 2) throw std::invalid_argument(reject + "bad shape");
  if (unitarity_deviation(np) > 1e-9) throw std::invalid_argument(reject + "not unitary");

  // Np is normal, so its complex Schur form is diagonal and Q holds orthonormal eigenvectors.
  const Eigen::ComplexSchur<Matrix> schur(np);
  const Matrix& q = schur.matrixU();
  const Matrix& t = schur.matrixT();
  const AlgebraParams params(n);

  Matrix eigvecs(n, n);
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int col = 0; col < n; ++col) {
    const Complex lambda = t(col, col);
    const int p = mod(std::llround(canonical_arg(lambda) * n / (2.0 * std::numbers::pi)), n);
    if (std::abs(lambda - params.omega_pow(p)) > 1e-8) {
      throw std::invalid_argument(reject + "eigenvalue off the n-th roots of unity");
    }
    if (seen[static_cast<std::size_t>(p)]) throw std::invalid_argument(reject + "degenerate spectrum");
    seen[static_cast<std::size_t>(p)] = true;

    Vector v = q.col(col);
    const double peak = v.cwiseAbs().maxCoeff();
    Eigen::Index lead = 0;
    while (std::abs(v(lead)) < peak * (1.0 - 1e-9)) ++lead;
    v *= std::conj(v(lead)) / std::abs(v(lead));
    eigvecs.col(p) = v;
  }

  // Canonical shift = F diag(w^p) F^dagger, F_ij = w^{ij} / sqrt(n).
  Matrix f(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      f(i, j) = params.omega_pow(static_cast<long long>(i) * j) / std::sqrt(static_cast<double>(n));
    }
  }
  return eigvecs * f.adjoint();
}

BandReductionReport simultaneous_band_reduction(std::span<const Matrix> family, double tol) {
  BandReductionReport report;
  if (family.empty()) return report;
  const Matrix v = recover_canonical_basis(family.front());
  report.reducible = true;
  for (const Matrix& m : family) {
    const double be = band_energy(Matrix(v.adjoint() * m * v));
    report.band_energies.push_back(be);
    if (be < 1.0 - tol) report.reducible = false;
  }
  return report;
}

double neighbour_momentum_expectation(const AlgebraParams& params, const Vector& psi) {
  const int n = params.n();
  const Matrix d = to_matrix(neighbour_minus(params) - neighbour_plus(params));
  const Complex scale = static_cast<double>(n) / (4.0 * std::numbers::pi * Complex(0.0, 1.0));
  return (scale * psi.dot(d * psi)).real();
}

}  // namespace weyl
