#include "weyl/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>

#include "weyl/ideals.hpp"
#include "weyl/limits.hpp"
#include "weyl/locality.hpp"
#include "weyl/operators.hpp"
#include "weyl/random.hpp"

namespace weyl {

namespace {

constexpr int kSampleCount = 1024;
constexpr int kRandomTrials = 20;

struct CommandName {
  Command command;
  std::string_view name;
};

constexpr std::array<CommandName, 7> kCommandNames{{
    {Command::verify, "verify"},
    {Command::commutator, "commutator"},
    {Command::uncertainty, "uncertainty"},
    {Command::limit, "limit"},
    {Command::explode, "explode"},
    {Command::wave, "wave"},
    {Command::duality_audit, "duality-audit"},
}};

// Visits every index of a product space of `total` tuples, or kSampleCount seeded
// draws from it when it exceeds the exhaustive budget.
template <class F>
void visit(long long total, Rng& rng, IdentityCheck& check, F&& f) {
  if (total <= kExhaustiveBudget) {
    for (long long i = 0; i < total; ++i) f(i);
    check.checked = total;
    check.exhaustive = true;
    return;
  }
  for (int s = 0; s < kSampleCount; ++s) {
    f(std::min(total - 1, static_cast<long long>(rng.uniform() * static_cast<double>(total))));
  }
  check.checked = kSampleCount;
  check.exhaustive = false;
}

std::array<int, 4> digits(long long i, int n) {
  std::array<int, 4> d{};
  for (int& x : d) {
    x = static_cast<int>(i % n);
    i /= n;
  }
  return d;
}

Matrix unit_matrix(int n, int i, int j) {
  Matrix m = Matrix::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

Json header(const RunConfig& cfg) {
  Json h;
  h["command"] = std::string(to_string(cfg.command));
  if (cfg.command == Command::limit) {
    h["n_list"] = cfg.n_list;
  } else {
    h["n"] = cfg.n;
  }
  h["seed"] = cfg.seed;
  h["tool_version"] = std::string(kToolVersion);
  h["conventions"] = Json{
      {"shift_direction", std::string(convention::kShiftDirection)},
      {"momentum_exp_sign", convention::kMomentumExpSign},
      {"position_exp_sign", convention::kPositionExpSign},
      {"neighbour_plus_shift_power", convention::kNeighbourPlusShiftPower},
  };
  return h;
}

std::string csv_header(const RunConfig& cfg) {
  std::ostringstream out;
  out << "# command: " << to_string(cfg.command) << '\n';
  if (cfg.command == Command::limit) {
    out << "# n_list: ";
    for (std::size_t k = 0; k < cfg.n_list.size(); ++k) out << (k ? " " : "") << cfg.n_list[k];
    out << '\n';
  } else {
    out << "# n: " << cfg.n << '\n';
  }
  out << "# seed: " << cfg.seed << '\n'
      << "# tool_version: " << kToolVersion << '\n'
      << "# shift_direction: " << convention::kShiftDirection << '\n'
      << "# momentum_exp_sign: " << convention::kMomentumExpSign << '\n'
      << "# position_exp_sign: " << convention::kPositionExpSign << '\n'
      << "# neighbour_plus_shift_power: " << convention::kNeighbourPlusShiftPower << '\n';
  return out.str();
}

CommandResult finish(const RunConfig& cfg, Json body, std::string csv_rows, int exit_code,
                     std::string message) {
  CommandResult r;
  r.exit_code = exit_code;
  r.message = std::move(message);
  if (cfg.format == OutputFormat::json) {
    Json doc = header(cfg);
    for (auto& [key, value] : body.items()) doc[key] = std::move(value);
    r.report = doc.dump(2) + "\n";
    r.extension = "json";
  } else {
    r.report = csv_header(cfg) + csv_rows;
    r.extension = "csv";
  }
  return r;
}

const char* bool_text(bool b) { return b ? "true" : "false"; }

// ---------------------------------------------------------------- verify

CommandResult run_verify(const RunConfig& cfg) {
  const AlgebraParams params(cfg.n);
  const auto checks = run_identity_suites(params, cfg.seed);

  Json rows = Json::array();
  std::ostringstream csv;
  csv << "identity,max_deviation,tolerance,checked,exhaustive,pass\n";
  std::string failing;
  for (const auto& c : checks) {
    rows.push_back(Json{{"identity", c.name},
                        {"max_deviation", c.max_deviation},
                        {"tolerance", c.tolerance},
                        {"checked", c.checked},
                        {"exhaustive", c.exhaustive},
                        {"pass", c.pass()}});
    csv << c.name << ',' << format_number(c.max_deviation) << ',' << format_number(c.tolerance)
        << ',' << c.checked << ',' << bool_text(c.exhaustive) << ',' << bool_text(c.pass()) << '\n';
    if (!c.pass()) failing += (failing.empty() ? "" : ", ") + c.name;
  }
  const bool ok = failing.empty();
  Json body{{"identities", std::move(rows)}, {"all_pass", ok}};
  return finish(cfg, std::move(body), csv.str(), ok ? kExitPass : kExitFail,
                ok ? "" : "failing identities: " + failing);
}

// ---------------------------------------------------------------- commutator

CommandResult run_commutator(const RunConfig& cfg) {
  const AlgebraParams params(cfg.n);
  const int n = params.n();
  const AlgebraElement k = commutator_xp(params);
  const Matrix km = to_matrix(k);
  const double anti = max_abs_diff(Matrix(km + km.adjoint()), Matrix::Zero(n, n));
  const Complex tr = km.trace();
  const double op_norm = Eigen::JacobiSVD<Matrix>(km).singularValues()(0);
  const double fro = km.norm();
  const double tol = tolerance(n);
  const bool ok = anti <= tol && std::abs(tr) <= tol && op_norm > tol;

  std::ostringstream csv;
  csv << "row,col,re,im\n";
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      csv << r << ',' << c << ',' << format_number(km(r, c).real()) << ','
          << format_number(km(r, c).imag()) << '\n';
    }
  }
  Json body{{"matrix", to_json(km)},
            {"anti_hermitian_deviation", anti},
            {"trace", to_json(tr)},
            {"operator_norm", op_norm},
            {"frobenius_norm", fro},
            {"tolerance", tol},
            {"pass", ok}};
  return finish(cfg, std::move(body), csv.str(), ok ? kExitPass : kExitFail,
                ok ? "" : "commutator is not anti-hermitian, traceless and nonzero");
}

// ---------------------------------------------------------------- uncertainty

CommandResult run_uncertainty(const RunConfig& cfg) {
  const AlgebraParams params(cfg.n);
  const UncertaintyReport report = uncertainty_exists(params, cfg.trials, cfg.seed);

  // Robertson check over the same seeded states.
  const AlgebraElement x = position_operator(params);
  const AlgebraElement p = momentum_operator(params);
  Rng rng(cfg.seed);
  int violations = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  for (int t = 0; t < cfg.trials; ++t) {
    const StateVector psi{params, random_unit_vector(params.n(), rng), Basis::position};
    const RobertsonReport r = robertson_check(psi, x, p);
    if (!r.holds) ++violations;
    worst_margin = std::min(worst_margin, r.product - r.bound);
  }
  const bool ok = report.witness_found && violations == 0;

  Json amps = Json::array();
  for (Eigen::Index k = 0; k < report.best_amps.size(); ++k) amps.push_back(to_json(report.best_amps(k)));
  std::ostringstream csv;
  csv << "trials,best_bound,witness_threshold,witness_found,robertson_violations,worst_margin\n"
      << cfg.trials << ',' << format_number(report.best_bound) << ','
      << format_number(kWitnessThreshold) << ',' << bool_text(report.witness_found) << ','
      << violations << ',' << format_number(worst_margin) << '\n';
  Json body{{"trials", cfg.trials},
            {"best_bound", report.best_bound},
            {"witness_threshold", kWitnessThreshold},
            {"witness_found", report.witness_found},
            {"witness_state", Json{{"n", params.n()}, {"basis", "position"}, {"amps", std::move(amps)}}},
            {"robertson_violations", violations},
            {"worst_margin", worst_margin},
            {"pass", ok}};
  std::string message;
  if (!report.witness_found) message = "no state with bound above the witness threshold";
  if (violations > 0) message = std::to_string(violations) + " Robertson violations";
  return finish(cfg, std::move(body), csv.str(), ok ? kExitPass : kExitFail, message);
}

// ---------------------------------------------------------------- limit

CommandResult run_limit(const RunConfig& cfg) {
  const ConvergenceReport report = continuum_limit_study(cfg.n_list, WidthRule{cfg.width_factor});
  const double final_error = report.rows.back().error;
  const bool ok = report.monotone_flag && final_error < kContinuumErrorThreshold;
  Json body = to_json(report);
  body["width_factor"] = cfg.width_factor;
  body["error_threshold"] = kContinuumErrorThreshold;
  body["pass"] = ok;
  std::string message;
  if (!report.monotone_flag) message = "errors are not non-increasing";
  else if (!ok) message = "final error " + format_number(final_error) + " above threshold";
  return finish(cfg, std::move(body), to_csv(report), ok ? kExitPass : kExitFail, message);
}

// ---------------------------------------------------------------- explode

CommandResult run_explode(const RunConfig& cfg) {
  const AlgebraParams params(cfg.n);
  const int n = params.n();
  const Matrix np = to_matrix(neighbour_plus(params));
  Rng rng(cfg.seed);
  const Matrix c = random_unitary(n, rng);
  const Matrix exploded = apply_automorphism_operator(np, c);

  const LocalityReport canonical = locality_report(np);
  const LocalityReport transformed = locality_report(exploded);
  const double spec_dev = spectrum_deviation(canonical.spectrum, transformed.spectrum);
  const double spec_tol = 1e-9 * n;
  const bool preserved = spec_dev < spec_tol;
  // Radius-1 bands cover a fraction 3/n of the matrix; below that the threshold cannot be crossed
  // even by a completely spread operator, so the run is report-only.
  const bool gated = 1.0 - 3.0 / n > kDelocalizationThreshold;
  const bool crossed = transformed.delocalization_index > kDelocalizationThreshold;
  const bool ok = preserved && (!gated || crossed);

  std::ostringstream csv;
  csv << "operator,band_energy,delocalization_index\n"
      << "canonical," << format_number(canonical.band_energy) << ','
      << format_number(canonical.delocalization_index) << '\n'
      << "transformed," << format_number(transformed.band_energy) << ','
      << format_number(transformed.delocalization_index) << '\n'
      << "# spectrum_deviation: " << format_number(spec_dev) << '\n'
      << "# threshold_applies: " << bool_text(gated) << '\n';
  Json body{{"canonical", to_json(canonical)},
            {"transformed", to_json(transformed)},
            {"spectrum_deviation", spec_dev},
            {"spectrum_tolerance", spec_tol},
            {"delocalization_threshold", kDelocalizationThreshold},
            {"threshold_applies", gated},
            {"pass", ok}};
  std::string message;
  if (!preserved) message = "spectrum not preserved: deviation " + format_number(spec_dev);
  else if (!ok) message = "delocalization threshold not crossed";
  return finish(cfg, std::move(body), csv.str(), ok ? kExitPass : kExitFail, message);
}

// ---------------------------------------------------------------- wave

CommandResult run_wave(const RunConfig& cfg) {
  const AlgebraParams params(cfg.n);
  const int n = params.n();
  WaveConfig wc{cfg.alpha, cfg.dt, cfg.steps, cfg.sample_every};

  // Smooth seeded initial data from the lowest three Fourier modes, at rest.
  Rng rng(cfg.seed);
  LatticeField f0 = zero_field(params);
  for (int k = 1; k <= std::min(3, n / 2); ++k) {
    const double a = rng.normal();
    const double b = rng.normal();
    for (int j = 0; j < n; ++j) {
      const double t = 2.0 * std::numbers::pi * k * j / n;
      f0.values(j) += a * std::cos(t) + b * std::sin(t);
    }
  }
  const Trajectory traj = wave_evolve(f0, zero_field(params), wc);
  const double drift = traj.energy_drift();

  Json modes = Json::array();
  double worst_exact = 0.0;
  double worst_leapfrog = 0.0;
  for (int k = 1; k <= n / 2; ++k) {
    const ModeFrequency m = measure_mode_frequency(params, k, wc);
    const double lf_err = std::abs(m.measured - m.leapfrog) / m.leapfrog;
    worst_exact = std::max(worst_exact, m.relative_error());
    worst_leapfrog = std::max(worst_leapfrog, lf_err);
    modes.push_back(Json{{"k", k},
                         {"measured", m.measured},
                         {"lattice", m.exact},
                         {"leapfrog", m.leapfrog},
                         {"relative_error", m.relative_error()},
                         {"leapfrog_relative_error", lf_err}});
  }
  const bool ok = drift < kEnergyDriftBound;

  Json samples = Json::array();
  for (const auto& s : traj.samples) {
    Json values = Json::array();
    for (Eigen::Index j = 0; j < s.values.size(); ++j) values.push_back(to_json(s.values(j)));
    samples.push_back(Json{{"step", s.step}, {"values", std::move(values)}});
  }
  Json body{{"alpha", cfg.alpha},
            {"dt", cfg.dt},
            {"steps", cfg.steps},
            {"sample_every", cfg.sample_every},
            {"energy_drift", drift},
            {"collocated_energy_variation", traj.collocated_energy_variation()},
            {"energy_drift_bound", kEnergyDriftBound},
            {"dispersion", std::move(modes)},
            {"max_relative_error", worst_exact},
            {"max_leapfrog_relative_error", worst_leapfrog},
            {"trajectory", std::move(samples)},
            {"pass", ok}};
  std::string csv = "# energy_drift: " + format_number(drift) + "\n" + trajectory_to_csv(traj);
  return finish(cfg, std::move(body), std::move(csv), ok ? kExitPass : kExitFail,
                ok ? "" : "energy drift " + format_number(drift) + " above bound");
}

// ---------------------------------------------------------------- duality-audit

CommandResult run_duality_audit(const RunConfig& cfg) {
  const AlgebraParams params(cfg.n);
  const DualityAudit a = audit_duality_map(params);
  std::ostringstream csv;
  csv << "unitarity_deviation,invertible,transport_deviation,scalar_re,scalar_im,scalar_residual,"
         "column_permutation,permutation_residual\n"
      << format_number(a.unitarity_deviation) << ',' << bool_text(a.invertible) << ','
      << format_number(a.transport_deviation) << ',' << format_number(a.best_scalar.real()) << ','
      << format_number(a.best_scalar.imag()) << ',' << format_number(a.scalar_residual) << ','
      << bool_text(a.column_permutation) << ',' << format_number(a.permutation_residual) << '\n';
  Json body{{"unitarity_deviation", a.unitarity_deviation},
            {"invertible", a.invertible},
            {"transport_deviation", a.transport_deviation},
            {"best_scalar", to_json(a.best_scalar)},
            {"scalar_residual", a.scalar_residual},
            {"column_permutation", a.column_permutation},
            {"permutation", a.permutation},
            {"permutation_residual", a.permutation_residual},
            {"matches_dft_up_to_scalar", a.scalar_residual <= tolerance(params.n())}};
  return finish(cfg, std::move(body), csv.str(), kExitPass, "");
}

}  // namespace

std::string_view to_string(Command c) {
  for (const auto& e : kCommandNames) {
    if (e.command == c) return e.name;
  }
  return "unknown";
}

std::optional<Command> command_from_string(std::string_view s) {
  for (const auto& e : kCommandNames) {
    if (e.name == s) return e.command;
  }
  return std::nullopt;
}

std::vector<IdentityCheck> run_identity_suites(const AlgebraParams& p, std::uint64_t seed) {
  const int n = p.n();
  const double tol = tolerance(n);
  Rng rng(seed);
  std::vector<IdentityCheck> out;
  auto single = [&](std::string name, double dev, long long checked = 1) {
    out.push_back({std::move(name), dev, tol, checked, true});
  };

  const AlgebraElement one = identity(p);
  const AlgebraElement s = generator_shift(p);
  const AlgebraElement c = generator_clock(p);
  const long long n2 = static_cast<long long>(n) * n;
  const long long n4 = n2 * n2;

  // Generators and product rule.
  single("shift_order", max_abs_diff(power(s, static_cast<unsigned>(n)), one));
  single("clock_order", max_abs_diff(power(c, static_cast<unsigned>(n)), one));
  single("shift_clock_exchange", max_abs_diff(s * c, p.omega() * (c * s)));
  {
    IdentityCheck chk{"basis_product_rule", 0.0, tol};
    visit(n4, rng, chk, [&](long long i) {
      const auto [a, b, c2, d] = digits(i, n);
      const AlgebraElement lhs = basis_element(p, a, b) * basis_element(p, c2, d);
      const AlgebraElement rhs = p.omega_pow(-static_cast<long long>(b) * c2) * basis_element(p, a + c2, b + d);
      chk.max_deviation = std::max(chk.max_deviation, max_abs_diff(lhs, rhs));
    });
    out.push_back(chk);
  }
  {
    double dev = 0.0;
    double fast_dev = 0.0;
    for (int t = 0; t < kRandomTrials; ++t) {
      const AlgebraElement x = random_element(p, rng);
      const AlgebraElement y = random_element(p, rng);
      const AlgebraElement z = random_element(p, rng);
      dev = std::max(dev, max_abs_diff((x * y) * z, x * (y * z)));
      fast_dev = std::max(fast_dev, max_abs_diff(x * y, multiply_direct(x, y)));
    }
    single("associativity", dev, kRandomTrials);
    single("fast_product_matches_direct", fast_dev, kRandomTrials);
  }

  // Representation.
  {
    double hom = 0.0;
    double round = 0.0;
    for (int t = 0; t < kRandomTrials; ++t) {
      const AlgebraElement x = random_element(p, rng);
      const AlgebraElement y = random_element(p, rng);
      hom = std::max(hom, max_abs_diff(to_matrix(x * y), Matrix(to_matrix(x) * to_matrix(y))));
      round = std::max(round, max_abs_diff(from_matrix(p, to_matrix(x)), x));
    }
    single("representation_product", hom, kRandomTrials);
    single("matrix_round_trip", round, kRandomTrials);
    double adj = 0.0;
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        const AlgebraElement e = basis_element(p, a, b);
        adj = std::max(adj, max_abs_diff(to_matrix(adjoint(e)), Matrix(to_matrix(e).adjoint())));
      }
    }
    single("representation_adjoint", adj, n2);
  }

  // Idempotents, matrix units and ideals.
  {
    const IdempotentAudit audit = audit_idempotents(canonical_idempotents(p));
    single("idempotent_square", audit.idempotency, n);
    single("idempotent_orthogonality", audit.orthogonality, n2);
    single("idempotent_resolution", audit.resolution, 1);
    single("idempotent_trace", audit.trace, n);
    single("idempotent_rank_one", std::max(std::abs(audit.max_rank - 1), std::abs(audit.min_rank - 1)), n);
  }
  {
    IdentityCheck chk{"matrix_unit_product", 0.0, tol};
    visit(n4, rng, chk, [&](long long idx) {
      const auto [i, k, j, m] = digits(idx, n);
      const AlgebraElement lhs = matrix_unit(p, i, k) * matrix_unit(p, j, m);
      const AlgebraElement rhs = k == j ? matrix_unit(p, i, m) : zero(p);
      chk.max_deviation = std::max(chk.max_deviation, max_abs_diff(lhs, rhs));
    });
    out.push_back(chk);
  }
  {
    double image = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        image = std::max(image, max_abs_diff(to_matrix(matrix_unit(p, i, j)), unit_matrix(n, i, j)));
      }
    }
    single("matrix_unit_image", image, n2);
    const AlgebraElement e00 = primitive_idempotent(p, 0);
    double left = 0.0;
    double right = 0.0;
    for (int i = 0; i < n; ++i) {
      const AlgebraElement l = left_ideal_basis(p, i);
      const AlgebraElement r = right_ideal_basis(p, i);
      left = std::max({left, max_abs_diff(l, matrix_unit(p, i, 0)), max_abs_diff(l * e00, l)});
      right = std::max({right, max_abs_diff(r, matrix_unit(p, 0, i)), max_abs_diff(e00 * r, r)});
    }
    single("left_ideal_basis", left, n);
    single("right_ideal_basis", right, n);
  }

  // Position, momentum and translations.
  const AlgebraElement x = position_operator(p);
  const AlgebraElement mom = momentum_operator(p);
  {
    Matrix diag = Matrix::Zero(n, n);
    for (int j = 0; j < n; ++j) diag(j, j) = static_cast<double>(j);
    single("position_image", max_abs_diff(to_matrix(x), diag));
    double eig = 0.0;
    for (int j = 0; j < n; ++j) {
      for (int m = 0; m < n; ++m) {
        const AlgebraElement e = matrix_unit(p, j, m);
        eig = std::max(eig, max_abs_diff(x * e, static_cast<double>(j) * e));
      }
    }
    single("position_eigenrelation", eig, n2);

    const IdempotentSet canon = canonical_idempotents(p);
    double transport = 0.0;
    double kets = 0.0;
    for (int a = 0; a < n; ++a) {
      const AlgebraElement t = translation_position(p, a);
      const IdempotentSet moved = conjugate_set(canon, t);
      for (int j = 0; j < n; ++j) {
        transport = std::max(transport, max_abs_diff(moved.elements[static_cast<std::size_t>(j)],
                                                     canon.elements[static_cast<std::size_t>(mod(j + a, n))]));
        const StateVector shifted = apply(t, position_ket(p, j));
        kets = std::max(kets, (shifted.amps - position_ket(p, mod(j + a, n)).amps).cwiseAbs().maxCoeff());
      }
    }
    single("position_translation", transport, n2);
    single("position_ket_translation", kets, n2);
  }
  {
    const IdempotentSet dual = dual_idempotents(p);
    const IdempotentAudit audit = audit_idempotents(dual);
    single("dual_idempotent_system",
           std::max({audit.idempotency, audit.orthogonality, audit.resolution, audit.trace}), n2);
    double eig = 0.0;
    for (int j = 0; j < n; ++j) {
      const AlgebraElement& e = dual.elements[static_cast<std::size_t>(j)];
      eig = std::max(eig, max_abs_diff(mom * e, static_cast<double>(j) * e));
    }
    single("momentum_eigenrelation", eig, n);
    double transport = 0.0;
    for (int b = 0; b < n; ++b) {
      const IdempotentSet moved = conjugate_set(dual, translation_momentum(p, b));
      for (int j = 0; j < n; ++j) {
        transport = std::max(transport, max_abs_diff(moved.elements[static_cast<std::size_t>(j)],
                                                     dual.elements[static_cast<std::size_t>(mod(j + b, n))]));
      }
    }
    single("momentum_translation", transport, n2);

    const AlgebraElement f = duality_map_dft(p);
    const Matrix fm = to_matrix(f);
    single("duality_unitarity", unitarity_deviation(fm));
    const IdempotentSet mapped = conjugate_set(canonical_idempotents(p), f);
    double dual_dev = 0.0;
    for (int j = 0; j < n; ++j) {
      dual_dev = std::max(dual_dev, max_abs_diff(mapped.elements[static_cast<std::size_t>(j)],
                                                 dual.elements[static_cast<std::size_t>(j)]));
    }
    single("duality_transport", dual_dev, n);
  }

  // Exponential forms with the frozen signs.
  {
    const ExpFormReport e = exp_form_report(p);
    single("exp_form_shift",
           convention::kMomentumExpSign > 0 ? e.shift_plus : e.shift_minus);
    single("exp_form_clock",
           convention::kPositionExpSign > 0 ? e.clock_plus : e.clock_minus);
  }

  // Kets.
  {
    double ortho = 0.0;
    double overlap = 0.0;
    double ideal = 0.0;
    const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(n));
    for (int j = 0; j < n; ++j) {
      const StateVector pj = momentum_ket(p, j);
      ideal = std::max(ideal, (ideal_to_ket(ket_to_ideal(pj)).amps - pj.amps).cwiseAbs().maxCoeff());
      for (int k = 0; k < n; ++k) {
        const StateVector pk = momentum_ket(p, k);
        ortho = std::max(ortho, std::abs(inner_product(pj, pk) - (j == k ? 1.0 : 0.0)));
        const Complex expected = p.omega_pow(static_cast<long long>(j) * k) * inv_sqrt;
        overlap = std::max(overlap, std::abs(inner_product(position_ket(p, j), pk) - expected));
      }
    }
    single("momentum_ket_orthonormality", ortho, n2);
    single("position_momentum_overlap", overlap, n2);
    single("ket_ideal_round_trip", ideal, n);
  }

  // Commutator.
  {
    const Matrix k = to_matrix(commutator(x, mom));
    single("commutator_anti_hermitian", max_abs_diff(Matrix(k + k.adjoint()), Matrix::Zero(n, n)));
    single("commutator_traceless", std::abs(k.trace()));
  }
  return out;
}

void validate(const RunConfig& cfg) {
  auto need = [](bool ok, const std::string& what) {
    if (!ok) throw UsageError(what);
  };
  if (cfg.command == Command::limit) {
    need(!cfg.n_list.empty(), "limit requires --n-list");
    for (std::size_t k = 0; k < cfg.n_list.size(); ++k) {
      need(cfg.n_list[k] >= kContinuumMinN,
           "--n-list entries must be >= " + std::to_string(kContinuumMinN));
      need(k == 0 || cfg.n_list[k] > cfg.n_list[k - 1], "--n-list must be strictly ascending");
    }
    need(cfg.width_factor > 0.0, "--width-factor must be > 0");
    return;
  }
  need(cfg.n >= 2, "--n must be >= 2");
  switch (cfg.command) {
    case Command::verify:
      need(cfg.n <= kVerifyMaxN, "verify supports n <= " + std::to_string(kVerifyMaxN));
      break;
    case Command::uncertainty:
      need(cfg.trials >= 1, "--trials must be >= 1");
      break;
    case Command::wave:
      need(cfg.alpha > 0.0, "--alpha must be > 0");
      need(cfg.dt > 0.0, "--dt must be > 0");
      need(cfg.steps >= 1, "--steps must be >= 1");
      need(cfg.sample_every >= 1, "--sample-every must be >= 1");
      need(std::sqrt(cfg.alpha) * cfg.dt <= kWaveStabilityLimit,
           "sqrt(alpha) * dt must be <= " + format_number(kWaveStabilityLimit));
      break;
    default:
      break;
  }
}

CommandResult run_command(const RunConfig& cfg) {
  try {
    validate(cfg);
  } catch (const UsageError& e) {
    return {kExitUsage, "", e.what(), ""};
  }
  try {
    switch (cfg.command) {
      case Command::verify: return run_verify(cfg);
      case Command::commutator: return run_commutator(cfg);
      case Command::uncertainty: return run_uncertainty(cfg);
      case Command::limit: return run_limit(cfg);
      case Command::explode: return run_explode(cfg);
      case Command::wave: return run_wave(cfg);
      case Command::duality_audit: return run_duality_audit(cfg);
    }
  } catch (const std::exception& e) {
    return {kExitFail, "", e.what(), ""};
  }
  return {kExitUsage, "", "unknown command", ""};
}

std::string resolve_output_path(const RunConfig& cfg, const std::string& extension) {
  if (!cfg.output_path.empty()) return cfg.output_path;
  if (const char* dir = std::getenv("WEYL_OUTPUT_DIR"); dir != nullptr && *dir != '\0') {
    return (std::filesystem::path(dir) / (std::string(to_string(cfg.command)) + "." + extension)).string();
  }
  return "";
}

void write_report(const RunConfig& cfg, const CommandResult& result) {
  if (result.report.empty()) return;
  const std::string path = resolve_output_path(cfg, result.extension);
  if (path.empty()) {
    std::cout << result.report;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << result.report;
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace weyl
