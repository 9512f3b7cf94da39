#include "weyl/ideals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace weyl {

namespace {

void check_index(const AlgebraParams& p, int i, const char* what) {
  if (i < 0 || i >= p.n()) {
    throw std::out_of_range(std::string(what) + ": index " + std::to_string(i) +
                            " outside [0, " + std::to_string(p.n()) + ")");
  }
}

}  // namespace

AlgebraElement primitive_idempotent(const AlgebraParams& params, int i) {
  check_index(params, i, "primitive_idempotent");
  const int n = params.n();
  AlgebraElement e(params);
  for (int k = 0; k < n; ++k) {
    e.coeff(0, k) = params.omega_pow(-static_cast<long long>(i) * k) / static_cast<double>(n);
  }
  return e;
}

AlgebraElement matrix_unit(const AlgebraParams& params, int i, int j) {
  check_index(params, i, "matrix_unit");
  check_index(params, j, "matrix_unit");
  const int n = params.n();
  AlgebraElement e(params);
  for (int r = 0; r < n; ++r) {
    e.coeff(j - i, r) = params.omega_pow(-static_cast<long long>(j) * r) / static_cast<double>(n);
  }
  return e;
}

AlgebraElement left_ideal_basis(const AlgebraParams& params, int i) {
  check_index(params, i, "left_ideal_basis");
  const int n = params.n();
  AlgebraElement e(params);
  for (int k = 0; k < n; ++k) e.coeff(-i, k) = 1.0 / static_cast<double>(n);
  return e;
}

AlgebraElement right_ideal_basis(const AlgebraParams& params, int j) {
  check_index(params, j, "right_ideal_basis");
  const int n = params.n();
  AlgebraElement e(params);
  for (int k = 0; k < n; ++k) {
    e.coeff(j, -k) = params.omega_pow(static_cast<long long>(j) * k) / static_cast<double>(n);
  }
  return e;
}

IdempotentSet canonical_idempotents(const AlgebraParams& params) {
  IdempotentSet set{params, {}};
  set.elements.reserve(static_cast<std::size_t>(params.n()));
  for (int i = 0; i < params.n(); ++i) set.elements.push_back(primitive_idempotent(params, i));
  return set;
}

double condition_number(const AlgebraElement& x) {
  const Eigen::JacobiSVD<Matrix> svd(to_matrix(x));
  const auto& s = svd.singularValues();
  const double smallest = s(s.size() - 1);
  if (smallest == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smallest;
}

AlgebraElement inverse(const AlgebraElement& s) {
  const double cond = condition_number(s);
  if (!(cond <= kMaxCondition)) {
    throw SingularElement("element is singular or ill-conditioned (cond = " +
                              std::to_string(cond) + ")",
                          cond);
  }
  const Matrix m = to_matrix(s);
  const Matrix inv = m.partialPivLu().solve(Matrix::Identity(m.rows(), m.cols()));
  return from_matrix(inv);
}

IdempotentSet conjugate_set(const IdempotentSet& set, const AlgebraElement& s) {
  const AlgebraElement s_inv = inverse(s);
  IdempotentSet out{set.params, {}};
  out.elements.reserve(set.elements.size());
  for (const auto& e : set.elements) out.elements.push_back(multiply(multiply(s, e), s_inv));
  return out;
}

int numerical_rank(const Matrix& m, double rel_tol) {
  const Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) > rel_tol * s(0)) ++rank;
  }
  return rank;
}

IdempotentAudit audit_idempotents(const IdempotentSet& set) {
  IdempotentAudit audit;
  audit.min_rank = std::numeric_limits<int>::max();
  AlgebraElement total(set.params);
  for (std::size_t i = 0; i < set.elements.size(); ++i) {
    const auto& ei = set.elements[i];
    audit.idempotency = std::max(audit.idempotency, max_abs_diff(multiply(ei, ei), ei));
    audit.trace = std::max(audit.trace, std::abs(trace(ei) - 1.0));
    const int rank = numerical_rank(to_matrix(ei));
    audit.max_rank = std::max(audit.max_rank, rank);
    audit.min_rank = std::min(audit.min_rank, rank);
    for (std::size_t j = 0; j < set.elements.size(); ++j) {
      if (i == j) continue;
      audit.orthogonality = std::max(audit.orthogonality, max_abs(multiply(ei, set.elements[j])));
    }
    total += ei;
  }
  if (set.elements.empty()) audit.min_rank = 0;
  audit.resolution = max_abs_diff(total, identity(set.params));
  return audit;
}

Matrix overlap_matrix(const IdempotentSet& transported, const IdempotentSet& canonical) {
  const auto rows = static_cast<Eigen::Index>(transported.elements.size());
  const auto cols = static_cast<Eigen::Index>(canonical.elements.size());
  Matrix o(rows, cols);
  for (Eigen::Index j = 0; j < rows; ++j) {
    const Matrix ej = to_matrix(transported.elements[static_cast<std::size_t>(j)]);
    for (Eigen::Index k = 0; k < cols; ++k) {
      o(j, k) = (ej * to_matrix(canonical.elements[static_cast<std::size_t>(k)])).trace();
    }
  }
  return o;
}

double explosion_index(const Matrix& overlap) {
  if (overlap.rows() == 0) return 0.0;
  double total = 0.0;
  for (Eigen::Index j = 0; j < overlap.rows(); ++j) {
    total += 1.0 - overlap.row(j).real().maxCoeff();
  }
  return total / static_cast<double>(overlap.rows());
}

}  // namespace weyl
