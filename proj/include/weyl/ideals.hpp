#pragma once

// Primitive idempotents, matrix units and the minimal one-sided ideals of the
// idempotent e_00, plus inner-automorphism transport of idempotent systems.

#include <stdexcept>
#include <vector>

#include "weyl/core.hpp"

namespace weyl {

/// Raised when an element has no usable inverse; carries the 2-norm condition estimate.
class SingularElement : public std::runtime_error {
 public:
  SingularElement(const std::string& what, double condition)
      : std::runtime_error(what), condition_(condition) {}
  double condition() const { return condition_; }

 private:
  double condition_;
};

/// Elements whose matrix image has condition number above this are rejected.
inline constexpr double kMaxCondition = 1e12;

/// Ordered family eps_00 ... eps_{n-1,n-1} resolving the identity.
struct IdempotentSet {
  AlgebraParams params;
  std::vector<AlgebraElement> elements;
};

/// eps_ii = (1/n) sum_k w^{-ik} e_k^0; matrix image |i><i|.
AlgebraElement primitive_idempotent(const AlgebraParams& params, int i);

/// eps_ij = (1/n) sum_r w^{-jr} e_r^{j-i}; matrix image |i><j|.
AlgebraElement matrix_unit(const AlgebraParams& params, int i, int j);

/// I_L(i) = (1/n) sum_k e_k^{-i}; coincides with eps_i0.
AlgebraElement left_ideal_basis(const AlgebraParams& params, int i);

/// I_R(j) = (1/n) sum_k w^{jk} e_{-k}^j; coincides with eps_0j.
AlgebraElement right_ideal_basis(const AlgebraParams& params, int j);

IdempotentSet canonical_idempotents(const AlgebraParams& params);

/// 2-norm condition number of the matrix image.
double condition_number(const AlgebraElement& x);

/// Inverse through the matrix image. Throws SingularElement when cond > kMaxCondition.
AlgebraElement inverse(const AlgebraElement& s);

/// {S eps S^{-1}} for every member of the set.
IdempotentSet conjugate_set(const IdempotentSet& set, const AlgebraElement& s);

/// Worst-case deviations of the idempotent-system axioms.
struct IdempotentAudit {
  double idempotency = 0.0;    // max |eps^2 - eps|
  double orthogonality = 0.0;  // max |eps_i eps_j|, i != j
  double resolution = 0.0;     // max |sum eps - 1|
  double trace = 0.0;          // max |tr eps - 1|
  int max_rank = 0;            // largest numerical rank of a member's matrix image
  int min_rank = 0;

  bool passes(double tol) const {
    return idempotency <= tol && orthogonality <= tol && resolution <= tol && trace <= tol &&
           min_rank == 1 && max_rank == 1;
  }
};

IdempotentAudit audit_idempotents(const IdempotentSet& set);

/// O_jk = tr(eps'_jj eps_kk) between a transported set and the canonical one.
Matrix overlap_matrix(const IdempotentSet& transported, const IdempotentSet& canonical);

/// Mean over j of 1 - max_k Re O_jk. Zero for a pure relabeling.
double explosion_index(const Matrix& overlap);

/// Numerical rank from singular values above rel_tol * largest.
int numerical_rank(const Matrix& m, double rel_tol = 1e-9);

}  // namespace weyl
