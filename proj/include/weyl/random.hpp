#pragma once

// Portable seeded randomness. The bit stream is std::mt19937_64, whose output
// sequence is fixed by the C++ standard. Doubles are drawn as (x >> 11) * 2^-53
// and normals by Box-Muller, so sampled values do not depend on the standard
// library's distribution implementations.

#include <cstdint>
#include <random>

#include "weyl/core.hpp"

namespace weyl {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform();
  /// Standard normal.
  double normal();
  /// Standard complex normal, E|z|^2 = 1.
  Complex complex_normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Random element with independent complex-normal coefficients of variance 1/n^2,
/// so the matrix image has Frobenius norm of order sqrt(n).
AlgebraElement random_element(const AlgebraParams& params, Rng& rng);

/// Haar-distributed unitary: QR of a complex Ginibre matrix with R's diagonal phases removed.
Matrix random_unitary(int n, Rng& rng);

/// Haar-random unit vector (normalized vector of complex normals).
Vector random_unit_vector(int n, Rng& rng);

}  // namespace weyl
