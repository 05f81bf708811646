#pragma once

#include <cstddef>

#include "podrbf/types.hpp"

namespace podrbf {

/// Thin SVD  Y = U diag(sigma) V^T  with sigma nonincreasing.
struct SvdResult {
  Matrix U;      // m x d
  Vector sigma;  // d = min(m, n_s)
  Matrix V;      // n_s x d
};

/// Throws NumericalFailure if the decomposition fails or Y is empty/non-finite.
SvdResult compute_svd(const Matrix& Y);

/// E(k) = sum_{i<=k} sigma_i^2 / sum_i sigma_i^2, k = 1..d.
Vector cumulative_energy(const Vector& sigma);

/// Smallest k with E(k) >= 1 - eps_pod^2. Throws AllZeroSpectrum when every
/// singular value is zero and InvalidArgument unless 0 < eps_pod < 1.
std::size_t select_rank(const Vector& sigma, double eps_pod);

/// Orthogonal projection coefficients A = phi^T Y.
Matrix project_amplitudes(const Matrix& phi, const Matrix& Y);

struct PodBasis {
  Matrix phi;     // m x k, orthonormal columns
  Vector sigma;   // full spectrum
  Vector energy;  // cumulative energy E(1..d)
  std::size_t k = 0;
};

PodBasis build_pod(const Matrix& Y, double eps_pod);

}  // namespace podrbf
