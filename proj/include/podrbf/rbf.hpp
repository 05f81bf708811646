#pragma once

#include <string_view>

#include "podrbf/types.hpp"

namespace podrbf {

enum class KernelKind { LinearSpline, CubicSpline };

std::string_view to_string(KernelKind kind);
KernelKind parse_kernel_kind(std::string_view text);

/// r for the linear spline, r^3 for the cubic spline.
double kernel_eval(KernelKind kind, double r);

/// G(i, j) = kernel(|b_i - b_j|) for centers given as rows. Throws
/// DuplicateCenters when two centers are closer than 1e-12 times the
/// diameter of their bounding box.
Matrix gram_matrix(const Matrix& centers, KernelKind kind);

/// Entry j = kernel(|b - b_j|).
Vector g_vector(const Vector& b, const Matrix& centers, KernelKind kind);

/// Interpolation weights: row i of D solves G x = (row i of A).
struct RbfCoefficients {
  Matrix D;        // k x n_s
  Matrix centers;  // n_s x dim
  KernelKind kind = KernelKind::LinearSpline;
  double condition_estimate = 1.0;
};

/// Solves G D^T = A^T by fully pivoted LU with iterative refinement, then
/// checks |G x - a| <= 1e-8 |a| for every amplitude row. Throws SingularGram
/// for an exactly singular G and NumericalFailure if the residual check
/// fails; warns IllConditioned when the condition estimate exceeds 1e12.
Matrix solve_coefficients(const Matrix& G, const Matrix& A, double* condition_estimate = nullptr);

RbfCoefficients fit_coefficients(const Matrix& centers, KernelKind kind, const Matrix& A);

/// D g(b).
Vector rbf_evaluate(const RbfCoefficients& coeffs, const Vector& b);

}  // namespace podrbf
