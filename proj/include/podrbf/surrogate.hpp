#pragma once

#include <cstddef>

#include "podrbf/pod.hpp"
#include "podrbf/problem.hpp"
#include "podrbf/rbf.hpp"
#include "podrbf/snapshot.hpp"

namespace podrbf {

/// POD-RBF response surface  b -> phi * D * g(b).
struct Surrogate {
  Matrix phi;  // m x k
  RbfCoefficients coeffs;
  TimeGrid grid;
  Stacking stacking;
  Box training_box;
  double eps_pod = 0.01;
  std::size_t k = 0;
  Vector sigma;  // spectrum of the training snapshots

  std::size_t output_size() const { return static_cast<std::size_t>(phi.rows()); }
};

/// compute_svd -> select_rank -> project_amplitudes -> fit_coefficients.
Surrogate train(const SnapshotMatrix& snapshots, double eps_pod, KernelKind kind);

/// Stacked state prediction (length m). No ODE solve. Points outside the
/// training box are still evaluated but raise an Extrapolation warning.
Vector predict(const Surrogate& s, const Vector& b);

/// predict() reshaped to n_t x n_y.
Matrix predict_states(const Surrogate& s, const Vector& b);

struct ErrorReport {
  double r2 = 1.0;
  double mae = 0.0;
  double mxae = 0.0;
  double rmae = 0.0;
  std::size_t n_g = 0;
  std::size_t worst_point = 0;  // test column holding the RMAE maximum
  std::size_t worst_entry = 0;  // stacked index of that maximum
};

/// Accuracy of `Yhat` against reference `Y` (columns are test points).
/// MAE and MXAE run over all m*n_g entries. R^2 = 1 - sum|y - yhat| /
/// sum|y - ybar| with ybar the per-entry mean over test points. RMAE divides
/// by max(|y|, 1e-8 max|Y|).
ErrorReport error_report(const Matrix& Y, const Matrix& Yhat);

}  // namespace podrbf
