#pragma once

#include <cstddef>
#include <functional>

#include "podrbf/problem.hpp"

namespace podrbf {

/// Uniform output grid t0 = times[0] < ... < times[n_t-1] = T.
struct TimeGrid {
  double t0 = 0.0;
  double T = 1.0;
  std::size_t n_t = 0;
  Vector times;

  double step() const { return (T - t0) / static_cast<double>(n_t - 1); }
};

/// Throws InvalidArgument unless n_t >= 2 and t0 < T.
TimeGrid make_grid(double t0, double T, std::size_t n_t);

struct Trajectory {
  TimeGrid grid;
  Matrix states;    // n_t x n_y
  Matrix controls;  // n_t x n_u
};

struct IntegratorOptions {
  double rtol = 1e-6;
  double atol = 1e-8;
  /// Upper bound on the step as a fraction of the integration span; keeps
  /// the cubic dense output accurate between grid points.
  double max_step_fraction = 0.1;
  std::size_t max_steps = 200000;
};

using OdeFunction = std::function<Vector(double t, const Vector& y)>;

/// Dormand-Prince 5(4) with adaptive steps; states on `grid.times` come from
/// cubic Hermite interpolation within each accepted step. The local error of
/// every step satisfies |err_i| <= atol + rtol * max(|y_i|) in RMS norm.
///
/// Throws StepSizeUnderflow when the step collapses (stiffness, blow-up, or
/// the step budget is exhausted) and NonFiniteState when f returns NaN/Inf.
Matrix integrate_ode(const OdeFunction& f, const Vector& y0, const TimeGrid& grid,
                     const IntegratorOptions& options = {});

/// Solves the problem's state equation for parameters `b`. Controls are
/// evaluated exactly inside every right-hand-side call. A `b` outside the
/// problem box only triggers an OutsideBox warning.
Trajectory integrate(const ProblemDef& def, const Vector& b, const TimeGrid& grid,
                     const IntegratorOptions& options = {});

/// Trapezoidal rule on a uniform grid.
double quadrature(const Vector& values, const TimeGrid& grid);

}  // namespace podrbf
