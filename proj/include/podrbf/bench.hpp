#pragma once

#include <string_view>

#include "podrbf/problem.hpp"

namespace podrbf {

/// Research-staff planning model: y1 researchers, y2 teachers, u the share
/// of new graduates going to research.
struct SciencePolicyParams {
  double g = 0.14;      // graduates produced per scientist per year
  double delta = 0.02;  // exit rate
  double y10 = 100.0;
  double y20 = 80.0;
  double T = 15.0;
  double y1T = 200.0;
  double y2T = 240.0;
  double u_lo = 0.1;
  double u_hi = 0.6;
  double u0 = 0.5;
};

/// Predator-prey type model with a saturating interaction term.
struct PopulationDynamicsParams {
  Vector p = (Vector(5) << 0.734, 0.175, -0.500, -0.246, 0.635).finished();
  double t0 = 0.0;
  double T = 10.0;
  double u1_lo = -0.55;
  double u1_hi = -0.30;
  double u2_lo = -1.037;
  double u2_hi = -0.787;
  double y1d = 5.0;
  double y2plus = 6.0;
  /// Initial state; empty means [y1d, y2plus].
  Vector y0;
};

/// Maximize the integral of 0.5 (y1 + y2) subject to y(T) = (y1T, y2T).
/// One piecewise-linear control with 2 nodes.
ProblemDef science_policy(const SciencePolicyParams& params = {});

/// Minimize the integral of (y1 - y1d)^2 subject to the one-sided integral
/// penalty on y2 > y2plus being zero. Two piecewise-linear controls with 2
/// nodes each.
ProblemDef population_dynamics(const PopulationDynamicsParams& params = {});

/// 1 - exp(-p5 * y1).
double saturation(double p5, double y1);

/// Problem for a preset name ("science-policy", "population-dynamics") with
/// default parameters. Throws InvalidArgument for an unknown name.
ProblemDef preset(std::string_view name);

}  // namespace podrbf
