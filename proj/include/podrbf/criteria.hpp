#pragma once

#include <functional>

#include "podrbf/integrator.hpp"
#include "podrbf/optimizer.hpp"
#include "podrbf/surrogate.hpp"

namespace podrbf {

/// Criterion psi_0 (in the problem's own sense) and equality constraints psi_j.
struct CriterionValues {
  double psi0 = 0.0;
  Vector psis;
};

/// Evaluates the problem functionals on a state trajectory sampled on `grid`
/// (n_t x n_y). Integrals use the trapezoidal rule; controls come from
/// control_eval at the grid times. Both the original and the surrogate
/// criteria go through here.
CriterionValues evaluate_functionals(const ProblemDef& def, const Vector& b, const TimeGrid& grid,
                                     const Matrix& states);

/// One ODE solve, then evaluate_functionals.
CriterionValues criterion_original(const ProblemDef& def, const Vector& b, const TimeGrid& grid,
                                   const IntegratorOptions& options = {});

/// predict + unstack, then evaluate_functionals. No ODE solve.
CriterionValues criterion_surrogate(const Surrogate& s, const ProblemDef& def, const Vector& b);

using CriterionFunction = std::function<CriterionValues(const Vector& b)>;

/// Optimizes the problem criterion over `box`. Maximization problems are
/// minimized on -psi_0; the returned f_star is psi_0 in the problem's sense.
OptResult optimize_problem(const ProblemDef& def, const CriterionFunction& criterion, const Box& box,
                           const Vector& x0, const OptimizerOptions& options = {});

}  // namespace podrbf
