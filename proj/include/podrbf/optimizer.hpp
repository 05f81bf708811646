#pragma once

#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

#include "podrbf/problem.hpp"

namespace podrbf {

struct OptimizerOptions {
  std::size_t max_evals = 20000;
  double constraint_tol = 5e-3;
  double step_tol = 1e-8;
  double penalty0 = 10.0;
  double penalty_growth = 5.0;
  std::size_t max_outer = 8;
  /// Initial simplex edge as a fraction of each box width.
  double initial_simplex = 0.1;
  /// Fresh-simplex restarts after the inner search converges.
  std::size_t restarts = 2;
};

/// Objective value plus equality-constraint values at one point.
struct Evaluation {
  double objective = 0.0;
  Vector constraints;
};

using Evaluator = std::function<Evaluation(const Vector& x)>;

/// min objective(x)  s.t.  constraints(x) = 0,  box.lower <= x <= box.upper.
struct NlpSpec {
  Evaluator evaluate;
  Box box;
  Vector x0;  // projected into the box if outside
  OptimizerOptions options;
};

NlpSpec make_nlp(std::function<double(const Vector&)> objective,
                 std::function<Vector(const Vector&)> eq_constraints, Box box, Vector x0,
                 OptimizerOptions options = {});

enum class OptStatus { Converged, ConstraintsNotMet, MaxEvalsExceeded };

std::string_view to_string(OptStatus status);

struct OuterIterate {
  double penalty = 0.0;
  double objective = 0.0;
  double violation = 0.0;
  Vector x;
};

struct OptResult {
  Vector b_star;
  double f_star = 0.0;
  Vector constraints;
  double constraint_violation = 0.0;  // max |c_j|
  std::size_t evals = 0;
  bool converged = false;
  OptStatus status = OptStatus::ConstraintsNotMet;
  double wall_time = 0.0;  // seconds
  std::vector<OuterIterate> history;
};

/// Augmented Lagrangian over the equality constraints; each subproblem is
/// solved by a Nelder-Mead simplex whose vertices are projected onto the
/// box, so every returned point satisfies the bounds exactly. Stops when the
/// violation is within constraint_tol after a converged inner solve, after
/// max_outer penalty updates, or when max_evals is spent (best point so far,
/// converged = false). Throws NonFiniteObjective if x0 evaluates non-finite.
OptResult minimize(const NlpSpec& spec);

/// Same as minimize on the negated objective; f_star is reported unnegated.
OptResult maximize(const NlpSpec& spec);

}  // namespace podrbf
