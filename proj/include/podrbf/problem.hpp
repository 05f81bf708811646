#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "podrbf/types.hpp"

namespace podrbf {

/// Axis-aligned parameter domain `lower <= b <= upper`.
struct Box {
  Vector lower;
  Vector upper;

  Box() = default;
  Box(Vector lo, Vector hi);

  std::size_t dim() const { return static_cast<std::size_t>(lower.size()); }
  Vector center() const { return 0.5 * (lower + upper); }
  Vector width() const { return upper - lower; }
  double diameter() const { return (upper - lower).norm(); }
  bool contains(const Vector& x, double tol = 0.0) const;
  Vector project(const Vector& x) const;
  /// Reflection of `x` through the box center.
  Vector mirror(const Vector& x) const { return lower + upper - x; }
  /// Throws InvalidArgument if sizes differ or some lower[j] > upper[j].
  void check() const;
};

enum class ControlKind { PiecewiseConstant, PiecewiseLinear };

std::string_view to_string(ControlKind kind);
ControlKind parse_control_kind(std::string_view text);

/// Maps the optimization vector b to control trajectories u(t, b).
///
/// Parameters are laid out control by control: the first
/// `nodes_per_control[0]` entries of b belong to u_1, and so on. Node times
/// are uniform over [t0, T]. A piecewise-linear control with a single node is
/// constant; a piecewise-constant control with n nodes splits [t0, T] into n
/// equal right-open intervals, the last one closed.
struct ControlParam {
  ControlKind kind = ControlKind::PiecewiseLinear;
  std::vector<int> nodes_per_control;
  double t0 = 0.0;
  double T = 1.0;

  std::size_t n_controls() const { return nodes_per_control.size(); }
  std::size_t n_params() const;
};

Vector control_eval(const ControlParam& cp, const Vector& b, double t);

enum class Sense { Minimize, Maximize };

std::string_view to_string(Sense sense);

/// Integral functional  ∫ integrand(t, y, u) dt + terminal(y(T), u(T)).
/// Either part may be empty.
struct Functional {
  using Integrand = std::function<double(double t, const Vector& y, const Vector& u)>;
  using Terminal = std::function<double(const Vector& yT, const Vector& uT)>;

  std::string name;
  Integrand integrand;
  Terminal terminal;
};

using Rhs = std::function<Vector(double t, const Vector& y, const Vector& u)>;

/// Parametric ODE optimal-control problem. Immutable once validated; `rhs`
/// and the functionals must be reentrant since snapshots are computed
/// concurrently.
struct ProblemDef {
  std::string name;
  std::size_t n_y = 0;
  std::size_t n_u = 0;
  Rhs rhs;
  Vector y0;
  double t0 = 0.0;
  double T = 1.0;
  ControlParam control;
  Functional criterion;
  std::vector<Functional> eq_constraints;
  Box box;
  Sense sense = Sense::Minimize;
  /// Starting point for optimization; box center when empty.
  Vector initial_guess;

  Vector start_point() const;
};

/// Returns `def` unchanged when every invariant holds, otherwise throws
/// InvalidProblem naming the first violated invariant.
const ProblemDef& validate(const ProblemDef& def);

}  // namespace podrbf
