#include "podrbf/problem.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "podrbf/errors.hpp"

namespace podrbf {

Box::Box(Vector lo, Vector hi) : lower(std::move(lo)), upper(std::move(hi)) {}

bool Box::contains(const Vector& x, double tol) const {
  if (x.size() != lower.size()) return false;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (x[j] < lower[j] - tol || x[j] > upper[j] + tol) return false;
  }
  return true;
}

Vector Box::project(const Vector& x) const {
  return x.cwiseMax(lower).cwiseMin(upper);
}

void Box::check() const {
  if (lower.size() != upper.size()) {
    throw InvalidArgument("box lower/upper sizes differ (" + std::to_string(lower.size()) +
                          " vs " + std::to_string(upper.size()) + ")");
  }
  for (Eigen::Index j = 0; j < lower.size(); ++j) {
    if (!(lower[j] <= upper[j])) {
      throw InvalidArgument("box lower[" + std::to_string(j) + "] > upper[" +
                            std::to_string(j) + "]");
    }
  }
}

std::string_view to_string(ControlKind kind) {
  return kind == ControlKind::PiecewiseConstant ? "piecewise-constant" : "piecewise-linear";
}

ControlKind parse_control_kind(std::string_view text) {
  if (text == "piecewise-constant") return ControlKind::PiecewiseConstant;
  if (text == "piecewise-linear") return ControlKind::PiecewiseLinear;
  throw InvalidArgument("unknown control kind '" + std::string(text) + "'");
}

std::string_view to_string(Sense sense) {
  return sense == Sense::Minimize ? "minimize" : "maximize";
}

std::size_t ControlParam::n_params() const {
  return std::accumulate(nodes_per_control.begin(), nodes_per_control.end(), std::size_t{0},
                         [](std::size_t acc, int n) { return acc + static_cast<std::size_t>(std::max(n, 0)); });
}

Vector control_eval(const ControlParam& cp, const Vector& b, double t) {
  if (static_cast<std::size_t>(b.size()) != cp.n_params()) {
    throw DimensionMismatch("control vector has " + std::to_string(b.size()) +
                            " entries, parameterization needs " + std::to_string(cp.n_params()));
  }
  if (!(t >= cp.t0 && t <= cp.T)) {
    throw TimeOutOfRange("t=" + std::to_string(t) + " outside [" + std::to_string(cp.t0) + ", " +
                         std::to_string(cp.T) + "]");
  }
  const double span = cp.T - cp.t0;
  const double s = span > 0.0 ? (t - cp.t0) / span : 0.0;  // in [0, 1]

  Vector u(static_cast<Eigen::Index>(cp.n_controls()));
  Eigen::Index offset = 0;
  for (std::size_t i = 0; i < cp.n_controls(); ++i) {
    const int n = cp.nodes_per_control[i];
    const double* nodes = b.data() + offset;
    if (n == 1) {
      u[static_cast<Eigen::Index>(i)] = nodes[0];
    } else if (cp.kind == ControlKind::PiecewiseConstant) {
      const int cell = std::min(static_cast<int>(std::floor(s * n)), n - 1);
      u[static_cast<Eigen::Index>(i)] = nodes[cell];
    } else {
      const double pos = s * (n - 1);
      const int seg = std::min(static_cast<int>(std::floor(pos)), n - 2);
      const double w = pos - seg;
      u[static_cast<Eigen::Index>(i)] = (1.0 - w) * nodes[seg] + w * nodes[seg + 1];
    }
    offset += n;
  }
  return u;
}

Vector ProblemDef::start_point() const {
  return initial_guess.size() == 0 ? box.center() : initial_guess;
}

const ProblemDef& validate(const ProblemDef& def) {
  auto fail = [&](const std::string& what) {
    throw InvalidProblem((def.name.empty() ? std::string("problem") : def.name) + ": " + what);
  };
  if (def.n_y == 0) fail("n_y must be positive");
  if (static_cast<std::size_t>(def.y0.size()) != def.n_y) fail("length(y0) != n_y");
  if (!def.y0.allFinite()) fail("y0 has non-finite entries");
  if (!def.rhs) fail("rhs is not set");
  if (!(def.t0 < def.T)) fail("t_span must satisfy t0 < T");
  if (def.control.t0 != def.t0 || def.control.T != def.T) fail("control t_span differs from problem t_span");
  if (def.control.n_controls() != def.n_u) fail("control count != n_u");
  for (std::size_t i = 0; i < def.control.n_controls(); ++i) {
    if (def.control.nodes_per_control[i] < 1) fail("nodes_per_control[" + std::to_string(i) + "] < 1");
  }
  if (def.box.lower.size() != def.box.upper.size()) fail("box lower/upper sizes differ");
  if (static_cast<std::size_t>(def.box.lower.size()) != def.control.n_params()) {
    fail("box dimension != total control node count");
  }
  for (Eigen::Index j = 0; j < def.box.lower.size(); ++j) {
    if (!(def.box.lower[j] <= def.box.upper[j])) fail("box lower[" + std::to_string(j) + "] > upper[" + std::to_string(j) + "]");
  }
  if (!def.criterion.integrand && !def.criterion.terminal) fail("criterion has neither integrand nor terminal term");
  for (std::size_t j = 0; j < def.eq_constraints.size(); ++j) {
    const auto& c = def.eq_constraints[j];
    if (!c.integrand && !c.terminal) fail("constraint " + std::to_string(j) + " is empty");
  }
  if (def.initial_guess.size() != 0 && !def.box.contains(def.initial_guess)) {
    fail("initial_guess lies outside the box");
  }
  return def;
}

}  // namespace podrbf
