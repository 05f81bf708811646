#include "podrbf/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "podrbf/diagnostics.hpp"
#include "podrbf/errors.hpp"

namespace podrbf {
namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                 a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 5.0;

Vector eval_checked(const OdeFunction& f, double t, const Vector& y) {
  Vector dy = f(t, y);
  if (dy.size() != y.size()) {
    throw DimensionMismatch("rhs returned " + std::to_string(dy.size()) + " values for a state of size " +
                            std::to_string(y.size()));
  }
  if (!dy.allFinite()) {
    std::ostringstream os;
    os << "rhs produced a non-finite derivative at t=" << t;
    throw NonFiniteState(os.str());
  }
  return dy;
}

double error_norm(const Vector& err, const Vector& y, const Vector& y_new, double rtol, double atol) {
  const Vector scale = (atol + rtol * y.cwiseAbs().cwiseMax(y_new.cwiseAbs()).array()).matrix();
  return std::sqrt((err.cwiseQuotient(scale)).squaredNorm() / static_cast<double>(err.size()));
}

double initial_step(const OdeFunction& f, double t0, const Vector& y0, const Vector& f0,
                    double rtol, double atol, double h_max) {
  const Vector scale = (atol + rtol * y0.cwiseAbs().array()).matrix();
  const double n = static_cast<double>(y0.size());
  const double d0 = std::sqrt(y0.cwiseQuotient(scale).squaredNorm() / n);
  const double d1 = std::sqrt(f0.cwiseQuotient(scale).squaredNorm() / n);
  double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  h0 = std::min(h0, h_max);
  const Vector y1 = y0 + h0 * f0;
  const Vector f1 = eval_checked(f, t0 + h0, y1);
  const double d2 = std::sqrt((f1 - f0).cwiseQuotient(scale).squaredNorm() / n) / h0;
  const double dmax = std::max(d1, d2);
  const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 1.0 / 5.0);
  return std::min({100.0 * h0, h1, h_max});
}

}  // namespace

TimeGrid make_grid(double t0, double T, std::size_t n_t) {
  if (n_t < 2) throw InvalidArgument("time grid needs at least 2 points");
  if (!(t0 < T)) throw InvalidArgument("time grid needs t0 < T");
  TimeGrid grid{t0, T, n_t, Vector(static_cast<Eigen::Index>(n_t))};
  const double h = (T - t0) / static_cast<double>(n_t - 1);
  for (std::size_t i = 0; i < n_t; ++i) grid.times[static_cast<Eigen::Index>(i)] = t0 + static_cast<double>(i) * h;
  grid.times[static_cast<Eigen::Index>(n_t - 1)] = T;
  return grid;
}

Matrix integrate_ode(const OdeFunction& f, const Vector& y0, const TimeGrid& grid,
                     const IntegratorOptions& options) {
  if (!(options.rtol > 0.0) || !(options.atol > 0.0)) {
    throw InvalidArgument("integrator tolerances must be positive");
  }
  if (grid.n_t < 2 || static_cast<std::size_t>(grid.times.size()) != grid.n_t) {
    throw InvalidArgument("malformed time grid");
  }
  const auto n_y = y0.size();
  const auto n_t = static_cast<Eigen::Index>(grid.n_t);
  Matrix out(n_t, n_y);
  out.row(0) = y0.transpose();

  const double t_end = grid.T;
  const double span = t_end - grid.t0;
  const double h_max = options.max_step_fraction * span;

  double t = grid.t0;
  Vector y = y0;
  Vector k1 = eval_checked(f, t, y);
  double h = initial_step(f, t, y, k1, options.rtol, options.atol, h_max);
  Eigen::Index next_out = 1;
  bool last_rejected = false;
  std::size_t steps = 0;

  Vector k2, k3, k4, k5, k6, k7, y_new, err;
  while (next_out < n_t) {
    if (++steps > options.max_steps) {
      throw StepSizeUnderflow("step budget of " + std::to_string(options.max_steps) + " exhausted at t=" +
                              std::to_string(t));
    }
    const double h_min = 16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), 1.0);
    if (h < h_min) {
      std::ostringstream os;
      os << "step size " << h << " below minimum at t=" << t;
      throw StepSizeUnderflow(os.str());
    }
    if (t + h > t_end || t_end - (t + h) < h_min) h = t_end - t;

    k2 = eval_checked(f, t + c2 * h, y + h * (a21 * k1));
    k3 = eval_checked(f, t + c3 * h, y + h * (a31 * k1 + a32 * k2));
    k4 = eval_checked(f, t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    k5 = eval_checked(f, t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    k6 = eval_checked(f, t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    y_new = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    if (!y_new.allFinite()) {
      // Treat as a failed step; shrink and retry.
      h *= kMinFactor;
      last_rejected = true;
      continue;
    }
    k7 = eval_checked(f, t + h, y_new);
    err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double en = error_norm(err, y, y_new, options.rtol, options.atol);

    if (en <= 1.0) {
      const double t_new = (t_end - (t + h) < h_min) ? t_end : t + h;
      // Cubic Hermite dense output on (t, t_new].
      while (next_out < n_t && grid.times[next_out] <= t_new) {
        const double s = (grid.times[next_out] - t) / h;
        // Difference form: reproduces a constant state exactly.
        const Vector dy = y_new - y;
        out.row(next_out) =
            (y + s * dy + (s * (s - 1)) * ((1 - 2 * s) * dy + ((s - 1) * h) * k1 + (s * h) * k7)).transpose();
        ++next_out;
      }
      if (t_new == t_end) {
        // The last grid point is exactly T: take the step end value.
        out.row(n_t - 1) = y_new.transpose();
      }
      t = t_new;
      y = y_new;
      k1 = k7;
      double factor = en == 0.0 ? kMaxFactor : kSafety * std::pow(en, -0.2);
      factor = std::clamp(factor, kMinFactor, last_rejected ? 1.0 : kMaxFactor);
      h = std::min(h * factor, h_max);
      last_rejected = false;
    } else {
      h *= std::max(kMinFactor, kSafety * std::pow(en, -0.2));
      last_rejected = true;
    }
  }
  if (!out.allFinite()) throw NonFiniteState("trajectory contains non-finite values");
  return out;
}

Trajectory integrate(const ProblemDef& def, const Vector& b, const TimeGrid& grid,
                     const IntegratorOptions& options) {
  if (static_cast<std::size_t>(b.size()) != def.control.n_params()) {
    throw DimensionMismatch("parameter vector has " + std::to_string(b.size()) + " entries, problem needs " +
                            std::to_string(def.control.n_params()));
  }
  if (grid.t0 != def.t0 || grid.T != def.T) {
    throw InvalidArgument("time grid span differs from the problem's [t0, T]");
  }
  if (!def.box.contains(b, 1e-9 * (1.0 + def.box.diameter()))) {
    warn(WarningKind::OutsideBox, "integrating " + def.name + " at a parameter outside its box");
  }
  const ControlParam& cp = def.control;
  OdeFunction f = [&](double t, const Vector& y) {
    return def.rhs(t, y, control_eval(cp, b, std::clamp(t, cp.t0, cp.T)));
  };
  Trajectory traj;
  traj.grid = grid;
  traj.states = integrate_ode(f, def.y0, grid, options);
  traj.controls.resize(static_cast<Eigen::Index>(grid.n_t), static_cast<Eigen::Index>(def.n_u));
  for (Eigen::Index i = 0; i < grid.times.size(); ++i) {
    traj.controls.row(i) = control_eval(cp, b, grid.times[i]).transpose();
  }
  return traj;
}

double quadrature(const Vector& values, const TimeGrid& grid) {
  if (static_cast<std::size_t>(values.size()) != grid.n_t) {
    throw DimensionMismatch("quadrature got " + std::to_string(values.size()) + " values for a grid of " +
                            std::to_string(grid.n_t));
  }
  const auto n = values.size();
  return (grid.T - grid.t0) * (values.sum() - 0.5 * (values[0] + values[n - 1])) /
         static_cast<double>(n - 1);
}

}  // namespace podrbf
