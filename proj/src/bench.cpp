#include "podrbf/bench.hpp"

#include <cmath>
#include <string>

#include "podrbf/errors.hpp"

namespace podrbf {

double saturation(double p5, double y1) { return 1.0 - std::exp(-p5 * y1); }

ProblemDef science_policy(const SciencePolicyParams& pr) {
  ProblemDef def;
  def.name = "science-policy";
  def.n_y = 2;
  def.n_u = 1;
  def.rhs = [g = pr.g, d = pr.delta](double, const Vector& y, const Vector& u) {
    Vector dy(2);
    dy[0] = u[0] * g * y[0] - d * y[0];
    dy[1] = (1.0 - u[0]) * g * y[0] - d * y[1];
    return dy;
  };
  def.y0 = Vector(2);
  def.y0 << pr.y10, pr.y20;
  def.t0 = 0.0;
  def.T = pr.T;
  def.control = ControlParam{ControlKind::PiecewiseLinear, {2}, 0.0, pr.T};
  def.criterion = {"research output",
                   [](double, const Vector& y, const Vector&) { return 0.5 * (y[0] + y[1]); },
                   {}};
  def.eq_constraints = {
      {"researchers at T", {}, [t = pr.y1T](const Vector& yT, const Vector&) { return yT[0] - t; }},
      {"teachers at T", {}, [t = pr.y2T](const Vector& yT, const Vector&) { return yT[1] - t; }},
  };
  def.box = Box(Vector::Constant(2, pr.u_lo), Vector::Constant(2, pr.u_hi));
  def.sense = Sense::Maximize;
  def.initial_guess = Vector::Constant(2, pr.u0);
  validate(def);
  return def;
}

ProblemDef population_dynamics(const PopulationDynamicsParams& pr) {
  if (pr.p.size() != 5) throw InvalidArgument("population dynamics needs 5 coefficients");
  ProblemDef def;
  def.name = "population-dynamics";
  def.n_y = 2;
  def.n_u = 2;
  def.rhs = [p = pr.p](double, const Vector& y, const Vector& u) {
    const double coupling = y[0] * saturation(p[4], y[0]) * y[1];
    Vector dy(2);
    dy[0] = p[0] * y[0] + p[1] * y[1] * y[1] + u[0] * coupling;
    dy[1] = p[2] * y[1] + p[3] * y[1] * y[1] + u[0] * u[1] * coupling;
    return dy;
  };
  if (pr.y0.size() == 0) {
    def.y0 = Vector(2);
    def.y0 << pr.y1d, pr.y2plus;
  } else {
    def.y0 = pr.y0;
  }
  def.t0 = pr.t0;
  def.T = pr.T;
  def.control = ControlParam{ControlKind::PiecewiseLinear, {2, 2}, pr.t0, pr.T};
  def.criterion = {"tracking",
                   [target = pr.y1d](double, const Vector& y, const Vector&) {
                     const double d = y[0] - target;
                     return d * d;
                   },
                   {}};
  def.eq_constraints = {{"excess",
                         [cap = pr.y2plus](double, const Vector& y, const Vector&) {
                           const double d = y[1] - cap;
                           const double s = std::abs(d) + d;
                           return s * s;
                         },
                         {}}};
  Vector lo(4), hi(4);
  lo << pr.u1_lo, pr.u1_lo, pr.u2_lo, pr.u2_lo;
  hi << pr.u1_hi, pr.u1_hi, pr.u2_hi, pr.u2_hi;
  def.box = Box(lo, hi);
  def.sense = Sense::Minimize;
  validate(def);
  return def;
}

ProblemDef preset(std::string_view name) {
  if (name == "science-policy") return science_policy();
  if (name == "population-dynamics") return population_dynamics();
  throw InvalidArgument("unknown preset '" + std::string(name) + "'");
}

}  // namespace podrbf
