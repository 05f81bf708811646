#include <doctest.h>

#include <cmath>

#include "podrbf/bench.hpp"
#include "podrbf/criteria.hpp"
#include "podrbf/errors.hpp"

using namespace podrbf;

TEST_CASE("science policy definition") {
  const ProblemDef def = science_policy();
  CHECK_NOTHROW(validate(def));
  CHECK(def.box.dim() == 2);
  CHECK(def.sense == Sense::Maximize);
  Vector y(2);
  y << 100, 80;
  const Vector dy = def.rhs(0.0, y, Vector::Constant(1, 0.5));
  CHECK(dy[0] == doctest::Approx(5.0));
  CHECK(dy[1] == doctest::Approx(5.4));
  CHECK(def.start_point() == Vector::Constant(2, 0.5));
}

TEST_CASE("population dynamics definition") {
  const ProblemDef def = population_dynamics();
  CHECK_NOTHROW(validate(def));
  CHECK(def.box.dim() == 4);
  CHECK(def.sense == Sense::Minimize);
  const Vector mid = (Vector(4) << -0.425, -0.425, -0.912, -0.912).finished();
  CHECK((def.box.center() - mid).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((def.start_point() - mid).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(def.y0 == (Vector(2) << 5, 6).finished());
  CHECK(saturation(0.635, 0.0) == 0.0);
  CHECK(std::abs(saturation(0.635, 20.0) - 1.0) < 1e-5);

  PopulationDynamicsParams p;
  p.y0 = (Vector(2) << 1, 2).finished();
  CHECK(population_dynamics(p).y0 == p.y0);
  p.p = Vector::Zero(3);
  CHECK_THROWS_AS(population_dynamics(p), InvalidArgument);
}

TEST_CASE("population-dynamics constraint integrand is a one-sided penalty") {
  const ProblemDef def = population_dynamics();
  const auto& f = def.eq_constraints.at(0).integrand;
  const Vector u = Vector::Constant(2, -0.5);
  for (double y2 : {-1.0, 0.0, 3.0, 5.999, 6.0}) CHECK(f(0.0, (Vector(2) << 5, y2).finished(), u) == 0.0);
  CHECK(f(0.0, (Vector(2) << 5, 7.0).finished(), u) == doctest::Approx(4.0));

  // Zero on a trajectory that stays below the cap, positive otherwise.
  const auto grid = make_grid(0, 10, 100);
  Matrix below(100, 2), above(100, 2);
  below.col(0).setConstant(5);
  below.col(1) = Vector::LinSpaced(100, 1.0, 6.0);
  above = below;
  above(50, 1) = 6.5;
  const Vector b = def.box.center();
  CHECK(evaluate_functionals(def, b, grid, below).psis[0] == 0.0);
  CHECK(evaluate_functionals(def, b, grid, above).psis[0] > 0.0);
}

TEST_CASE("presets") {
  CHECK(preset("science-policy").name == "science-policy");
  CHECK(preset("population-dynamics").n_u == 2);
  CHECK_THROWS_AS(preset("lotka"), InvalidArgument);
}
