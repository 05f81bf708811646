#include <doctest.h>

#include <cmath>

#include "podrbf/bench.hpp"
#include "podrbf/errors.hpp"
#include "podrbf/refine.hpp"

using namespace podrbf;

namespace {

// Zero dynamics and a criterion linear in the control: every snapshot is the
// same, so the surrogate criterion matches the original exactly.
ProblemDef affine_problem() {
  ProblemDef def;
  def.name = "affine";
  def.n_y = 1;
  def.n_u = 1;
  def.rhs = [](double, const Vector& y, const Vector&) { return Vector::Zero(y.size()).eval(); };
  def.y0 = Vector::Ones(1);
  def.t0 = 0.0;
  def.T = 1.0;
  def.control = ControlParam{ControlKind::PiecewiseConstant, {1}, 0.0, 1.0};
  def.criterion = {"effort", [](double, const Vector& y, const Vector& u) { return y[0] + u[0]; }, {}};
  def.box = Box(Vector::Constant(1, 1.0), Vector::Constant(1, 2.0));
  return validate(def);
}

}  // namespace

TEST_CASE("exact surrogate converges in one iteration") {
  RefineConfig cfg;
  cfg.n_s = 6;
  cfg.n_t = 11;
  const auto r = refine_optimize(affine_problem(), cfg);
  REQUIRE(r.iterations.size() == 1);
  CHECK(r.converged);
  CHECK(r.iterations[0].eps <= 1e-8);
  CHECK(r.iterations[0].bounds.contains(r.b_star));
}

TEST_CASE("boxes nest, shrink geometrically and recenter") {
  const ProblemDef def = population_dynamics();
  RefineConfig cfg;
  cfg.max_iters = 4;
  cfg.tol = 1e-12;  // force every iteration
  cfg.n_s = 20;
  cfg.strategy = SamplingStrategy::SLHS;
  cfg.kernel = KernelKind::CubicSpline;
  cfg.width0 = def.box.width() * 0.8;
  const auto r = refine_optimize(def, cfg);
  REQUIRE(r.iterations.size() == 4);
  CHECK_FALSE(r.converged);
  for (std::size_t i = 0; i < r.iterations.size(); ++i) {
    const auto& it = r.iterations[i];
    CHECK((it.bounds.lower.array() >= def.box.lower.array()).all());
    CHECK((it.bounds.upper.array() <= def.box.upper.array()).all());
    CHECK((it.training_box.lower.array() >= def.box.lower.array()).all());
    CHECK((it.training_box.upper.array() <= def.box.upper.array()).all());
    CHECK(it.bounds.contains(it.result.b_star));
    const Vector width = cfg.width0 * std::pow(cfg.shrink, static_cast<double>(i));
    const Vector center = i == 0 ? def.start_point() : r.iterations[i - 1].result.b_star;
    for (Eigen::Index j = 0; j < width.size(); ++j) {
      const bool clipped = center[j] - width[j] / 2 < def.box.lower[j] || center[j] + width[j] / 2 > def.box.upper[j];
      if (clipped) continue;
      CHECK(it.bounds.upper[j] - it.bounds.lower[j] == doctest::Approx(width[j]).epsilon(1e-12));
      CHECK(std::abs(0.5 * (it.bounds.upper[j] + it.bounds.lower[j]) - center[j]) <= 1e-12);
    }
  }
  // Best-so-far selection never does worse than the first iteration.
  CHECK(r.iterations[r.selected].original.psi0 <= r.iterations[0].original.psi0);
  CHECK(r.b_star == r.iterations[r.selected].result.b_star);
}

TEST_CASE("centered box clipping and relative gap") {
  Box global(Vector::Zero(2), Vector::Ones(2));
  const Box b = centered_box(Vector::Constant(2, 0.9), Vector::Constant(2, 0.4), global);
  CHECK(b.upper == Vector::Ones(2));
  CHECK(b.lower[0] == doctest::Approx(0.7));
  CHECK(relative_gap(210.99, 209.76) == doctest::Approx(0.0058).epsilon(0.01));
  CHECK(relative_gap(0.0, 0.0) == 0.0);
}

TEST_CASE("config checks") {
  RefineConfig cfg;
  cfg.shrink = 1.0;
  CHECK_THROWS_AS(cfg.check(), InvalidArgument);
  cfg = {};
  cfg.widen = 0.9;
  CHECK_THROWS_AS(cfg.check(), InvalidArgument);
  cfg = {};
  cfg.tol = 0.0;
  CHECK_THROWS_AS(cfg.check(), InvalidArgument);
}
