#include <doctest.h>

#include "podrbf/bench.hpp"
#include "podrbf/config.hpp"
#include "podrbf/criteria.hpp"
#include "podrbf/errors.hpp"

using namespace podrbf;
using ojson = nlohmann::ordered_json;

TEST_CASE("defaults") {
  const auto cfg = parse_config(ojson::parse(R"j({"problem": {"preset": "science-policy"}})j"));
  CHECK(cfg.problem.name == "science-policy");
  CHECK(cfg.strategy == SamplingStrategy::LHS);
  CHECK(cfg.n_s == 40);
  CHECK(cfg.n_g == 10);
  CHECK(cfg.n_t == 100);
  CHECK(cfg.eps_pod == 0.01);
  CHECK(cfg.kernel == KernelKind::LinearSpline);
  CHECK(cfg.integrator.rtol == 1e-6);
  CHECK(cfg.optimizer.max_evals == 20000);
  CHECK(cfg.refine.shrink == 0.5);
  CHECK(cfg.refine.widen == 1.1);
  CHECK(cfg.refine.max_iters == 10);
  CHECK(cfg.refine.tol == 0.01);
}

TEST_CASE("sections override defaults") {
  const auto cfg = parse_config(ojson::parse(R"j({
    "problem": {"preset": "population-dynamics", "params": {"y0": [10, 2]}},
    "sampling": {"strategy": "SLHS", "n_s": 80, "seed": 4},
    "surrogate": {"kernel": "cubic", "eps_pod": 0.001},
    "integrator": {"n_t": 50},
    "optimizer": {"max_evals": 500, "paths": ["surrogate"]},
    "refine": {"shrink": 0.25, "tol": 0.02},
    "evaluate": {"sweep": {"strategies": ["LHS", "RS"], "kernels": ["linear"], "n_s": [40, 60]}},
    "output": {"dir": "results", "plots": false}
  })j"));
  CHECK(cfg.problem.y0 == (Vector(2) << 10, 2).finished());
  CHECK(cfg.strategy == SamplingStrategy::SLHS);
  CHECK(cfg.refine.strategy == SamplingStrategy::SLHS);
  CHECK(cfg.refine.n_s == 80);
  CHECK(cfg.refine.seed == 4);
  CHECK(cfg.kernel == KernelKind::CubicSpline);
  CHECK(cfg.n_t == 50);
  CHECK(cfg.refine.n_t == 50);
  CHECK_FALSE(cfg.optimize_original);
  CHECK(cfg.optimize_surrogate);
  CHECK(cfg.refine.shrink == 0.25);
  CHECK(cfg.sweep.strategies.size() == 2);
  CHECK(cfg.sweep.sizes == std::vector<std::size_t>{40, 60});
  CHECK(cfg.out_dir == "results");
  CHECK_FALSE(cfg.plots);
}

TEST_CASE("unknown keys and bad values are rejected") {
  auto bad = [](const char* text) { return parse_config(ojson::parse(text)); };
  CHECK_THROWS_AS(bad(R"j({"problem": {"preset": "science-policy"}, "colour": 1})j"), ConfigError);
  CHECK_THROWS_AS(bad(R"j({"problem": {"preset": "science-policy"}, "sampling": {"ns": 4}})j"), ConfigError);
  CHECK_THROWS_AS(bad(R"j({"problem": {"preset": "science-policy", "params": {"gee": 1}}})j"), ConfigError);
  CHECK_THROWS_AS(bad(R"j({"problem": {"preset": "lotka"}})j"), ConfigError);
  CHECK_THROWS_AS(bad(R"j({"sampling": {"n_s": 4}})j"), ConfigError);
  CHECK_THROWS_AS(bad(R"j({"problem": {"preset": "science-policy"}, "sampling": {"n_s": -4}})j"), ConfigError);
  CHECK_THROWS_AS(bad(R"j({"problem": {"preset": "science-policy"}, "sampling": {"strategy": "sobol"}})j"), ConfigError);
  CHECK_THROWS_AS(bad(R"j({"problem": {"preset": "science-policy"}, "refine": {"shrink": 1.5}})j"), ConfigError);
  CHECK_THROWS_AS(bad(R"j({"problem": {"preset": "science-policy"}, "surrogate": {"eps_pod": "x"}})j"), ConfigError);
  CHECK_THROWS_AS(bad(R"j({"problem": {"preset": "science-policy", "params": {"u_lo": 0.9}}})j"), ConfigError);
}

TEST_CASE("inline problem reproduces the science-policy preset") {
  const auto cfg = parse_config(ojson::parse(R"j({
    "problem": {"inline": {
      "name": "science-policy-inline",
      "constants": {"g": 0.14, "d": 0.02},
      "rhs": ["u1*g*y1 - d*y1", "(1 - u1)*g*y1 - d*y2"],
      "y0": [100, 80], "t0": 0, "T": 15,
      "control": {"kind": "piecewise-linear", "nodes": [2]},
      "criterion": {"integrand": "0.5*(y1 + y2)"},
      "constraints": [{"terminal": "y1 - 200"}, {"terminal": "y2 - 240"}],
      "sense": "maximize",
      "lower": [0.1, 0.1], "upper": [0.6, 0.6], "initial_guess": [0.5, 0.5]
    }}
  })j"));
  const ProblemDef ref = science_policy();
  const auto grid = make_grid(0, 15, 100);
  const Vector b = (Vector(2) << 0.2, 0.55).finished();
  const auto a = criterion_original(cfg.problem, b, grid);
  const auto r = criterion_original(ref, b, grid);
  CHECK(a.psi0 == doctest::Approx(r.psi0).epsilon(1e-12));
  CHECK((a.psis - r.psis).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(cfg.problem.sense == Sense::Maximize);
}

TEST_CASE("inline problem errors name the key") {
  try {
    parse_config(ojson::parse(R"j({"problem": {"inline": {
      "rhs": ["y3"], "y0": [1], "control": {"kind": "piecewise-constant", "nodes": [1]},
      "criterion": {"integrand": "y1"}, "lower": [0], "upper": [1]}}})j"));
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("y3") != std::string::npos);
  }
}

TEST_CASE("resolved config parses back to the same settings") {
  const auto cfg = parse_config(ojson::parse(
      R"j({"problem": {"preset": "science-policy"}, "sampling": {"n_s": 60}, "refine": {"width0": [0.2, 0.2]}})j"));
  const auto again = parse_config(to_json(cfg));
  CHECK(again.n_s == 60);
  CHECK(again.refine.width0 == cfg.refine.width0);
  CHECK(to_json(again).dump() == to_json(cfg).dump());
}
