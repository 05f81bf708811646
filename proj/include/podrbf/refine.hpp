#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "podrbf/criteria.hpp"
#include "podrbf/rbf.hpp"
#include "podrbf/sampling.hpp"

namespace podrbf {

struct RefineConfig {
  /// Initial optimization box widths; empty means the full problem box.
  Vector width0;
  double shrink = 0.5;
  double widen = 1.1;
  double tol = 0.01;
  std::size_t max_iters = 10;
  SamplingStrategy strategy = SamplingStrategy::LHS;
  std::size_t n_s = 40;
  KernelKind kernel = KernelKind::LinearSpline;
  double eps_pod = 0.01;
  /// Iteration i (0-based) samples with seed + i.
  std::uint64_t seed = 0;
  /// Initial incumbent; empty means the problem's start point.
  Vector b0;
  std::size_t n_t = 100;
  IntegratorOptions integrator;
  OptimizerOptions optimizer;
  std::size_t jobs = 0;
  /// Also optimize the original model over the problem box for comparison.
  bool reference_original = false;

  /// Throws InvalidArgument on out-of-range settings.
  void check() const;
};

struct RefineIteration {
  Box bounds;        // optimization box
  Box training_box;  // sampling box
  std::size_t k = 0;
  OptResult result;               // surrogate optimization
  CriterionValues original;       // original model at result.b_star
  CriterionValues approximation;  // surrogate at result.b_star
  double eps = 0.0;
  double construction_time = 0.0;
  double optimization_time = 0.0;
};

struct RefineResult {
  std::vector<RefineIteration> iterations;
  std::size_t selected = 0;  // index into iterations
  Vector b_star;
  bool converged = false;
  double construction_time = 0.0;
  double surrogate_time = 0.0;
  double original_time = 0.0;
  std::optional<OptResult> reference;  // set when reference_original
};

/// Relative criterion gap |psi0 - psi0_hat| / max(|psi0|, tiny).
double relative_gap(double original, double approximation);

/// Optimization box of one iteration: center +- width/2 clipped to `global`.
Box centered_box(const Vector& center, const Vector& width, const Box& global);

/// Alternates surrogate construction on a slightly widened box, surrogate
/// optimization, and one original-model check at the surrogate optimum.
/// The box shrinks around the latest optimum until the relative criterion
/// gap is within tol. Without convergence the iteration with the best
/// original criterion is selected.
RefineResult refine_optimize(const ProblemDef& def, const RefineConfig& cfg);

}  // namespace podrbf
