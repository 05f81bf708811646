#include "podrbf/refine.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "podrbf/errors.hpp"
#include "podrbf/snapshot.hpp"
#include "podrbf/surrogate.hpp"

namespace podrbf {
namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

void RefineConfig::check() const {
  if (!(shrink > 0.0 && shrink < 1.0)) throw InvalidArgument("shrink must lie in (0, 1)");
  if (!(tol > 0.0)) throw InvalidArgument("tol must be positive");
  if (!(widen >= 1.0)) throw InvalidArgument("widen must be >= 1");
  if (max_iters == 0) throw InvalidArgument("max_iters must be positive");
  if (n_s < 2) throw InvalidArgument("n_s must be at least 2");
  if (n_t < 2) throw InvalidArgument("n_t must be at least 2");
  if (!(eps_pod > 0.0 && eps_pod < 1.0)) throw InvalidArgument("eps_pod must lie in (0, 1)");
  if (width0.size() > 0 && (width0.array() <= 0.0).any()) throw InvalidArgument("width0 must be positive");
}

double relative_gap(double original, double approximation) {
  const double scale = std::max(std::abs(original), std::numeric_limits<double>::min());
  return std::abs(original - approximation) / scale;
}

Box centered_box(const Vector& center, const Vector& width, const Box& global) {
  if (center.size() != width.size() || static_cast<std::size_t>(center.size()) != global.dim()) {
    throw DimensionMismatch("center, width and box dimensions differ");
  }
  Vector lo = (center - 0.5 * width).cwiseMax(global.lower);
  Vector hi = (center + 0.5 * width).cwiseMin(global.upper);
  return Box(lo, hi);
}

RefineResult refine_optimize(const ProblemDef& def, const RefineConfig& cfg) {
  validate(def);
  cfg.check();
  const Box& global = def.box;
  Vector width = cfg.width0.size() > 0 ? cfg.width0 : global.width();
  Vector incumbent = global.project(cfg.b0.size() > 0 ? cfg.b0 : def.start_point());
  if (static_cast<std::size_t>(width.size()) != global.dim()) throw DimensionMismatch("width0 has wrong size");
  const TimeGrid grid = make_grid(def.t0, def.T, cfg.n_t);

  RefineResult out;
  for (std::size_t it = 0; it < cfg.max_iters; ++it) {
    RefineIteration rec;
    rec.bounds = centered_box(incumbent, width, global);
    rec.training_box = centered_box(incumbent, cfg.widen * width, global);

    auto start = std::chrono::steady_clock::now();
    const SampleSet samples = sample(cfg.strategy, cfg.n_s, rec.training_box, cfg.seed + it);
    const SnapshotMatrix snaps = build_snapshots(def, samples, grid, cfg.integrator, cfg.jobs);
    const Surrogate surrogate = train(snaps, cfg.eps_pod, cfg.kernel);
    rec.construction_time = seconds_since(start);
    rec.k = surrogate.k;

    rec.result = optimize_problem(
        def, [&](const Vector& b) { return criterion_surrogate(surrogate, def, b); }, rec.bounds,
        rec.bounds.project(incumbent), cfg.optimizer);
    rec.optimization_time = rec.result.wall_time;

    rec.approximation = criterion_surrogate(surrogate, def, rec.result.b_star);
    rec.original = criterion_original(def, rec.result.b_star, grid, cfg.integrator);
    rec.eps = relative_gap(rec.original.psi0, rec.approximation.psi0);

    out.construction_time += rec.construction_time;
    out.surrogate_time += rec.optimization_time;
    incumbent = rec.result.b_star;
    const bool done = rec.eps <= cfg.tol;
    out.iterations.push_back(std::move(rec));
    if (done) {
      out.converged = true;
      break;
    }
    width *= cfg.shrink;
  }

  if (out.converged) {
    out.selected = out.iterations.size() - 1;
  } else {
    const double sign = def.sense == Sense::Maximize ? -1.0 : 1.0;
    for (std::size_t i = 1; i < out.iterations.size(); ++i) {
      if (sign * out.iterations[i].original.psi0 < sign * out.iterations[out.selected].original.psi0) {
        out.selected = i;
      }
    }
  }
  out.b_star = out.iterations[out.selected].result.b_star;

  if (cfg.reference_original) {
    out.reference = optimize_problem(
        def, [&](const Vector& b) { return criterion_original(def, b, grid, cfg.integrator); }, global,
        global.project(cfg.b0.size() > 0 ? cfg.b0 : def.start_point()), cfg.optimizer);
    out.original_time = out.reference->wall_time;
  }
  return out;
}

}  // namespace podrbf
