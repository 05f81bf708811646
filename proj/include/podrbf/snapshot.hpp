#pragma once

#include <cstddef>

#include "podrbf/integrator.hpp"
#include "podrbf/sampling.hpp"

namespace podrbf {

/// Time-major layout of a trajectory in a snapshot column: the n_y states at
/// t_1, then at t_2, and so on. Entry (time i, state j) sits at i*n_y + j.
struct Stacking {
  std::size_t n_y = 0;
  std::size_t n_t = 0;

  std::size_t size() const { return n_y * n_t; }
  std::size_t index(std::size_t time, std::size_t state) const { return time * n_y + state; }
};

struct SnapshotMatrix {
  Matrix Y;  // (n_y * n_t) x n_s, column i from samples.points row i
  TimeGrid grid;
  SampleSet samples;
  Stacking stacking;
};

Vector stack(const Trajectory& traj);
Vector stack(const Matrix& states);
/// Inverse of stack: n_t x n_y matrix.
Matrix unstack(const Vector& column, const Stacking& stacking);

/// Integrates every sample (in parallel when jobs != 1; 0 means hardware
/// concurrency). Columns follow the sample order and the result does not
/// depend on the number of workers. A failed integration aborts the build
/// with a SampleFailure naming the sample index.
SnapshotMatrix build_snapshots(const ProblemDef& def, const SampleSet& samples, const TimeGrid& grid,
                               const IntegratorOptions& options = {}, std::size_t jobs = 0);

}  // namespace podrbf
