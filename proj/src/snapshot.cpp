#include "podrbf/snapshot.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "podrbf/errors.hpp"

namespace podrbf {

Vector stack(const Matrix& states) {
  // Row-major flattening of the n_t x n_y state matrix.
  Vector out(states.size());
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < states.rows(); ++i) {
    for (Eigen::Index j = 0; j < states.cols(); ++j) out[k++] = states(i, j);
  }
  return out;
}

Vector stack(const Trajectory& traj) { return stack(traj.states); }

Matrix unstack(const Vector& column, const Stacking& stacking) {
  if (static_cast<std::size_t>(column.size()) != stacking.size()) {
    throw DimensionMismatch("stacked vector has " + std::to_string(column.size()) + " entries, expected " +
                            std::to_string(stacking.size()));
  }
  Matrix states(static_cast<Eigen::Index>(stacking.n_t), static_cast<Eigen::Index>(stacking.n_y));
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < states.rows(); ++i) {
    for (Eigen::Index j = 0; j < states.cols(); ++j) states(i, j) = column[k++];
  }
  return states;
}

SnapshotMatrix build_snapshots(const ProblemDef& def, const SampleSet& samples, const TimeGrid& grid,
                               const IntegratorOptions& options, std::size_t jobs) {
  if (samples.size() == 0) throw InvalidArgument("sample set is empty");
  if (samples.dim() != def.control.n_params()) {
    throw DimensionMismatch("samples have dimension " + std::to_string(samples.dim()) + ", problem needs " +
                            std::to_string(def.control.n_params()));
  }
  SnapshotMatrix snap;
  snap.grid = grid;
  snap.samples = samples;
  snap.stacking = Stacking{def.n_y, grid.n_t};
  const auto n_s = samples.size();
  snap.Y.resize(static_cast<Eigen::Index>(snap.stacking.size()), static_cast<Eigen::Index>(n_s));

  auto solve_column = [&](std::size_t i) {
    const Vector b = samples.points.row(static_cast<Eigen::Index>(i)).transpose();
    snap.Y.col(static_cast<Eigen::Index>(i)) = stack(integrate(def, b, grid, options));
  };

  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, n_s);

  // Lowest failing index wins so the reported error is independent of scheduling.
  std::mutex failure_mutex;
  std::size_t failed_index = n_s;
  std::string failure_message;
  auto record_failure = [&](std::size_t i, const std::exception& e) {
    std::lock_guard lock(failure_mutex);
    if (i < failed_index) {
      failed_index = i;
      failure_message = e.what();
    }
  };

  if (jobs <= 1) {
    for (std::size_t i = 0; i < n_s; ++i) {
      try {
        solve_column(i);
      } catch (const std::exception& e) {
        record_failure(i, e);
        break;
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (std::size_t w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < n_s; i = next++) {
          try {
            solve_column(i);
          } catch (const std::exception& e) {
            record_failure(i, e);
          }
        }
      });
    }
    for (auto& t : workers) t.join();
  }
  if (failed_index < n_s) throw SampleFailure(failed_index, failure_message);
  return snap;
}

}  // namespace podrbf
