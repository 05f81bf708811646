#pragma once

#include <optional>
#include <string>

#include "podrbf/config.hpp"
#include "podrbf/surrogate.hpp"

namespace podrbf {

/// State shared between CLI stages. Each stage loads what it needs from the
/// output directory when an earlier stage of the same run did not produce
/// it, and computes it otherwise.
class Pipeline {
 public:
  Pipeline(RunConfig cfg, std::size_t jobs, bool deterministic);

  void sample();    // samples.csv
  void snapshot();  // snapshots.bin, snapshots.csv
  void train();     // surrogate.bin, spectrum.csv, energy.svg
  void evaluate();  // error_report.json, trajectories.svg, rmae_table.csv (sweep)
  void optimize();  // optresult.json, control.svg
  void refine();    // refine_trace.json
  void run_all();

  /// Name of the stage currently running, for diagnostics.
  const std::string& stage() const { return stage_; }
  const RunConfig& config() const { return cfg_; }

 private:
  const SampleSet& samples();
  const SnapshotMatrix& snapshots();
  const Surrogate& surrogate();
  std::filesystem::path out(const std::string& name) const { return cfg_.out_dir / name; }
  double wall(double seconds) const { return deterministic_ ? 0.0 : seconds; }

  RunConfig cfg_;
  std::size_t jobs_;
  bool deterministic_;
  std::string stage_;
  TimeGrid grid_;
  std::optional<SampleSet> samples_;
  std::optional<SnapshotMatrix> snapshots_;
  std::optional<Surrogate> surrogate_;
  std::optional<double> construction_time_;
};

/// Test-point seed paired with a training seed.
std::uint64_t test_seed(std::uint64_t seed);

struct HoldoutResult {
  ErrorReport report;
  std::size_t k = 0;
};

/// Trains on `n_s` points and reports accuracy on `n_g` fresh points drawn
/// with the same strategy and test_seed(seed).
HoldoutResult holdout_error(const ProblemDef& def, const TimeGrid& grid, SamplingStrategy strategy, std::size_t n_s,
                          std::size_t n_g, KernelKind kernel, double eps_pod, std::uint64_t seed,
                          const IntegratorOptions& options = {}, std::size_t jobs = 0);

}  // namespace podrbf
