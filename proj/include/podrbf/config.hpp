#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "podrbf/refine.hpp"

namespace podrbf {

struct SweepConfig {
  std::vector<SamplingStrategy> strategies;
  std::vector<KernelKind> kernels;
  std::vector<std::size_t> sizes;
  bool enabled() const { return !strategies.empty(); }
};

/// Everything a CLI run needs. Defaults match the library defaults.
struct RunConfig {
  ProblemDef problem;
  nlohmann::ordered_json problem_source;  // the "problem" section as given

  SamplingStrategy strategy = SamplingStrategy::LHS;
  std::size_t n_s = 40;
  std::uint64_t seed = 0;
  std::size_t n_g = 10;

  double eps_pod = 0.01;
  KernelKind kernel = KernelKind::LinearSpline;

  std::size_t n_t = 100;
  IntegratorOptions integrator;
  OptimizerOptions optimizer;

  /// Which paths `optimize` runs.
  bool optimize_original = true;
  bool optimize_surrogate = true;

  RefineConfig refine;  // sampling/surrogate/integrator fields mirror the above
  SweepConfig sweep;

  std::filesystem::path out_dir = "out";
  bool plots = true;

  TimeGrid grid() const { return make_grid(problem.t0, problem.T, n_t); }
};

/// Parses a JSON document. Unknown keys, wrong types and out-of-range values
/// throw ConfigError naming the offending key.
RunConfig parse_config(const nlohmann::ordered_json& doc);
RunConfig load_config(const std::filesystem::path& path);

/// Resolved configuration with every default filled in.
nlohmann::ordered_json to_json(const RunConfig& cfg);

}  // namespace podrbf
