// Command-line driver for the POD-RBF surrogate pipeline.
//
//   podrbf <sample|snapshot|train|evaluate|optimize|refine|pipeline> --config run.json
//
// Exit codes: 0 success, 1 configuration or usage error, 2 numerical failure.

#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "podrbf/errors.hpp"
#include "podrbf/io.hpp"
#include "podrbf/pipeline.hpp"

namespace {

constexpr int kConfigError = 1;
constexpr int kNumericalError = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"POD-RBF surrogate modelling for parametric ODE optimal control"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string out_dir;
  std::size_t jobs = 0;
  bool deterministic = false;
  std::optional<std::uint64_t> seed;

  const std::map<std::string, std::string> commands = {
      {"sample", "draw the training design (samples.csv)"},
      {"snapshot", "integrate every sample (snapshots.bin, snapshots.csv)"},
      {"train", "build the surrogate (surrogate.bin, spectrum.csv, energy.svg)"},
      {"evaluate", "accuracy on fresh test points (error_report.json, rmae_table.csv)"},
      {"optimize", "optimize the original and/or surrogate model (optresult.json)"},
      {"refine", "iterative domain shrinking (refine_trace.json)"},
      {"pipeline", "all stages in order"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory (overrides output.dir)");
    sub->add_option("--jobs", jobs, "worker threads for snapshot builds (0 = all cores)");
    sub->add_flag("--deterministic", deterministic, "write 0 for every wall-time field");
    sub->add_option("--seed", seed, "override sampling.seed");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  podrbf::RunConfig cfg;
  try {
    cfg = podrbf::load_config(config_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (seed) cfg.seed = cfg.refine.seed = *seed;
  } catch (const podrbf::Error& e) {
    std::cerr << "podrbf: config: " << e.what() << "\n";
    return kConfigError;
  }

  podrbf::Pipeline pipeline(cfg, jobs, deterministic);
  try {
    podrbf::fs::create_directories(cfg.out_dir);
    podrbf::write_json(cfg.out_dir / "config_resolved.json", podrbf::to_json(cfg));
    if (command == "sample") pipeline.sample();
    else if (command == "snapshot") pipeline.snapshot();
    else if (command == "train") pipeline.train();
    else if (command == "evaluate") pipeline.evaluate();
    else if (command == "optimize") pipeline.optimize();
    else if (command == "refine") pipeline.refine();
    else pipeline.run_all();
  } catch (const podrbf::ConfigError& e) {
    std::cerr << "podrbf: stage " << pipeline.stage() << ": " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "podrbf: stage " << (pipeline.stage().empty() ? "setup" : pipeline.stage()) << ": " << e.what()
              << "\n";
    return kNumericalError;
  }
  return 0;
}
