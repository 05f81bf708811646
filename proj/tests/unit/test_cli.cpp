#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "podrbf_test_cli";
  fs::create_directories(dir);
  return dir;
}

fs::path write_config(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p;
}

int run(const std::string& args) {
  const std::string cmd = std::string(PODRBF_CLI) + " " + args + " > " + (scratch() / "last.log").string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), {}};
}

const char* kSmoke = R"({
  // science-policy model, small design
  "problem": {"preset": "science-policy"},
  "sampling": {"strategy": "LHS", "n_s": 40, "seed": 0, "n_g": 5},
  "surrogate": {"kernel": "linear"},
  "refine": {"max_iters": 2}
})";

}  // namespace

TEST_CASE("pipeline smoke run writes every artifact") {
  const auto cfg = write_config("smoke.json", kSmoke);
  const fs::path out = scratch() / "smoke";
  fs::remove_all(out);
  REQUIRE(run("pipeline --config " + cfg.string() + " --out " + out.string()) == 0);
  for (const char* f : {"config_resolved.json", "samples.csv", "snapshots.bin", "snapshots.csv", "surrogate.bin",
                        "spectrum.csv", "energy.svg", "error_report.json", "trajectories.svg", "optresult.json",
                        "control.svg", "refine_trace.json"}) {
    CHECK_MESSAGE(fs::exists(out / f), f);
  }
  const auto report = nlohmann::json::parse(slurp(out / "error_report.json"));
  CHECK(report["rmae"].get<double>() < 0.5);
  const auto opt = nlohmann::json::parse(slurp(out / "optresult.json"));
  CHECK(opt.contains("original"));
  CHECK(opt.contains("surrogate"));
}

TEST_CASE("stages resume from artifacts on disk") {
  const auto cfg = write_config("stages.json", kSmoke);
  const fs::path out = scratch() / "stages";
  fs::remove_all(out);
  const std::string common = " --config " + cfg.string() + " --out " + out.string();
  REQUIRE(run("sample" + common) == 0);
  REQUIRE(run("snapshot" + common) == 0);
  REQUIRE(run("train" + common) == 0);
  REQUIRE(run("evaluate" + common) == 0);
  CHECK(fs::exists(out / "error_report.json"));
}

TEST_CASE("deterministic runs are byte-identical") {
  const auto cfg = write_config("det.json", kSmoke);
  const fs::path a = scratch() / "det_a", b = scratch() / "det_b";
  fs::remove_all(a);
  fs::remove_all(b);
  REQUIRE(run("pipeline --deterministic --config " + cfg.string() + " --out " + a.string()) == 0);
  REQUIRE(run("pipeline --deterministic --config " + cfg.string() + " --out " + b.string()) == 0);
  std::size_t compared = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    const auto name = entry.path().filename();
    if (name == "config_resolved.json") continue;  // records the output directory
    CHECK_MESSAGE(slurp(entry.path()) == slurp(b / name), name.string());
    ++compared;
  }
  CHECK(compared >= 10);
}

TEST_CASE("exit codes") {
  CHECK(run("") == 1);
  CHECK(run("pipeline") == 1);
  CHECK(run("pipeline --config " + (scratch() / "missing.json").string()) == 1);

  const auto unknown = write_config("unknown.json", R"({"problem": {"preset": "science-policy"}, "bogus": 1})");
  CHECK(run("sample --config " + unknown.string() + " --out " + (scratch() / "u").string()) == 1);

  const auto broken = write_config("broken.json", "{ not json");
  CHECK(run("sample --config " + broken.string()) == 1);

  // y' = y^2 from y(0) = 1 blows up at t = 1, inside the horizon.
  const auto blowup = write_config("blowup.json", R"({
    "problem": {"inline": {
      "rhs": ["y1^2 + 0*u1"], "y0": [1], "t0": 0, "T": 5,
      "control": {"kind": "piecewise-constant", "nodes": [1]},
      "criterion": {"integrand": "y1"},
      "lower": [0], "upper": [1]}},
    "sampling": {"n_s": 4}
  })");
  const fs::path out = scratch() / "blowup";
  fs::remove_all(out);
  CHECK(run("snapshot --config " + blowup.string() + " --out " + out.string()) == 2);
  CHECK(slurp(scratch() / "last.log").find("stage snapshot") != std::string::npos);
}
