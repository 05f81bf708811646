#include <doctest.h>

#include <cstring>
#include <fstream>
#include <limits>

#include "podrbf/bench.hpp"
#include "podrbf/errors.hpp"
#include "podrbf/io.hpp"
#include "podrbf/random.hpp"

using namespace podrbf;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "podrbf_test_io";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("samples round trip") {
  const auto s = slhs_sample(9, population_dynamics().box, 17);
  write_samples_csv(scratch("samples.csv"), s);
  const auto back = read_samples_csv(scratch("samples.csv"));
  CHECK(back.points == s.points);
  CHECK(back.strategy == s.strategy);
  CHECK(back.seed == 17);
  CHECK(back.box.lower == s.box.lower);
  CHECK(back.box.upper == s.box.upper);
}

TEST_CASE("matrix binary round trip and header") {
  Rng rng(1);
  Matrix Y(13, 5);
  for (Eigen::Index i = 0; i < Y.size(); ++i) Y.data()[i] = rng.uniform() * 1e3 - 5e2;
  write_matrix_binary(scratch("snap.bin"), Y);
  CHECK(fs::file_size(scratch("snap.bin")) == 16 + 13 * 5 * 8);
  CHECK(read_matrix_binary(scratch("snap.bin")) == Y);

  std::ifstream is(scratch("snap.bin"), std::ios::binary);
  char header[16];
  is.read(header, 16);
  CHECK(std::string(header, 4) == "SNAP");
  std::uint32_t rows = 0;
  std::memcpy(&rows, header + 4, 4);
  CHECK(rows == 13);
  double first = 0;
  is.read(reinterpret_cast<char*>(&first), 8);
  double second = 0;
  is.read(reinterpret_cast<char*>(&second), 8);
  CHECK(first == Y(0, 0));
  CHECK(second == Y(0, 1));  // row-major
}

TEST_CASE("corrupt binaries are rejected") {
  {
    std::ofstream os(scratch("bad.bin"), std::ios::binary);
    os << "JUNKJUNKJUNKJUNK";
  }
  CHECK_THROWS_AS(read_matrix_binary(scratch("bad.bin")), FormatError);
  CHECK_THROWS_AS(read_surrogate(scratch("bad.bin")), FormatError);

  write_matrix_binary(scratch("short.bin"), Matrix::Ones(4, 4));
  fs::resize_file(scratch("short.bin"), 40);
  CHECK_THROWS_AS(read_matrix_binary(scratch("short.bin")), FormatError);
}

TEST_CASE("surrogate round trip predicts identically") {
  const ProblemDef def = science_policy();
  const auto snap = build_snapshots(def, sample(SamplingStrategy::LHS, 20, def.box, 3), make_grid(0, 15, 100));
  const Surrogate s = train(snap, 0.01, KernelKind::CubicSpline);
  write_surrogate(scratch("surrogate.bin"), s);
  const Surrogate back = read_surrogate(scratch("surrogate.bin"));
  CHECK(back.k == s.k);
  CHECK(back.coeffs.kind == KernelKind::CubicSpline);
  CHECK(back.grid.times == s.grid.times);
  const Vector b = (Vector(2) << 0.31, 0.52).finished();
  CHECK(predict(back, b) == predict(s, b));
}

TEST_CASE("spectrum and json output") {
  const Vector sigma = (Vector(3) << 3, 2, 1).finished();
  write_spectrum_csv(scratch("spectrum.csv"), sigma);
  std::ifstream is(scratch("spectrum.csv"));
  std::string header, first;
  std::getline(is, header);
  std::getline(is, first);
  CHECK(header == "index,sigma,energy");
  CHECK(first.rfind("1,3,", 0) == 0);

  ErrorReport r;
  r.r2 = -std::numeric_limits<double>::infinity();
  write_json(scratch("r.json"), to_json(r));
  const auto doc = json::parse(std::ifstream(scratch("r.json")));
  CHECK(doc["r2"].is_null());

  OptResult o;
  o.wall_time = 3.5;
  o.b_star = Vector::Zero(2);
  CHECK(to_json(o, true)["wall_time"] == 0.0);
  CHECK(to_json(o, false)["wall_time"] == 3.5);
}
