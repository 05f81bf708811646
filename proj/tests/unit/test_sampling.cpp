#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "podrbf/bench.hpp"
#include "podrbf/errors.hpp"
#include "podrbf/sampling.hpp"

using namespace podrbf;

namespace {

Box unit_box(int dim) { return Box(Vector::Zero(dim), Vector::Ones(dim)); }

// Stratum index of every coordinate; points on a shared boundary are
// attributed by the generating rule, so allow a rounding slack of 1e-12.
bool one_per_stratum(const SampleSet& s) {
  const auto n = static_cast<double>(s.size());
  for (Eigen::Index j = 0; j < s.points.cols(); ++j) {
    std::vector<int> counts(s.size(), 0);
    for (Eigen::Index i = 0; i < s.points.rows(); ++i) {
      const double unit = (s.points(i, j) - s.box.lower[j]) / (s.box.upper[j] - s.box.lower[j]);
      auto idx = static_cast<long>(std::floor(unit * n));
      const double frac = unit * n - static_cast<double>(idx);
      if (frac < 1e-9 && idx > 0 && counts[static_cast<std::size_t>(idx)] > 0) --idx;
      idx = std::clamp(idx, 0L, static_cast<long>(s.size()) - 1);
      ++counts[static_cast<std::size_t>(idx)];
    }
    if (std::any_of(counts.begin(), counts.end(), [](int c) { return c != 1; })) return false;
  }
  return true;
}

bool mirror_closed(const SampleSet& s, double tol) {
  for (Eigen::Index i = 0; i < s.points.rows(); ++i) {
    const Vector m = s.box.mirror(s.points.row(i).transpose());
    bool found = false;
    for (Eigen::Index k = 0; k < s.points.rows() && !found; ++k) {
      found = (s.points.row(k).transpose() - m).cwiseAbs().maxCoeff() <= tol;
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("random sampling") {
  const auto one = random_sample(1, unit_box(1), 3);
  CHECK(one.points(0, 0) >= 0.0);
  CHECK(one.points(0, 0) <= 1.0);

  const auto many = random_sample(1000, unit_box(1), 7);
  CHECK(std::abs(many.points.mean() - 0.5) < 0.05);

  CHECK(random_sample(20, unit_box(3), 9).points == random_sample(20, unit_box(3), 9).points);
  CHECK(random_sample(20, unit_box(3), 9).points != random_sample(20, unit_box(3), 10).points);
}

TEST_CASE("LHS stratification") {
  auto s = lhs_sample(4, unit_box(1), 1);
  std::vector<double> x(s.points.data(), s.points.data() + 4);
  std::sort(x.begin(), x.end());
  CHECK(x[0] < 0.25);
  CHECK((x[1] >= 0.25 && x[1] < 0.5));
  CHECK((x[2] >= 0.5 && x[2] < 0.75));
  CHECK(x[3] >= 0.75);

  auto two = lhs_sample(2, unit_box(2), 4);
  for (int j = 0; j < 2; ++j) {
    CHECK(std::min(two.points(0, j), two.points(1, j)) < 0.5);
    CHECK(std::max(two.points(0, j), two.points(1, j)) >= 0.5);
  }

  const Box m2 = population_dynamics().box;
  for (std::uint64_t seed : {0u, 1u, 2u}) {
    const auto design = lhs_sample(40, m2, seed);
    CHECK(one_per_stratum(design));
    for (Eigen::Index i = 0; i < design.points.rows(); ++i) CHECK(m2.contains(design.points.row(i).transpose()));
  }
}

TEST_CASE("SLHS mirror closure and stratification") {
  const auto pair = slhs_sample(2, unit_box(1), 5);
  CHECK(pair.points(0, 0) + pair.points(1, 0) == doctest::Approx(1.0).epsilon(1e-15));

  CHECK(mirror_closed(slhs_sample(4, unit_box(2), 8), 1e-15));

  const Box m2 = population_dynamics().box;
  for (std::size_t n : {40u, 41u, 80u}) {
    const auto design = slhs_sample(n, m2, 3);
    CHECK(mirror_closed(design, 1e-12));
    CHECK(one_per_stratum(design));
    for (Eigen::Index i = 0; i < design.points.rows(); ++i) CHECK(m2.contains(design.points.row(i).transpose()));
  }
}

TEST_CASE("SLHS mirror rows are exact reflections of the base rows") {
  const Box box = science_policy().box;
  const auto s = slhs_sample(40, box, 12);
  for (Eigen::Index i = 0; i < 20; ++i) {
    for (Eigen::Index j = 0; j < 2; ++j) CHECK(s.points(i + 20, j) == box.lower[j] + box.upper[j] - s.points(i, j));
  }
}

TEST_CASE("sample dispatch and errors") {
  CHECK(sample(SamplingStrategy::LHS, 10, unit_box(2), 1).points == lhs_sample(10, unit_box(2), 1).points);
  CHECK(sample(SamplingStrategy::SLHS, 10, unit_box(2), 1).strategy == SamplingStrategy::SLHS);
  CHECK_THROWS_AS(lhs_sample(0, unit_box(2), 1), InvalidArgument);
  CHECK_THROWS_AS(parse_sampling_strategy("sobol"), InvalidArgument);
  CHECK(parse_sampling_strategy("slhs") == SamplingStrategy::SLHS);
}
