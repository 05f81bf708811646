#include "podrbf/sampling.hpp"

#include "podrbf/errors.hpp"
#include "podrbf/random.hpp"

namespace podrbf {
namespace {

void check_inputs(std::size_t n_s, const Box& box) {
  if (n_s < 1) throw InvalidArgument("n_s must be at least 1");
  box.check();
}

SampleSet make_set(std::size_t n_s, const Box& box, SamplingStrategy strategy, std::uint64_t seed) {
  SampleSet set;
  set.points.resize(static_cast<Eigen::Index>(n_s), static_cast<Eigen::Index>(box.dim()));
  set.strategy = strategy;
  set.seed = seed;
  set.box = box;
  return set;
}

}  // namespace

std::string_view to_string(SamplingStrategy s) {
  switch (s) {
    case SamplingStrategy::RS: return "RS";
    case SamplingStrategy::LHS: return "LHS";
    case SamplingStrategy::SLHS: return "SLHS";
  }
  return "?";
}

SamplingStrategy parse_sampling_strategy(std::string_view text) {
  if (text == "RS" || text == "rs") return SamplingStrategy::RS;
  if (text == "LHS" || text == "lhs") return SamplingStrategy::LHS;
  if (text == "SLHS" || text == "slhs") return SamplingStrategy::SLHS;
  throw InvalidArgument("unknown sampling strategy '" + std::string(text) + "'");
}

SampleSet random_sample(std::size_t n_s, const Box& box, std::uint64_t seed) {
  check_inputs(n_s, box);
  auto set = make_set(n_s, box, SamplingStrategy::RS, seed);
  Rng rng(seed);
  const Vector w = box.width();
  for (Eigen::Index i = 0; i < set.points.rows(); ++i) {
    for (Eigen::Index j = 0; j < set.points.cols(); ++j) {
      set.points(i, j) = box.lower[j] + rng.uniform() * w[j];
    }
  }
  return set;
}

SampleSet lhs_sample(std::size_t n_s, const Box& box, std::uint64_t seed) {
  check_inputs(n_s, box);
  auto set = make_set(n_s, box, SamplingStrategy::LHS, seed);
  Rng rng(seed);
  const Vector w = box.width();
  const double n = static_cast<double>(n_s);
  for (Eigen::Index j = 0; j < set.points.cols(); ++j) {
    const auto strata = rng.permutation(n_s);
    for (std::size_t i = 0; i < n_s; ++i) {
      const double unit = (static_cast<double>(strata[i]) + rng.uniform()) / n;
      set.points(static_cast<Eigen::Index>(i), j) = box.lower[j] + unit * w[j];
    }
  }
  return set;
}

SampleSet slhs_sample(std::size_t n_s, const Box& box, std::uint64_t seed) {
  check_inputs(n_s, box);
  auto set = make_set(n_s, box, SamplingStrategy::SLHS, seed);
  Rng rng(seed);
  const Vector w = box.width();
  const std::size_t half = n_s / 2;
  const double n = static_cast<double>(n_s);
  const auto h = static_cast<Eigen::Index>(half);
  for (Eigen::Index j = 0; j < set.points.cols(); ++j) {
    const auto pairs = rng.permutation(half);
    for (std::size_t i = 0; i < half; ++i) {
      // Pick which stratum of the pair (s, n_s-1-s) the base point takes.
      std::size_t stratum = pairs[i];
      if (rng.uniform() < 0.5) stratum = n_s - 1 - stratum;
      const double unit = (static_cast<double>(stratum) + rng.uniform()) / n;
      const double x = box.lower[j] + unit * w[j];
      set.points(static_cast<Eigen::Index>(i), j) = x;
      set.points(static_cast<Eigen::Index>(i) + h, j) = box.lower[j] + box.upper[j] - x;
    }
    if (n_s % 2 == 1) set.points(2 * h, j) = 0.5 * (box.lower[j] + box.upper[j]);
  }
  return set;
}

SampleSet sample(SamplingStrategy strategy, std::size_t n_s, const Box& box, std::uint64_t seed) {
  switch (strategy) {
    case SamplingStrategy::RS: return random_sample(n_s, box, seed);
    case SamplingStrategy::LHS: return lhs_sample(n_s, box, seed);
    case SamplingStrategy::SLHS: return slhs_sample(n_s, box, seed);
  }
  throw InvalidArgument("unknown sampling strategy");
}

}  // namespace podrbf
