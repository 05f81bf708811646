#pragma once

#include <cstdint>
#include <string_view>

#include "podrbf/problem.hpp"

namespace podrbf {

enum class SamplingStrategy { RS, LHS, SLHS };

std::string_view to_string(SamplingStrategy s);
SamplingStrategy parse_sampling_strategy(std::string_view text);

/// Design points in a box; one point per row.
struct SampleSet {
  Matrix points;  // n_s x dim
  SamplingStrategy strategy = SamplingStrategy::RS;
  std::uint64_t seed = 0;
  Box box;

  std::size_t size() const { return static_cast<std::size_t>(points.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(points.cols()); }
};

/// i.i.d. uniform points.
SampleSet random_sample(std::size_t n_s, const Box& box, std::uint64_t seed);

/// Latin hypercube: per dimension an independent random permutation assigns
/// one point to each of n_s equal-width strata, jittered uniformly inside it.
SampleSet lhs_sample(std::size_t n_s, const Box& box, std::uint64_t seed);

/// Symmetric Latin hypercube: floor(n_s/2) base points occupy one stratum of
/// each mirror pair (s, n_s-1-s) per dimension; their reflections through the
/// box center fill the partner strata. For odd n_s the center is added.
SampleSet slhs_sample(std::size_t n_s, const Box& box, std::uint64_t seed);

SampleSet sample(SamplingStrategy strategy, std::size_t n_s, const Box& box, std::uint64_t seed);

}  // namespace podrbf
