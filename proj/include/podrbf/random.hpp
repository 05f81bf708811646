#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace podrbf {

/// Seedable, splittable random stream.
///
/// The engine is `std::mt19937_64` seeded through SplitMix64. Doubles take
/// the top 53 bits of one engine draw and bounded integers use rejection
/// sampling, so sequences do not depend on the standard library's
/// distribution implementations. Golden tests rely on this being stable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform();
  /// Uniform integer on [0, n). `n` must be positive.
  std::uint64_t below(std::uint64_t n);
  /// Uniform random permutation of 0..n-1 (Fisher-Yates).
  std::vector<std::size_t> permutation(std::size_t n);
  /// Independent child stream; the same (seed, stream) always gives the same child.
  Rng split(std::uint64_t stream) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace podrbf
