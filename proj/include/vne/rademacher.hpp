#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace vne {

/// Counter-based source of Rademacher (+-1) vectors.
///
/// Sample `index` of length m is a pure function of (seed, index, m), so
/// samples can be drawn in any order, on any thread, and reproduce exactly.
class RademacherSampler {
 public:
  explicit RademacherSampler(std::uint64_t seed) noexcept : seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  /// Vector of length m with entries exactly -1.0 or +1.0. index >= 1.
  std::vector<double> sample(std::size_t m, std::uint64_t index) const;

  /// Same as sample() but writes into out.
  void fill(std::uint64_t index, std::vector<double>& out) const;

 private:
  std::uint64_t seed_;
};

}  // namespace vne
