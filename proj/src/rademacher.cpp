#include "vne/rademacher.hpp"

#include <random>
#include <stdexcept>

namespace vne {

namespace {

// splitmix64 finalizer
std::uint64_t mix(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

void RademacherSampler::fill(std::uint64_t index, std::vector<double>& out) const {
  if (index == 0) throw std::invalid_argument("sample index starts at 1");
  // mt19937_64's output sequence is fixed by the standard, so streams are
  // identical across platforms and standard libraries.
  std::mt19937_64 engine(mix(mix(seed_) ^ index));
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i % 64 == 0) bits = engine();
    out[i] = (bits & 1U) != 0 ? 1.0 : -1.0;
    bits >>= 1;
  }
}

std::vector<double> RademacherSampler::sample(std::size_t m, std::uint64_t index) const {
  if (m == 0) throw std::invalid_argument("sample length must be positive");
  std::vector<double> out(m);
  fill(index, out);
  return out;
}

}  // namespace vne
