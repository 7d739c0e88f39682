#include "phaselift/rng.hpp"

#include <cmath>

namespace phaselift {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(splitmix64(base) ^ stream) ^ index);
}

std::uint64_t Rng::poisson(double mean) {
  if (!(mean > 0.0)) return 0;
  // libstdc++ switches to a rejection sampler above mean 12; past 2^52 the
  // Gaussian limit is exact to double precision.
  if (mean > 4.5e15) {
    const double draw = std::round(mean + std::sqrt(mean) * normal());
    return draw < 0 ? 0 : static_cast<std::uint64_t>(draw);
  }
  std::poisson_distribution<std::uint64_t> dist(mean);
  return dist(engine_);
}

}  // namespace phaselift
