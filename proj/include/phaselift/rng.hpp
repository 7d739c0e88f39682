#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "phaselift/signal.hpp"

namespace phaselift {

/// Identification string embedded in every experiment report.
inline constexpr std::string_view kRngName =
    "std::mt19937_64; streams split by splitmix64(seed, stream, index); "
    "std::normal_distribution / std::poisson_distribution";

/// Splitmix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed for an independent stream: mixes the base seed with a stream tag and
/// an index (trial number, mask number, ...).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index = 0) noexcept;

/// Named stream tags used across the library.
namespace streams {
inline constexpr std::uint64_t kMask = 1;
inline constexpr std::uint64_t kSignal = 2;
inline constexpr std::uint64_t kNoise = 3;
inline constexpr std::uint64_t kSolver = 4;
inline constexpr std::uint64_t kFienup = 5;
inline constexpr std::uint64_t kTrial = 6;
inline constexpr std::uint64_t kEigen = 7;
}  // namespace streams

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  double normal() { return normal_(engine_); }
  cplx complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }
  /// Fair coin from the top bit of the engine output.
  bool coin() { return (engine_() >> 63) != 0; }
  std::uint64_t poisson(double mean);

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace phaselift
