#include "phaselift/fft.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include <fftw3.h>

#include "phaselift/error.hpp"

namespace phaselift::fft {
namespace {

using PlanKey = std::tuple<std::size_t, std::size_t, int, int>;

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(const Shape& grid, Direction direction) {
    const int sign = direction == Direction::Forward ? FFTW_FORWARD : FFTW_BACKWARD;
    const PlanKey key{grid.extent(0), grid.rank() == 2 ? grid.extent(1) : 1, grid.rank(), sign};
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    // In-place plan on a scratch buffer; FFTW_ESTIMATE leaves it untouched and
    // keeps plan selection deterministic.
    const std::size_t total = grid.size();
    auto* in = fftw_alloc_complex(total);
    auto* out = in;
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan plan = nullptr;
    if (grid.rank() == 1) {
      plan = fftw_plan_dft_1d(static_cast<int>(grid.extent(0)), in, out, sign, flags);
    } else {
      plan = fftw_plan_dft_2d(static_cast<int>(grid.extent(0)), static_cast<int>(grid.extent(1)), in,
                              out, sign, flags);
    }
    fftw_free(in);
    if (plan == nullptr) throw Error("FFTW failed to create a plan for grid " + grid.to_string());
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<PlanKey, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

void transform(std::span<cplx> data, const Shape& grid, Direction direction) {
  if (data.size() != grid.size()) throw ShapeError("fft: buffer length does not match grid " + grid.to_string());
  if (data.empty()) return;
  fftw_plan plan = cache().get(grid, direction);
  auto* buffer = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, buffer, buffer);
  const double scale = 1.0 / std::sqrt(static_cast<double>(data.size()));
  for (auto& value : data) value *= scale;
}

}  // namespace phaselift::fft
