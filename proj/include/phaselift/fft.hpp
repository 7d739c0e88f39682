#pragma once

#include <complex>
#include <span>

#include "phaselift/signal.hpp"

namespace phaselift::fft {

enum class Direction { Forward, Inverse };

/// In-place unitary DFT of a row-major 1D/2D grid. Backed by FFTW; plans are
/// cached per (grid, direction) and execution is safe from multiple threads.
void transform(std::span<cplx> data, const Shape& grid, Direction direction);

}  // namespace phaselift::fft
