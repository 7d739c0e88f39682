#pragma once

#include <cstdint>

#include "phaselift/experiments/config.hpp"
#include "phaselift/signal.hpp"

namespace phaselift::experiments {

/// Test signal for a trial. sinusoid-mix is the real sum
///   1.0 cos(2 pi 2 t / n + p1) + 0.7 cos(2 pi 5 t / n + p2) + 0.4 cos(2 pi 11 t / n + p3)
/// (per axis product in 2D) with seeded phases p_i; complex-gaussian draws
/// a + ib with a, b ~ N(0, 1); real-nonneg-random draws z^2 with z ~ N(0, 1),
/// whose mean carries a third of the energy (U[0, 1) would put three
/// quarters in the DC term); image-file loads a PGM magnitude and optional
/// phase image.
ComplexSignal make_signal(const SignalSpec& spec, std::uint64_t seed);

}  // namespace phaselift::experiments
