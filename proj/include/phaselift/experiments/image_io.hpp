#pragma once

#include <string>

#include "phaselift/signal.hpp"

namespace phaselift::experiments {

/// Writes |x| as a 16-bit binary PGM (P5), mapping [0, max|x|] to [0, 65535].
/// The scale max|x| is stored in a "# scale" comment so loading restores it.
void save_pgm(const std::string& path, const ComplexSignal& image);

/// Reads an 8- or 16-bit binary PGM as a real nonnegative 2D signal. Pixel
/// values are multiplied by scale / maxval when a "# scale" comment is
/// present, otherwise by 1 / maxval.
ComplexSignal load_pgm(const std::string& path);

/// Magnitude image combined with a phase image whose pixels p map to
/// 2 pi p / (maxval + 1) in [0, 2 pi).
ComplexSignal load_complex_image(const std::string& magnitude_path, const std::string& phase_path);

}  // namespace phaselift::experiments
