#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "phaselift/mask.hpp"
#include "phaselift/measurement.hpp"
#include "phaselift/signal.hpp"

namespace phaselift {

/// Frequency shift (s1, s2); 1D shapes use s1 only.
using Shift = std::array<std::int64_t, 2>;

struct UniquenessVerdict {
  bool unique = false;
  std::string reason;             ///< empty when unique
  std::size_t subgroup_order = 0;  ///< size of the subgroup generated by the shifts
};

/// Whether the shifts generate the whole frequency group Z/n1 x Z/n2, i.e.
/// whether three-pattern phase chaining reaches every frequency.
UniquenessVerdict uniqueness_check(const Shape& shape, const std::vector<Shift>& shifts);

/// Shift reduced into [0, n) per axis; 1D shapes require s2 = 0.
Shift reduce_shift(const Shape& shape, const Shift& shift);

/// Flat index of k - s on the grid.
std::size_t shifted_index(const Shape& shape, std::size_t k, const Shift& shift);

/// I0 = |F y|^2, I+ = |F(y + D^s y)|^2, Ii = |F(y - i D^s y)|^2 for one shift.
struct ModulationTriple {
  Shape shape;
  Shift shift{0, 0};
  Eigen::VectorXd I0;
  Eigen::VectorXd Iplus;
  Eigen::VectorXd Ii;
};

/// The three illuminations W, W (1 + D^s), W (1 - i D^s). W defaults to the
/// constant mask.
MeasurementEnsemble make_triple_ensemble(const Shape& shape, const Shift& shift, const std::optional<Mask>& scrambler = {});

/// Splits data sensed on make_triple_ensemble back into its three blocks.
ModulationTriple triple_from_data(const Shape& shape, const Shift& shift, const IntensityData& data);

/// Forward simulation of the triple for the signal `x` (scrambled by W when given).
ModulationTriple simulate_triple(const ComplexSignal& x, const Shift& shift, const std::optional<Mask>& scrambler = {});

struct PhaseDeltas {
  Eigen::VectorXd magnitudes;  ///< |y^[k]|
  Eigen::VectorXd cosines;     ///< cos(phi[k - s] - phi[k]), renormalized to the unit circle
  Eigen::VectorXd sines;
  Eigen::VectorXd deltas;      ///< phi[k - s] - phi[k] in (-pi, pi]
  std::vector<bool> valid;     ///< false where |y^[k]| or |y^[k - s]| vanishes
  double raw_radius_error = 0.0;  ///< max | |(cos, sin)| - 1 | before renormalization
};

/// Vanishing threshold relative to the largest DFT magnitude.
inline constexpr double kVanishingRelative = 1e-9;

PhaseDeltas relative_phase_deltas(const ModulationTriple& triple);

/// Spectrum with phi[0] = 0 and phi[k - s] = phi[k] + delta[k] along the
/// cycle 0, -s, -2s, ... Throws NotCoprimeError when the cycle misses
/// frequencies and VanishingDftError when any delta is flagged.
Spectrum chain_phases(const Eigen::VectorXd& magnitudes, const Eigen::VectorXd& deltas, const std::vector<bool>& valid,
                      const Shift& shift, const Shape& shape);

/// Recovery from one triple per shift (all sharing the unshifted block).
/// With a scrambler the recovered W x is divided by W's weights.
ComplexSignal recover(const std::vector<ModulationTriple>& triples, const Shape& shape,
                      const std::optional<Mask>& scrambler = {});

/// Two-shift scheme with shifts (s1, 0) and (0, s2): phases along the first
/// row from the horizontal triple, then every column from the vertical one.
ComplexSignal multi_shift_recover(const ModulationTriple& horizontal, const ModulationTriple& vertical, const Shape& shape,
                                  const std::optional<Mask>& scrambler = {});

/// Signal whose spectrum equals that of x except on one coset of the
/// subgroup generated by `shifts`, where it is rotated by exp(i alpha).
/// Produces identical triple data whenever the shifts are not generating.
ComplexSignal coset_rotation(const ComplexSignal& x, const std::vector<Shift>& shifts, double alpha);

}  // namespace phaselift
