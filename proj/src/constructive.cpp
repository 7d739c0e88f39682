#include "phaselift/constructive.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <numeric>
#include <sstream>

#include "phaselift/error.hpp"

namespace phaselift {
namespace {

struct Dims {
  std::int64_t n1;
  std::int64_t n2;
};

Dims dims_of(const Shape& shape) {
  if (shape.rank() == 1) return {static_cast<std::int64_t>(shape.extent(0)), 1};
  return {static_cast<std::int64_t>(shape.extent(0)), static_cast<std::int64_t>(shape.extent(1))};
}

std::int64_t mod(std::int64_t a, std::int64_t n) {
  const std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

std::size_t step_index(const Dims& d, std::size_t k, std::int64_t ds1, std::int64_t ds2) {
  const auto k1 = static_cast<std::int64_t>(k) / d.n2;
  const auto k2 = static_cast<std::int64_t>(k) % d.n2;
  return static_cast<std::size_t>(mod(k1 + ds1, d.n1) * d.n2 + mod(k2 + ds2, d.n2));
}

/// Membership flags of the subgroup generated by the shifts.
std::vector<bool> generated_subgroup(const Shape& shape, const std::vector<Shift>& shifts) {
  const Dims d = dims_of(shape);
  std::vector<bool> seen(shape.size(), false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const std::size_t k = queue.front();
    queue.pop_front();
    for (const Shift& s : shifts) {
      const std::size_t next = step_index(d, k, s[0], s[1]);
      if (!seen[next]) {
        seen[next] = true;
        queue.push_back(next);
      }
    }
  }
  return seen;
}

std::vector<std::size_t> vanishing_indices(const Eigen::VectorXd& magnitudes) {
  const double threshold = kVanishingRelative * (magnitudes.size() ? magnitudes.maxCoeff() : 0.0);
  std::vector<std::size_t> out;
  for (Eigen::Index k = 0; k < magnitudes.size(); ++k) {
    if (!(magnitudes[k] > threshold)) out.push_back(static_cast<std::size_t>(k));
  }
  return out;
}

void throw_vanishing(const std::vector<std::size_t>& indices) {
  std::ostringstream msg;
  msg << "DFT vanishes at " << indices.size() << " frequencies (first " << indices.front() << ")";
  throw VanishingDftError(msg.str(), indices);
}

ComplexSignal unscramble(const ComplexSignal& y, const std::optional<Mask>& scrambler) {
  if (!scrambler) return y;
  if (!(scrambler->shape() == y.shape())) throw ShapeError("recover: scrambler shape mismatch");
  const Eigen::VectorXcd& w = scrambler->weights();
  for (Eigen::Index t = 0; t < w.size(); ++t) {
    if (w[t] == cplx(0.0, 0.0)) throw ZeroMaskWeightError("recover: scrambling mask has a zero weight at " + std::to_string(t));
  }
  return ComplexSignal(y.shape(), y.data().cwiseQuotient(w));
}

Spectrum spectrum_from(const Eigen::VectorXd& magnitudes, const Eigen::VectorXd& phases, const Shape& shape) {
  Eigen::VectorXcd values(magnitudes.size());
  for (Eigen::Index k = 0; k < magnitudes.size(); ++k) values[k] = std::polar(magnitudes[k], phases[k]);
  return Spectrum(shape, values);
}

void check_triple(const ModulationTriple& t, const Shape& shape) {
  const auto n = static_cast<Eigen::Index>(shape.size());
  if (!(t.shape == shape)) throw ShapeError("triple shape does not match");
  if (t.I0.size() != n || t.Iplus.size() != n || t.Ii.size() != n) throw ShapeError("triple blocks have the wrong length");
}

}  // namespace

Shift reduce_shift(const Shape& shape, const Shift& shift) {
  const Dims d = dims_of(shape);
  if (shape.rank() == 1 && shift[1] != 0) throw ArgumentError("1D shift must have s2 = 0");
  return {mod(shift[0], d.n1), mod(shift[1], d.n2)};
}

std::size_t shifted_index(const Shape& shape, std::size_t k, const Shift& shift) {
  return step_index(dims_of(shape), k, -shift[0], -shift[1]);
}

UniquenessVerdict uniqueness_check(const Shape& shape, const std::vector<Shift>& shifts) {
  if (shifts.empty()) throw ArgumentError("uniqueness_check: no shifts given");
  std::vector<Shift> reduced;
  for (const Shift& s : shifts) reduced.push_back(reduce_shift(shape, s));
  const std::vector<bool> members = generated_subgroup(shape, reduced);
  UniquenessVerdict v;
  v.subgroup_order = static_cast<std::size_t>(std::count(members.begin(), members.end(), true));
  v.unique = v.subgroup_order == shape.size();
  if (v.unique) return v;
  const bool all_zero = std::all_of(reduced.begin(), reduced.end(), [](const Shift& s) { return s[0] == 0 && s[1] == 0; });
  std::ostringstream msg;
  if (all_zero) {
    msg << "trivial subgroup";
  } else if (shape.rank() == 1 && reduced.size() == 1) {
    const auto n = static_cast<std::int64_t>(shape.extent(0));
    msg << "gcd(" << reduced[0][0] << ", " << n << ") = " << std::gcd(reduced[0][0], n) << "; cycle order " << v.subgroup_order;
  } else {
    msg << "shifts generate a subgroup of order " << v.subgroup_order << " out of " << shape.size();
  }
  v.reason = msg.str();
  return v;
}

MeasurementEnsemble make_triple_ensemble(const Shape& shape, const Shift& shift, const std::optional<Mask>& scrambler) {
  const Shift s = reduce_shift(shape, shift);
  const Mask base = scrambler ? *scrambler : make_mask(shape, MaskKind::Constant);
  if (!(base.shape() == shape)) throw ShapeError("make_triple_ensemble: scrambler shape mismatch");
  const Eigen::VectorXcd d = make_mask(shape, MaskKind::Modulation, 0, s).weights();
  const Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(d.size());
  const cplx i(0.0, 1.0);
  std::vector<Illumination> ill;
  ill.push_back({base, 1});
  ill.push_back({Mask::custom(shape, base.weights().cwiseProduct(ones + d)), 1});
  ill.push_back({Mask::custom(shape, base.weights().cwiseProduct(ones - i * d)), 1});
  return MeasurementEnsemble(shape, std::move(ill));
}

ModulationTriple triple_from_data(const Shape& shape, const Shift& shift, const IntensityData& data) {
  const auto n = static_cast<Eigen::Index>(shape.size());
  if (data.values.size() != 3 * n) throw ShapeError("triple_from_data: expected 3n intensities");
  ModulationTriple t{shape, reduce_shift(shape, shift), data.values.segment(0, n), data.values.segment(n, n),
                     data.values.segment(2 * n, n)};
  return t;
}

ModulationTriple simulate_triple(const ComplexSignal& x, const Shift& shift, const std::optional<Mask>& scrambler) {
  const MeasurementEnsemble ens = make_triple_ensemble(x.shape(), shift, scrambler);
  return triple_from_data(x.shape(), shift, sense(ens, x));
}

PhaseDeltas relative_phase_deltas(const ModulationTriple& triple) {
  check_triple(triple, triple.shape);
  const auto n = triple.I0.size();
  PhaseDeltas out;
  out.magnitudes = triple.I0.cwiseMax(0.0).cwiseSqrt();
  out.cosines = Eigen::VectorXd::Zero(n);
  out.sines = Eigen::VectorXd::Zero(n);
  out.deltas = Eigen::VectorXd::Zero(n);
  out.valid.assign(static_cast<std::size_t>(n), false);
  const double threshold = kVanishingRelative * (n ? out.magnitudes.maxCoeff() : 0.0);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto ks = static_cast<Eigen::Index>(shifted_index(triple.shape, static_cast<std::size_t>(k), triple.shift));
    const double a = out.magnitudes[k];
    const double b = out.magnitudes[ks];
    if (!(a > threshold && b > threshold)) continue;
    const double denom = 2.0 * a * b;
    const double c = (triple.Iplus[k] - triple.I0[k] - triple.I0[ks]) / denom;
    const double s = (triple.Ii[k] - triple.I0[k] - triple.I0[ks]) / denom;
    const double radius = std::hypot(c, s);
    out.raw_radius_error = std::max(out.raw_radius_error, std::abs(radius - 1.0));
    if (radius > 0.0) {
      out.cosines[k] = c / radius;
      out.sines[k] = s / radius;
    } else {
      out.cosines[k] = 1.0;
    }
    out.deltas[k] = std::atan2(out.sines[k], out.cosines[k]);
    out.valid[static_cast<std::size_t>(k)] = true;
  }
  return out;
}

Spectrum chain_phases(const Eigen::VectorXd& magnitudes, const Eigen::VectorXd& deltas, const std::vector<bool>& valid,
                      const Shift& shift, const Shape& shape) {
  const auto n = static_cast<Eigen::Index>(shape.size());
  if (magnitudes.size() != n || deltas.size() != n || valid.size() != shape.size())
    throw ShapeError("chain_phases: input lengths do not match the shape");
  const UniquenessVerdict verdict = uniqueness_check(shape, {shift});
  if (!verdict.unique) throw NotCoprimeError("chain_phases: " + verdict.reason);
  std::vector<std::size_t> flagged;
  for (std::size_t k = 0; k < valid.size(); ++k) {
    if (!valid[k]) flagged.push_back(k);
  }
  if (!flagged.empty()) throw_vanishing(flagged);

  const Shift s = reduce_shift(shape, shift);
  Eigen::VectorXd phases = Eigen::VectorXd::Zero(n);
  std::size_t k = 0;
  for (Eigen::Index step = 1; step < n; ++step) {
    const std::size_t next = shifted_index(shape, k, s);
    phases[static_cast<Eigen::Index>(next)] = phases[static_cast<Eigen::Index>(k)] + deltas[static_cast<Eigen::Index>(k)];
    k = next;
  }
  return spectrum_from(magnitudes, phases, shape);
}

ComplexSignal recover(const std::vector<ModulationTriple>& triples, const Shape& shape, const std::optional<Mask>& scrambler) {
  if (triples.empty()) throw ArgumentError("recover: no data");
  std::vector<Shift> shifts;
  std::vector<PhaseDeltas> deltas;
  for (const auto& t : triples) {
    check_triple(t, shape);
    shifts.push_back(reduce_shift(shape, t.shift));
    deltas.push_back(relative_phase_deltas(t));
  }
  if (triples.size() == 1) {
    const PhaseDeltas& d = deltas.front();
    return unscramble(idft_unitary(chain_phases(d.magnitudes, d.deltas, d.valid, shifts.front(), shape)), scrambler);
  }

  const UniquenessVerdict verdict = uniqueness_check(shape, shifts);
  if (!verdict.unique) throw NotCoprimeError("recover: " + verdict.reason);
  const Eigen::VectorXd& magnitudes = deltas.front().magnitudes;
  const std::vector<std::size_t> flagged = vanishing_indices(magnitudes);
  if (!flagged.empty()) throw_vanishing(flagged);

  // Breadth-first walk: k -> k - s adds delta_s[k]; k -> k + s subtracts delta_s[k + s].
  const Dims dm = dims_of(shape);
  const auto n = static_cast<Eigen::Index>(shape.size());
  Eigen::VectorXd phases = Eigen::VectorXd::Zero(n);
  std::vector<bool> seen(shape.size(), false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const std::size_t k = queue.front();
    queue.pop_front();
    for (std::size_t j = 0; j < shifts.size(); ++j) {
      const Shift& s = shifts[j];
      const std::size_t back = step_index(dm, k, -s[0], -s[1]);
      if (!seen[back]) {
        seen[back] = true;
        phases[static_cast<Eigen::Index>(back)] = phases[static_cast<Eigen::Index>(k)] + deltas[j].deltas[static_cast<Eigen::Index>(k)];
        queue.push_back(back);
      }
      const std::size_t fwd = step_index(dm, k, s[0], s[1]);
      if (!seen[fwd]) {
        seen[fwd] = true;
        phases[static_cast<Eigen::Index>(fwd)] = phases[static_cast<Eigen::Index>(k)] - deltas[j].deltas[static_cast<Eigen::Index>(fwd)];
        queue.push_back(fwd);
      }
    }
  }
  return unscramble(idft_unitary(spectrum_from(magnitudes, phases, shape)), scrambler);
}

ComplexSignal multi_shift_recover(const ModulationTriple& horizontal, const ModulationTriple& vertical, const Shape& shape,
                                  const std::optional<Mask>& scrambler) {
  if (shape.rank() != 2) throw ShapeError("multi_shift_recover: expects a 2D shape");
  check_triple(horizontal, shape);
  check_triple(vertical, shape);
  const Shift sh = reduce_shift(shape, horizontal.shift);
  const Shift sv = reduce_shift(shape, vertical.shift);
  if (sh[1] != 0 || sv[0] != 0) throw ArgumentError("multi_shift_recover: expects shifts (s1, 0) and (0, s2)");
  const Dims d = dims_of(shape);
  if (std::gcd(sh[0], d.n1) != 1 || std::gcd(sv[1], d.n2) != 1)
    throw NotCoprimeError("multi_shift_recover: need gcd(s1, n1) = gcd(s2, n2) = 1");

  const PhaseDeltas dh = relative_phase_deltas(horizontal);
  const PhaseDeltas dv = relative_phase_deltas(vertical);
  const std::vector<std::size_t> flagged = vanishing_indices(dh.magnitudes);
  if (!flagged.empty()) throw_vanishing(flagged);

  Eigen::VectorXd phases = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(shape.size()));
  // Walk k1 along the horizontal cycle at k2 = 0 ...
  std::size_t k = 0;
  for (std::int64_t step = 1; step < d.n1; ++step) {
    const std::size_t next = shifted_index(shape, k, sh);
    phases[static_cast<Eigen::Index>(next)] = phases[static_cast<Eigen::Index>(k)] + dh.deltas[static_cast<Eigen::Index>(k)];
    k = next;
  }
  // ... then each k1 along the vertical cycle.
  for (std::int64_t k1 = 0; k1 < d.n1; ++k1) {
    std::size_t c = static_cast<std::size_t>(k1 * d.n2);
    for (std::int64_t step = 1; step < d.n2; ++step) {
      const std::size_t next = shifted_index(shape, c, sv);
      phases[static_cast<Eigen::Index>(next)] = phases[static_cast<Eigen::Index>(c)] + dv.deltas[static_cast<Eigen::Index>(c)];
      c = next;
    }
  }
  return unscramble(idft_unitary(spectrum_from(dh.magnitudes, phases, shape)), scrambler);
}

ComplexSignal coset_rotation(const ComplexSignal& x, const std::vector<Shift>& shifts, double alpha) {
  std::vector<Shift> reduced;
  for (const Shift& s : shifts) reduced.push_back(reduce_shift(x.shape(), s));
  const std::vector<bool> members = generated_subgroup(x.shape(), reduced);
  const auto first_out = std::find(members.begin(), members.end(), false);
  if (first_out == members.end()) throw ArgumentError("coset_rotation: shifts generate the whole group");
  const auto g = static_cast<std::size_t>(first_out - members.begin());
  const Dims d = dims_of(x.shape());
  const auto g1 = static_cast<std::int64_t>(g) / d.n2;
  const auto g2 = static_cast<std::int64_t>(g) % d.n2;

  Spectrum spec = dft_unitary(x);
  const cplx rot = std::polar(1.0, alpha);
  for (std::size_t h = 0; h < members.size(); ++h) {
    if (members[h]) spec.data()[static_cast<Eigen::Index>(step_index(d, h, g1, g2))] *= rot;
  }
  return idft_unitary(spec);
}

}  // namespace phaselift
