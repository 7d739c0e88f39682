#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "phaselift/constructive.hpp"
#include "phaselift/error.hpp"
#include "phaselift/mask.hpp"
#include "phaselift/metrics.hpp"

using namespace phaselift;

namespace {

// Size of {a s + b t} in Z/n1 x Z/n2 by enumerating coefficient pairs.
std::size_t generated_order(std::size_t n1, std::size_t n2, const std::vector<Shift>& shifts) {
  std::set<std::pair<std::int64_t, std::int64_t>> seen;
  const auto N = static_cast<std::int64_t>(n1 * n2);
  const Shift s = shifts[0];
  const Shift t = shifts.size() > 1 ? shifts[1] : Shift{0, 0};
  for (std::int64_t a = 0; a < N; ++a)
    for (std::int64_t b = 0; b < N; ++b) {
      const auto i1 = static_cast<std::int64_t>(n1), i2 = static_cast<std::int64_t>(n2);
      seen.insert({(((a * s[0] + b * t[0]) % i1) + i1) % i1, (((a * s[1] + b * t[1]) % i2) + i2) % i2});
    }
  return seen.size();
}

}  // namespace

TEST_SUITE("constructive") {
  TEST_CASE("uniqueness verdict agrees with the generated subgroup") {
    for (std::size_t n : {5, 8, 12}) {
      for (std::int64_t s = 0; s < static_cast<std::int64_t>(n); ++s) {
        const auto v = uniqueness_check(Shape(n), {{s, 0}});
        CHECK(v.unique == (std::gcd(static_cast<std::size_t>(s), n) == 1));
        CHECK(v.subgroup_order == generated_order(n, 1, {{s, 0}}));
        CHECK(v.unique == v.reason.empty());
      }
    }
    CHECK(uniqueness_check(Shape(8, 9), {{3, 2}}).unique);
    CHECK_FALSE(uniqueness_check(Shape(4, 6), {{1, 1}}).unique);
    CHECK(uniqueness_check(Shape(4, 6), {{1, 1}}).subgroup_order == generated_order(4, 6, {{1, 1}}));
    CHECK(uniqueness_check(Shape(4, 6), {{1, 0}, {0, 1}}).unique);
  }

  TEST_CASE("shift arithmetic") {
    CHECK(reduce_shift(Shape(8), {-3, 0}) == Shift{5, 0});
    CHECK_THROWS_AS(reduce_shift(Shape(8), {1, 2}), ArgumentError);
    CHECK(reduce_shift(Shape(4, 6), {5, -1}) == Shift{1, 5});
    CHECK(shifted_index(Shape(8), 1, {3, 0}) == 6);
    CHECK(shifted_index(Shape(4, 6), 0, {1, 2}) == 3 * 6 + 4);
  }

  TEST_CASE("phase differences match the true spectrum") {
    std::mt19937_64 rng(51);
    const Shape shape(9);
    const ComplexSignal x(shape, oracle::random_vector(9, rng));
    const auto triple = simulate_triple(x, {2, 0});
    const PhaseDeltas d = relative_phase_deltas(triple);
    const Eigen::VectorXcd X = oracle::naive_dft(x.data(), 9, 1);
    CHECK(d.raw_radius_error <= 1e-10);
    for (std::size_t k = 0; k < 9; ++k) {
      const std::size_t km = (k + 9 - 2) % 9;
      const double truth = std::arg(X[static_cast<Eigen::Index>(km)] / X[static_cast<Eigen::Index>(k)]);
      CHECK(std::abs(std::remainder(d.deltas[static_cast<Eigen::Index>(k)] - truth, 2.0 * std::numbers::pi)) <= 1e-9);
      CHECK(d.magnitudes[static_cast<Eigen::Index>(k)] == doctest::Approx(std::abs(X[static_cast<Eigen::Index>(k)])));
    }
  }

  TEST_CASE("exact recovery in 1D with and without a scrambler") {
    std::mt19937_64 rng(52);
    const Shape shape(16);
    for (std::int64_t s : {1, 3, 5, 15}) {
      const ComplexSignal x(shape, oracle::random_vector(16, rng));
      const Mask w = make_mask(shape, MaskKind::GaussianComplex, 7);
      CHECK(relative_mse(x, recover({simulate_triple(x, {s, 0}, w)}, shape, w)) <= 1e-9);
      CHECK(relative_mse(x, recover({simulate_triple(x, {s, 0})}, shape)) <= 1e-9);
    }
  }

  TEST_CASE("data-level recovery through the triple ensemble") {
    std::mt19937_64 rng(53);
    const Shape shape(7, 5);
    const ComplexSignal x(shape, oracle::random_vector(35, rng));
    const Mask w = make_mask(shape, MaskKind::GaussianComplex, 8);
    const auto e = make_triple_ensemble(shape, {2, 1}, w);
    const auto triple = triple_from_data(shape, {2, 1}, sense(e, x));
    CHECK(relative_mse(x, recover({triple}, shape, w)) <= 1e-9);
  }

  TEST_CASE("non-generating shifts are refused and admit two solutions") {
    std::mt19937_64 rng(54);
    const Shape shape(8);
    const ComplexSignal x(shape, oracle::random_vector(8, rng));
    CHECK_THROWS_AS(recover({simulate_triple(x, {2, 0})}, shape), NotCoprimeError);
    const ComplexSignal other = coset_rotation(x, {{2, 0}}, 1.0);
    CHECK(relative_mse(x, other) > 1e-2);
    const auto t0 = simulate_triple(x, {2, 0}), t1 = simulate_triple(other, {2, 0});
    CHECK((t0.I0 - t1.I0).norm() <= 1e-12 * t0.I0.norm());
    CHECK((t0.Iplus - t1.Iplus).norm() <= 1e-12 * t0.Iplus.norm());
    CHECK((t0.Ii - t1.Ii).norm() <= 1e-12 * t0.Ii.norm());
  }

  TEST_CASE("multi-shift recovery when no single shift generates") {
    std::mt19937_64 rng(55);
    const Shape shape(4, 6);
    const ComplexSignal x(shape, oracle::random_vector(24, rng));
    const Mask w = make_mask(shape, MaskKind::GaussianComplex, 9);
    const auto h = simulate_triple(x, {1, 0}, w), v = simulate_triple(x, {0, 1}, w);
    CHECK(relative_mse(x, multi_shift_recover(h, v, shape, w)) <= 1e-9);
    CHECK(relative_mse(x, recover({h, v}, shape, w)) <= 1e-9);
  }

  TEST_CASE("vanishing DFT and zero scrambler weights are reported") {
    const Shape shape(8);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(8);
    v[0] = 1.0;
    v[1] = 1.0;  // DFT vanishes at k = 4
    try {
      recover({simulate_triple(ComplexSignal(shape, v), {1, 0})}, shape);
      FAIL("expected VanishingDftError");
    } catch (const VanishingDftError& e) {
      CHECK_FALSE(e.indices().empty());
    }
    Eigen::VectorXcd w = Eigen::VectorXcd::Ones(8);
    w[3] = 0.0;
    const Mask scrambler = Mask::custom(shape, w);
    std::mt19937_64 rng(56);
    const ComplexSignal x(shape, oracle::random_vector(8, rng));
    CHECK_THROWS_AS(recover({simulate_triple(x, {1, 0}, scrambler)}, shape, scrambler), ZeroMaskWeightError);
  }
}
