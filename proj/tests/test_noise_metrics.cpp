#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "phaselift/error.hpp"
#include "phaselift/mask.hpp"
#include "phaselift/metrics.hpp"
#include "phaselift/noise.hpp"

using namespace phaselift;

namespace {

template <typename F>
Eigen::VectorXd central_difference(F f, const Eigen::VectorXd& x, double h) {
  Eigen::VectorXd g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Eigen::VectorXd p = x, m = x;
    p[i] += h;
    m[i] -= h;
    g[i] = (f(p) - f(m)) / (2.0 * h);
  }
  return g;
}

}  // namespace

TEST_SUITE("noise") {
  TEST_CASE("Poisson corruption has the requested photon statistics") {
    IntensityData clean{Eigen::VectorXd::Constant(20000, 2.0)};
    const IntensityData noisy = corrupt(clean, PoissonNoise{50.0}, 3);
    const double mean = noisy.values.mean();
    const double var = (noisy.values.array() - mean).square().mean();
    CHECK(mean == doctest::Approx(2.0).epsilon(0.01));
    CHECK(var == doctest::Approx(2.0 / 50.0).epsilon(0.05));
    // Values are multiples of 1 / scale.
    CHECK(std::abs(noisy.values[7] * 50.0 - std::round(noisy.values[7] * 50.0)) <= 1e-9);
    CHECK(std::holds_alternative<PoissonNoise>(noisy.noise));
    CHECK_THROWS_AS(corrupt(clean, PoissonNoise{-1.0}, 3), ArgumentError);
  }

  TEST_CASE("Gaussian corruption and SNR") {
    IntensityData clean{Eigen::VectorXd::Constant(10000, 1.0)};
    const IntensityData noisy = corrupt(clean, GaussianNoise{Eigen::VectorXd::Constant(10000, 0.1)}, 4);
    CHECK(snr_db(clean, noisy) == doctest::Approx(20.0).epsilon(0.02));
    CHECK(snr_db(clean, clean) == kSnrCapDb);
    CHECK(corrupt(clean, GaussianNoise{Eigen::VectorXd::Constant(10000, 0.1)}, 4).values == noisy.values);
  }

  TEST_CASE("NLL gradients match central differences") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.5, 3.0);
    for (int rep = 0; rep < 10; ++rep) {
      Eigen::VectorXd b(12), mu(12), sigma(12);
      for (Eigen::Index i = 0; i < 12; ++i) {
        b[i] = std::round(u(rng) * 4.0);
        mu[i] = u(rng);
        sigma[i] = u(rng);
      }
      const NllValue g = nll_gaussian(b, mu, sigma);
      const auto fg = [&](const Eigen::VectorXd& m) { return nll_gaussian(b, m, sigma).value; };
      CHECK((g.gradient - central_difference(fg, mu, 1e-5)).norm() <= 1e-6 * g.gradient.norm());
      const NllValue p = nll_poisson(b, mu);
      const auto fp = [&](const Eigen::VectorXd& m) { return nll_poisson(b, m).value; };
      CHECK((p.gradient - central_difference(fp, mu, 1e-5)).norm() <= 1e-6 * p.gradient.norm());
    }
  }

  TEST_CASE("Poisson NLL clamps at the floor") {
    Eigen::VectorXd b(2), mu(2);
    b << 1.0, 0.0;
    mu << -1.0, 0.0;
    const NllValue v = nll_poisson(b, mu);
    CHECK(std::isfinite(v.value));
    CHECK(v.gradient.allFinite());
  }
}

TEST_SUITE("metrics") {
  TEST_CASE("relative MSE closed form matches a brute-force phase search") {
    std::mt19937_64 rng(32);
    for (int rep = 0; rep < 5; ++rep) {
      const Eigen::VectorXcd x0 = oracle::random_vector(9, rng);
      const Eigen::VectorXcd xh = oracle::random_vector(9, rng);
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < 20000; ++i) {
        const cplx c = std::polar(1.0, 2.0 * std::numbers::pi * i / 20000.0);
        best = std::min(best, (c * x0 - xh).squaredNorm() / x0.squaredNorm());
      }
      const double closed = relative_mse(x0, xh);
      CHECK(closed <= best + 1e-12);
      CHECK(closed == doctest::Approx(best).epsilon(1e-6));
    }
  }

  TEST_CASE("global phase does not change the error") {
    std::mt19937_64 rng(33);
    const Eigen::VectorXcd x0 = oracle::random_vector(16, rng);
    const Eigen::VectorXcd rotated = x0 * std::polar(1.0, 1.234);
    CHECK(relative_mse(x0, rotated) <= 1e-14);
    const ComplexSignal s0(Shape(16), x0), s1(Shape(16), rotated);
    CHECK(matrix_relative_error(s0, s1) <= 1e-7);
    const ComplexSignal s2(Shape(16), oracle::random_vector(16, rng));
    const Eigen::MatrixXcd d0 = x0 * x0.adjoint(), d2 = s2.data() * s2.data().adjoint();
    CHECK(matrix_relative_error(s0, s2) == doctest::Approx((d0 - d2).norm() / d0.norm()).epsilon(1e-12));
  }

  TEST_CASE("dB conversion is clamped") {
    CHECK(to_db(0.01) == doctest::Approx(-20.0));
    CHECK(to_db(0.0) == -kDbCap);
    CHECK(to_db(std::numeric_limits<double>::infinity()) == kDbCap);
  }

  TEST_CASE("data residuals") {
    std::mt19937_64 rng(34);
    const Shape shape(6);
    MeasurementEnsemble e(shape, {{make_mask(shape, MaskKind::GaussianComplex, 1), 2}});
    const ComplexSignal x(shape, oracle::random_vector(6, rng));
    const IntensityData b = sense(e, x);
    CHECK(residual(e, x, b) <= 1e-14);
    CHECK(lifted_residual(e, FactoredPsd::rank_one(x.data()), b) <= 1e-14);
    const ComplexSignal flipped(shape, -x.data());
    CHECK(residual(e, flipped, b) <= 1e-14);
  }
}
