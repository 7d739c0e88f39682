#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "phaselift/error.hpp"
#include "phaselift/mask.hpp"
#include "phaselift/rng.hpp"
#include "phaselift/signal.hpp"

using namespace phaselift;

TEST_SUITE("signal") {
  TEST_CASE("unitary DFT matches the direct sum in 1D and 2D") {
    std::mt19937_64 rng(11);
    for (auto [n1, n2] : {std::pair<std::size_t, std::size_t>{7, 1}, {16, 1}, {4, 6}, {5, 3}}) {
      const Shape shape = n2 == 1 ? Shape(n1) : Shape(n1, n2);
      ComplexSignal x(shape, oracle::random_vector(static_cast<Eigen::Index>(n1 * n2), rng));
      const Spectrum X = dft_unitary(x);
      CHECK((X.data() - oracle::naive_dft(x.data(), n1, n2)).norm() <= 1e-12 * x.norm());
      CHECK(std::abs(X.norm() - x.norm()) <= 1e-12 * x.norm());
      CHECK((idft_unitary(X).data() - x.data()).norm() <= 1e-12 * x.norm());
    }
  }

  TEST_CASE("oversampled DFT is the DFT of the zero-padded signal") {
    std::mt19937_64 rng(12);
    const Shape shape(3, 4);
    ComplexSignal x(shape, oracle::random_vector(12, rng));
    const Spectrum X = oversampled_dft(x, 3);
    CHECK(X.grid_shape() == Shape(9, 12));
    const Eigen::VectorXcd padded = zero_pad(x.data(), shape, Shape(9, 12));
    CHECK(padded[0] == x[0]);
    CHECK(padded[12] == x[4]);
    CHECK(padded[5] == cplx(0.0, 0.0));
    CHECK((X.data() - oracle::naive_dft(padded, 9, 12)).norm() <= 1e-12 * x.norm());
    CHECK((crop(padded, Shape(9, 12), shape) - x.data()).norm() == 0.0);
    CHECK((idft_unitary(X, shape).data() - x.data()).norm() <= 1e-12 * x.norm());
  }

  TEST_CASE("shape validation") {
    CHECK(Shape(3, 4).size() == 12);
    CHECK(Shape(3, 4).scaled(2) == Shape(6, 8));
    CHECK_FALSE(Shape(3) == Shape(3, 1));
    CHECK_THROWS_AS(ComplexSignal(Shape(3), Eigen::VectorXcd::Zero(4)), ShapeError);
    CHECK_THROWS_AS(idft_unitary(Spectrum(Shape(7), Eigen::VectorXcd::Zero(7)), Shape(2)), ShapeError);
  }
}

TEST_SUITE("mask") {
  TEST_CASE("mask kinds have their defining values") {
    const Shape shape(6, 5);
    const Mask constant = make_mask(shape, MaskKind::Constant);
    CHECK((constant.weights().array() == cplx(1.0, 0.0)).all());

    const Mask binary = make_mask(shape, MaskKind::Binary, 3);
    for (Eigen::Index t = 0; t < binary.weights().size(); ++t) {
      const cplx w = binary.weights()[t];
      CHECK((w == cplx(0.0, 0.0) || w == cplx(1.0, 0.0)));
    }
    const Mask real = make_mask(shape, MaskKind::GaussianReal, 3);
    CHECK(real.weights().imag().cwiseAbs().maxCoeff() == 0.0);

    const Mask mod = make_mask(shape, MaskKind::Modulation, 0, {2, 3});
    for (std::size_t t1 = 0; t1 < 6; ++t1)
      for (std::size_t t2 = 0; t2 < 5; ++t2) {
        const cplx expected = std::polar(1.0, 2.0 * std::numbers::pi * (2.0 * t1 / 6.0 + 3.0 * t2 / 5.0));
        CHECK(std::abs(mod.weights()[static_cast<Eigen::Index>(shape.index(t1, t2))] - expected) <= 1e-14);
      }
    CHECK_THROWS_AS(make_mask(shape, MaskKind::Modulation, 0, {6, 0}), ArgumentError);
  }

  TEST_CASE("random masks are reproducible and seed dependent") {
    const Shape shape(32);
    const Mask a = make_mask(shape, MaskKind::GaussianComplex, 9);
    const Mask b = make_mask(shape, MaskKind::GaussianComplex, 9);
    const Mask c = make_mask(shape, MaskKind::GaussianComplex, 10);
    CHECK(a.weights() == b.weights());
    CHECK_FALSE(a.weights() == c.weights());
  }

  TEST_CASE("modulation masks compose by adding shifts") {
    const Shape shape(8);
    const Mask m = make_mask(shape, MaskKind::Modulation, 0, {3, 0}) * make_mask(shape, MaskKind::Modulation, 0, {6, 0});
    CHECK(m.kind() == MaskKind::Modulation);
    CHECK(m.shift()[0] == 1);
    CHECK((m.weights() - make_mask(shape, MaskKind::Modulation, 0, {1, 0}).weights()).norm() <= 1e-13);
  }
}

TEST_SUITE("rng") {
  TEST_CASE("derived seeds separate streams and indices") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t stream = 1; stream <= 7; ++stream)
      for (std::uint64_t index = 0; index < 100; ++index) seen.insert(derive_seed(42, stream, index));
    CHECK(seen.size() == 700);
    CHECK(derive_seed(42, 1, 0) == derive_seed(42, 1, 0));
    CHECK(derive_seed(42, 1, 0) != derive_seed(43, 1, 0));
  }

  TEST_CASE("poisson sampler mean and variance") {
    Rng rng(5);
    for (double mean : {0.3, 4.0, 250.0}) {
      const int draws = 40000;
      double s = 0.0, s2 = 0.0;
      for (int i = 0; i < draws; ++i) {
        const double v = static_cast<double>(rng.poisson(mean));
        s += v;
        s2 += v * v;
      }
      const double m = s / draws;
      const double var = s2 / draws - m * m;
      CHECK(std::abs(m - mean) <= 5.0 * std::sqrt(mean / draws));
      CHECK(std::abs(var - mean) <= 0.05 * mean + 0.01);
    }
    CHECK(rng.poisson(0.0) == 0);
  }
}
