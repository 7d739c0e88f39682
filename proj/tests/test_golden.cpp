#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "phaselift/golden_section.hpp"
#include "phaselift/mask.hpp"

using namespace phaselift;

TEST_SUITE("golden-section") {
  TEST_CASE("quadratic minimum") {
    int evals = 0;
    const auto f = [&](double x) {
      ++evals;
      return (x - 2.0) * (x - 2.0);
    };
    const GoldenResult r = golden_section_minimize(f, 0.0, 5.0, 1e-6);
    CHECK(r.x_best == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(r.bracket_hi - r.bracket_lo <= 1e-6);
    CHECK(static_cast<int>(r.probes.size()) == evals);
    // Each shrink keeps the golden ratio of the bracket.
    CHECK(r.bracket_hi - r.bracket_lo >= 5.0 * std::pow(kGoldenRatioConjugate, r.shrinks) * (1.0 - 1e-9));
  }

  TEST_CASE("monotone function ends at the boundary") {
    const GoldenResult r = golden_section_minimize([](double x) { return x; }, 1.0, 3.0, 1e-3);
    CHECK(r.value_best == 1.0);
    const GoldenResult s = golden_section_minimize([](double x) { return -x; }, 1.0, 3.0, 1e-3, 5);
    CHECK(s.value_best == -3.0);
    CHECK(s.probes.size() == 5);
  }

  TEST_CASE("lambda search returns a probed value inside the bracket") {
    std::mt19937_64 rng(71);
    const Shape shape(8);
    std::vector<Illumination> ill;
    for (int j = 0; j < 4; ++j) ill.push_back({make_mask(shape, MaskKind::GaussianComplex, 3 + j), 1});
    const MeasurementEnsemble e(shape, ill);
    const ComplexSignal x(shape, oracle::random_vector(8, rng));
    IntensityData b = sense(e, x);
    b.values.array() += 0.05 * b.values.mean();
    SolverConfig cfg;
    cfg.max_iters = 300;
    LambdaSearchOptions opt;
    opt.max_evals = 6;
    opt.target_norm = x.norm();
    const LambdaSearchResult r = golden_section_lambda(e, b, x, 1e-3, 1.0, cfg, opt);
    CHECK(r.lambda >= 1e-3 * (1.0 - 1e-12));
    CHECK(r.lambda <= 1.0 * (1.0 + 1e-12));
    CHECK(r.search.probes.size() <= 6);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : r.search.probes) best = std::min(best, p.value);
    CHECK(r.mse == best);
  }
}
