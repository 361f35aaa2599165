#include <doctest.h>

#include <cmath>
#include <vector>

#include "spintop/haar_model.hpp"
#include "spintop/measurement.hpp"
#include "support/oracles.hpp"

using namespace spintop;

namespace {

void check_traces_close(const HaarTraces& got, const HaarTraces& expected,
                        double rel_tol) {
  const auto rel = [&](double g, double e) {
    return std::abs(g - e) / std::max(std::abs(e), 1e-300);
  };
  CHECK(rel(got.tr_k2, expected.tr_k2) < rel_tol);
  CHECK(rel(got.tr_k4, expected.tr_k4) < rel_tol);
  CHECK(rel(got.tr_k2jz_k2jz, expected.tr_k2jz_k2jz) < rel_tol);
  CHECK(rel(got.tr_k2jx_k2jx, expected.tr_k2jx_k2jx) < rel_tol);
  // tr K^2 Jz passes through zero; compare on the scale of m0 tr K^2.
  const double zscale = std::max({std::abs(expected.tr_k2jz), expected.tr_k2, 1e-300});
  CHECK(std::abs(got.tr_k2jz - expected.tr_k2jz) / zscale < rel_tol);
}

}  // namespace

TEST_SUITE("haar_model") {

TEST_CASE("input validation") {
  CHECK_THROWS_AS(HaarModelInput(50.0, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(HaarModelInput(50.0, -2.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(HaarModelInput(50.3, 1.0, 0.0), std::invalid_argument);
  CHECK_NOTHROW(HaarModelInput(50.5, 1.0, 0.0));  // half-integer spin is fine
}

TEST_CASE("closed forms match the discrete-sum oracle at the benchmark points") {
  for (const double j : {50.0, 150.0, 500.0}) {
    for (const double sigma : {1.0, std::sqrt(j), j}) {
      for (const double m0 : {0.0, j / 2.0}) {
        CAPTURE(j); CAPTURE(sigma); CAPTURE(m0);
        const auto got = closed_form_traces(HaarModelInput(j, sigma, m0));
        const auto expected = oracle::discrete_traces(j, sigma, m0);
        check_traces_close(got, expected, 1e-6);
      }
    }
  }
}

TEST_CASE("closed forms hold across the wider domain incl. edges and small sigma") {
  for (const double j : {50.0, 150.0}) {
    for (const double sigma : {0.5, 0.7, 1.3, 2.5, 4.0, j / 3.0, 2.0 * j}) {
      for (const double m0 : {0.0, 1.3, j / 2.0, j - 1.0, j, -j, j + 3.0 * sigma}) {
        CAPTURE(j); CAPTURE(sigma); CAPTURE(m0);
        const auto got = closed_form_traces(HaarModelInput(j, sigma, m0));
        const auto expected = oracle::discrete_traces(j, sigma, m0);
        check_traces_close(got, expected, 1e-6);
      }
    }
  }
  // Below sigma ~ 0.5 the continuum picture is meaningless, but the lattice
  // evaluation stays exact; document that with a spot check.
  const auto tiny = closed_form_traces(HaarModelInput(50.0, 0.05, 3.2));
  const auto tiny_expected = oracle::discrete_traces(50.0, 0.05, 3.2);
  check_traces_close(tiny, tiny_expected, 1e-9);
}

TEST_CASE("wide-kernel trace is the erf expression where tails vanish") {
  // j=50, sigma=5, m0=0: both erf edges saturate and tr K^2 is 1 to 1e-10.
  const auto t = closed_form_traces(HaarModelInput(50.0, 5.0, 0.0));
  CHECK(t.tr_k2 == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs((t.tr_k2jz) - (0.0)) < 1e-12);
}

TEST_CASE("parity in the outcome is exact") {
  for (const double m0 : {0.0, 2.5, 17.0, 49.0}) {
    const auto plus = closed_form_traces(HaarModelInput(50.0, 2.2, m0));
    const auto minus = closed_form_traces(HaarModelInput(50.0, 2.2, -m0));
    CHECK(plus.tr_k2 == minus.tr_k2);
    CHECK(plus.tr_k4 == minus.tr_k4);
    CHECK(plus.tr_k2jz == -minus.tr_k2jz);
    CHECK(plus.tr_k2jz_k2jz == minus.tr_k2jz_k2jz);
    CHECK(plus.tr_k2jx_k2jx == minus.tr_k2jx_k2jx);
  }
}

TEST_CASE("bulk identity: odd trace reduces to m0 tr K^2 away from the edges") {
  const auto t = closed_form_traces(HaarModelInput(50.0, 5.0, 3.0));
  const auto t_neg = closed_form_traces(HaarModelInput(50.0, 5.0, -3.0));
  CHECK(t.tr_k2jz - t_neg.tr_k2jz ==
        doctest::Approx(2.0 * 3.0 * t.tr_k2).epsilon(1e-10));
}

TEST_CASE("positivity invariants") {
  for (const double sigma : {0.5, 3.0, 40.0}) {
    const auto t = closed_form_traces(HaarModelInput(100.0, sigma, 12.0));
    CHECK(t.tr_k2 > 0.0);
    CHECK(t.tr_k4 > 0.0);
    CHECK(t.tr_k2jz_k2jz >= 0.0);
    CHECK(t.tr_k2jx_k2jx >= 0.0);
  }
}

TEST_CASE("transverse axes are identical and the z strong limit is pinned") {
  const HaarModelInput strong(50.0, 0.01, 3.0);
  CHECK(haar_expectation_sq(strong, Axis::x) == haar_expectation_sq(strong, Axis::y));
  CHECK(haar_expectation_sq(strong, Axis::z) == doctest::Approx(9.0).epsilon(1e-4));
}

TEST_CASE("weak limit reproduces the Haar second moment j/6") {
  const double j = 100.0;
  const HaarModelInput weak(j, 1e6, 0.0);
  for (const Axis axis : {Axis::x, Axis::y, Axis::z}) {
    CHECK(haar_expectation_sq(weak, axis) ==
          doctest::Approx(j / 6.0).epsilon(2e-4));
  }
}

TEST_CASE("Monte Carlo validation of the Haar-average formula") {
  const SpinQuantum q(100);  // j = 50
  const double j = q.j();
  const auto ops = make_ops(q);
  RandomStream rng(314, 0, 0);
  const int n_samples = 10000;

  for (const double sigma : {1.0, std::sqrt(j), j}) {
    for (const double m0 : {0.0, j / 2.0}) {
      CAPTURE(sigma); CAPTURE(m0);
      const GaussianMeasurement meas(q, sigma);
      double sums[3] = {0.0, 0.0, 0.0};
      double sq_sums[3] = {0.0, 0.0, 0.0};
      for (int s = 0; s < n_samples; ++s) {
        const SpinState psi = haar_random_state(q, rng);
        const SpinState post = posterior_update(meas, psi, m0);
        const Eigen::Vector3d mag = magnetization(post, ops);
        for (int a = 0; a < 3; ++a) {
          const double v = mag[a] * mag[a];
          sums[a] += v;
          sq_sums[a] += v * v;
        }
      }
      const Axis axes[3] = {Axis::x, Axis::y, Axis::z};
      for (int a = 0; a < 3; ++a) {
        const double mean = sums[a] / n_samples;
        const double var = sq_sums[a] / n_samples - mean * mean;
        const double sem = std::sqrt(var / n_samples);
        const double predicted =
            haar_expectation_sq(HaarModelInput(j, sigma, m0), axes[a]);
        CHECK(std::abs(mean - predicted) <= 3.0 * sem + 1e-12);
      }
    }
  }
}

TEST_CASE("model curve reaches the strong and weak plateaus") {
  const double j = 150.0;
  const auto curve = haar_mean_qfi_curve(j, {0.5, 2.0 * j});
  REQUIRE(curve.size() == 2);
  CHECK(curve[0].converged);
  CHECK(curve[1].converged);
  const double jj = j * j;
  // sigma <= 1: average-Dicke plateau 8/9 + O(1/j).
  CHECK(std::abs(curve[0].mean_qfi / jj - 8.0 / 9.0) < 2.0 / j);
  // sigma >= 2j: Haar plateau 4/3 - O(1/j).
  CHECK(std::abs(curve[1].mean_qfi / jj - 4.0 / 3.0) < 2.0 / j);
  for (const auto& point : curve) {
    CHECK(point.mean_qfi >= 0.0);
    CHECK(point.mean_qfi <= 4.0 / 3.0 * j * (j + 1.0));
  }
}

TEST_CASE("curve rejects an empty grid") {
  CHECK_THROWS_AS(haar_mean_qfi_curve(50.0, {}), std::invalid_argument);
}

}  // TEST_SUITE
