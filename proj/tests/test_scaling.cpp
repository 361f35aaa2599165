#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "spintop/scaling.hpp"

using namespace spintop;

TEST_SUITE("scaling") {

TEST_CASE("exact quadratic power law is recovered to 1e-10") {
  std::vector<ScalingPoint> pts;
  for (const double n : {50.0, 100.0, 200.0, 400.0})
    pts.push_back({n, 3.0 * n * n, 0.0});
  const auto fit = fit_power_law(pts);
  CHECK(fit.beta == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(fit.c == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(fit.n_points == 4);
}

TEST_CASE("exact linear law with equal weights") {
  std::vector<ScalingPoint> pts;
  for (const double n : {60.0, 100.0, 140.0, 200.0, 260.0})
    pts.push_back({n, 5.0 * n, 1.0});  // equal sems act as equal weights
  const auto fit = fit_power_law(pts);
  CHECK(fit.beta == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(fit.c == doctest::Approx(5.0).epsilon(1e-10));
}

TEST_CASE("coherent-state reference values scale as 2N/3") {
  // mean QFI of coherent states is 4j/3 = 2N/3: beta = 1, c = 2/3.
  std::vector<ScalingPoint> pts;
  for (const double n : {60.0, 100.0, 140.0, 200.0})
    pts.push_back({n, 2.0 * n / 3.0, 0.0});
  const auto fit = fit_power_law(pts);
  CHECK(fit.beta == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(fit.c == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("scale equivariance and permutation invariance") {
  std::vector<ScalingPoint> pts = {
      {60.0, 100.0, 2.0}, {100.0, 270.0, 5.0}, {140.0, 560.0, 8.0},
      {200.0, 1080.0, 14.0}, {260.0, 1900.0, 20.0}};
  const auto base = fit_power_law(pts);

  std::vector<ScalingPoint> scaled = pts;
  for (auto& p : scaled) {
    p.mean *= 7.5;
    p.sem *= 7.5;  // same relative errors
  }
  const auto fit_scaled = fit_power_law(scaled);
  CHECK(fit_scaled.beta == doctest::Approx(base.beta).epsilon(1e-12));
  CHECK(fit_scaled.c == doctest::Approx(7.5 * base.c).epsilon(1e-12));

  std::vector<ScalingPoint> shuffled = pts;
  std::mt19937 gen(3);
  std::shuffle(shuffled.begin(), shuffled.end(), gen);
  const auto fit_shuffled = fit_power_law(shuffled);
  CHECK(fit_shuffled.beta == doctest::Approx(base.beta).epsilon(1e-12));
  CHECK(fit_shuffled.c == doctest::Approx(base.c).epsilon(1e-12));
}

TEST_CASE("weights matter: down-weighted outlier barely moves the fit") {
  std::vector<ScalingPoint> clean;
  for (const double n : {50.0, 100.0, 200.0, 400.0})
    clean.push_back({n, 2.0 * n * n, 0.01 * 2.0 * n * n});
  auto noisy = clean;
  noisy.push_back({800.0, 5.0 * 800.0 * 800.0, 50.0 * 800.0 * 800.0});  // huge sem
  const auto base = fit_power_law(clean);
  const auto with_outlier = fit_power_law(noisy);
  CHECK(std::abs(with_outlier.beta - base.beta) < 0.01);
}

TEST_CASE("rejects degenerate inputs") {
  std::vector<ScalingPoint> two = {{50.0, 10.0, 0.0}, {100.0, 20.0, 0.0}};
  CHECK_THROWS_AS(fit_power_law(two), std::invalid_argument);

  std::vector<ScalingPoint> nonpos = {
      {50.0, 10.0, 0.0}, {100.0, -20.0, 0.0}, {200.0, 40.0, 0.0}};
  CHECK_THROWS_AS(fit_power_law(nonpos), std::invalid_argument);

  std::vector<ScalingPoint> same_size = {
      {50.0, 10.0, 0.0}, {50.0, 11.0, 0.0}, {50.0, 12.0, 0.0}};
  CHECK_THROWS_AS(fit_power_law(same_size), std::invalid_argument);
}

TEST_CASE("beta_curve groups by rescaled resolution and flags thin groups") {
  SweepResult sweep;
  sweep.observable = SweepResult::Observable::mean_qfi;
  // Three sizes at sigma/sqrt(j) = 0.1 following N^2, but only two at 1.0.
  for (const int n : {60, 100, 140}) {
    SweepRow row;
    row.n_particles = n;
    row.j = 0.5 * n;
    row.k = 3.0;
    row.sigma_over_sqrt_j = 0.1;
    row.sigma = 0.1 * std::sqrt(row.j);
    row.mean = 1.7 * n * n;
    row.sem = 0.01 * row.mean;
    row.n_trajectories = 10;
    sweep.rows.push_back(row);
  }
  for (const int n : {60, 100}) {
    SweepRow row;
    row.n_particles = n;
    row.j = 0.5 * n;
    row.k = 3.0;
    row.sigma_over_sqrt_j = 1.0;
    row.sigma = std::sqrt(row.j);
    row.mean = 2.0 * n;
    row.sem = 0.02 * row.mean;
    row.n_trajectories = 10;
    sweep.rows.push_back(row);
  }

  const auto curve = beta_curve(sweep);
  REQUIRE(curve.size() == 2);
  const auto& fitted = curve[0].sigma_over_sqrt_j == 0.1 ? curve[0] : curve[1];
  const auto& flagged = curve[0].sigma_over_sqrt_j == 0.1 ? curve[1] : curve[0];
  CHECK(fitted.ok);
  CHECK(fitted.fit.beta == doctest::Approx(2.0).epsilon(1e-9));
  CHECK_FALSE(flagged.ok);
  CHECK(flagged.error.find("3 system sizes") != std::string::npos);
}

}  // TEST_SUITE
