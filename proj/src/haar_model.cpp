#include "spintop/haar_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "spintop/numerics/gauss_lattice.hpp"
#include "spintop/numerics/quadrature.hpp"

namespace spintop {

namespace {

using numerics::Quadratic;

constexpr double kSqrtPi = 1.7724538509055160273;

double lattice_sum(const Quadratic& p, double mu, double var, double j,
                   TraceSurface surface) {
  return surface == TraceSurface::exact
             ? numerics::gauss_lattice_sum(p, mu, var, j)
             : numerics::gauss_lattice_sum_smooth(p, mu, var, j);
}

}  // namespace

HaarTraces closed_form_traces(const HaarModelInput& input, TraceSurface surface) {
  const double j = input.j;
  const double sigma = input.sigma;
  // Parity in m0 is exact by construction: evaluate at |m0| and restore the
  // sign of the single odd trace.
  const double m0 = std::abs(input.m0);
  const double flip = input.m0 < 0.0 ? -1.0 : 1.0;

  const double v2 = sigma * sigma;       // variance of g
  const double v4 = 0.5 * sigma * sigma; // variance of g^2 (renormalized)
  const double c4 = 1.0 / (2.0 * kSqrtPi * sigma);

  HaarTraces t;
  t.tr_k2 = lattice_sum({1.0, 0.0, 0.0}, m0, v2, j, surface);
  t.tr_k4 = c4 * lattice_sum({1.0, 0.0, 0.0}, m0, v4, j, surface);
  t.tr_k2jz = flip * lattice_sum({0.0, 1.0, 0.0}, m0, v2, j, surface);
  t.tr_k2jz_k2jz = c4 * lattice_sum({0.0, 0.0, 1.0}, m0, v4, j, surface);
  // g(m-1) g(m) completes the square to a width-sigma/sqrt(2) Gaussian at
  // m0 + 1/2 times exp(-1/(4 sigma^2)); the ladder weight is
  // (j+m)(j-m+1) = j(j+1) + m - m^2.
  const double pair_damp = std::exp(-0.25 / (sigma * sigma));
  t.tr_k2jx_k2jx = 0.5 * c4 * pair_damp *
                   lattice_sum({j * (j + 1.0), 1.0, -1.0}, m0 + 0.5, v4, j, surface);
  return t;
}

double haar_expectation_sq(const HaarModelInput& input, Axis axis,
                           TraceSurface surface) {
  const HaarTraces t = closed_form_traces(input, surface);
  const double denom = t.tr_k2 * t.tr_k2 + t.tr_k4;
  if (!(denom > 0.0)) return 0.0;  // outcome far outside the spectrum
  if (axis == Axis::z)
    return (t.tr_k2jz * t.tr_k2jz + t.tr_k2jz_k2jz) / denom;
  return t.tr_k2jx_k2jx / denom;  // x and y are identical by symmetry
}

std::vector<HaarCurvePoint> haar_mean_qfi_curve(double j,
                                                const std::vector<double>& sigma_grid) {
  if (sigma_grid.empty())
    throw std::invalid_argument("haar_mean_qfi_curve: empty sigma grid");

  std::vector<HaarCurvePoint> curve;
  curve.reserve(sigma_grid.size());

  for (const double sigma : sigma_grid) {
    const double lo = -j - 8.0 * sigma;
    const double hi = j + 8.0 * sigma;

    // Integrand structure: erf edges of width sigma and an interior that
    // varies on the j scale. Panels no wider than the edge scale keep the
    // 8-point rule exact; a floor of 256 panels covers small windows.
    const double width = hi - lo;
    const double panel_w = std::min(std::max(1.0, sigma), width / 256.0);
    const int n_panels =
        std::max(256, static_cast<int>(std::ceil(width / std::max(panel_w, 1e-6))));

    const auto accumulate = [&](int nodes, double& mag_out) {
      double weight_total = 0.0;
      double weighted_mag = 0.0;
      // Single pass: integrate the outcome weight and the weighted
      // magnetization moment together.
      const auto f_weight = [&](double m0) {
        const HaarModelInput in(j, sigma, m0);
        const HaarTraces t = closed_form_traces(in, TraceSurface::smooth);
        return t.tr_k2;
      };
      const auto f_weighted = [&](double m0) {
        const HaarModelInput in(j, sigma, m0);
        const HaarTraces t = closed_form_traces(in, TraceSurface::smooth);
        const double denom = t.tr_k2 * t.tr_k2 + t.tr_k4;
        if (!(denom > 1e-300)) return 0.0;
        const double ez = (t.tr_k2jz * t.tr_k2jz + t.tr_k2jz_k2jz) / denom;
        const double ex = t.tr_k2jx_k2jx / denom;
        return t.tr_k2 * (ez + 2.0 * ex);
      };
      weight_total = numerics::integrate_composite_gl(f_weight, lo, hi, n_panels, nodes);
      weighted_mag = numerics::integrate_composite_gl(f_weighted, lo, hi, n_panels, nodes);
      mag_out = weighted_mag / weight_total;
    };

    double mag8 = 0.0, mag16 = 0.0;
    accumulate(8, mag8);
    accumulate(16, mag16);

    HaarCurvePoint point;
    point.sigma = sigma;
    const double casimir = j * (j + 1.0);
    point.mean_qfi = 4.0 / 3.0 * (casimir - mag16);
    const double rel = std::abs(mag16 - mag8) /
                       std::max(1e-300, std::abs(casimir - mag16));
    point.converged = rel <= 1e-6;
    curve.push_back(point);
  }
  return curve;
}

}  // namespace spintop
