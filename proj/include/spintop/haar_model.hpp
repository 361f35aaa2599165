#pragma once

#include <vector>

#include "spintop/observables.hpp"
#include "spintop/types.hpp"

namespace spintop {

/// Inputs of the fully-chaotic analytical model: one Gaussian Kraus
/// application to a Haar-random state of total spin j, outcome m0,
/// resolution sigma.
struct HaarModelInput {
  double j = 1.0;
  double sigma = 1.0;
  double m0 = 0.0;

  HaarModelInput(double j_, double sigma_, double m0_) : j(j_), sigma(sigma_), m0(m0_) {
    if (j < 1.0 || std::abs(2.0 * j - std::lround(2.0 * j)) > 1e-9)
      throw std::invalid_argument("HaarModelInput: 2j must be an integer, j >= 1");
    if (!(sigma > 0.0) || !std::isfinite(sigma))
      throw std::invalid_argument("HaarModelInput: sigma must be positive and finite");
    if (!std::isfinite(m0)) throw std::invalid_argument("HaarModelInput: m0 must be finite");
  }
};

/// The five operator traces the model is built from, with K the Kraus
/// operator at outcome m0 (normalized so K^2 has unit-weight Gaussian
/// diagonal g(m)). All are even under m0 -> -m0 except tr_k2jz, which is
/// odd; that parity is exact by construction.
struct HaarTraces {
  double tr_k2 = 0.0;          // sum_m g(m)
  double tr_k4 = 0.0;          // sum_m g(m)^2
  double tr_k2jz = 0.0;        // sum_m m g(m)
  double tr_k2jz_k2jz = 0.0;   // sum_m m^2 g(m)^2
  double tr_k2jx_k2jx = 0.0;   // (1/2) sum_m g(m-1) g(m) (j+m)(j-m+1)
};

enum class TraceSurface {
  exact,   // lattice sums to machine precision (default)
  smooth,  // continuum surface, free of the period-1 lattice ripple
};

/// Closed-form evaluation of the five traces (no O(d) sums in the bulk):
/// erf/Gaussian expressions from the truncated-integral picture, completed
/// with the midpoint and lattice corrections that the plain continuum
/// approximation misses. tr(K^2 J_x) = tr(K^2 J_y) = 0 identically and
/// tr(K^2 J_y K^2 J_y) equals the J_x value by symmetry about the
/// measurement axis, so neither is stored.
HaarTraces closed_form_traces(const HaarModelInput& input,
                              TraceSurface surface = TraceSurface::exact);

/// Haar average of <J_axis>^2 after the Kraus application, assembled from
/// the traces as (tr(K^2 J)^2 + tr(K^2 J K^2 J)) / (tr(K^2)^2 + tr(K^4)).
double haar_expectation_sq(const HaarModelInput& input, Axis axis,
                           TraceSurface surface = TraceSurface::exact);

struct HaarCurvePoint {
  double sigma = 0.0;
  double mean_qfi = 0.0;
  bool converged = true;  // quadrature stable under node doubling
};

/// Model mean-QFI curve over a sigma grid: for each sigma the three-axis
/// sum of haar_expectation_sq is averaged over the outcome m0 with weight
/// p(m0) = tr(K^2)/d (the induced outcome density for Haar inputs), by
/// composite Gauss-Legendre quadrature on [-j - 8 sigma, j + 8 sigma].
/// The average uses the smooth trace surface so the integrand is free of
/// sub-node lattice ripple; each point is convergence-checked by doubling
/// the nodes per panel and flagged if the relative change exceeds 1e-6.
std::vector<HaarCurvePoint> haar_mean_qfi_curve(double j,
                                                const std::vector<double>& sigma_grid);

}  // namespace spintop
