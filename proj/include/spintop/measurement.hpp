#pragma once

#include "spintop/collective.hpp"
#include "spintop/rng.hpp"
#include "spintop/types.hpp"

namespace spintop {

/// Gaussian collective measurement of J_z with resolution sigma (strength
/// 1/sigma). Outcomes are continuous reals; the Kraus weight on Dicke level
/// m is exp(-(m - outcome)^2 / (4 sigma^2)) up to normalization.
struct GaussianMeasurement {
  SpinQuantum quantum;
  double sigma = 1.0;

  GaussianMeasurement(const SpinQuantum& q, double sigma_) : quantum(q), sigma(sigma_) {
    if (!(sigma_ > 0.0) || !std::isfinite(sigma_))
      throw std::invalid_argument("GaussianMeasurement: sigma must be positive and finite");
  }
};

struct MeasurementOutcome {
  double m = 0.0;        // sampled outcome
  double log_norm = 0.0; // log outcome density at m (diagnostic)
};

/// Sample an outcome from the exact mixture density
/// P(m) = sum_mz |c_mz|^2 Normal(m; mz, sigma^2), by ancestral sampling:
/// a Dicke level from the Born weights, then a Gaussian around it.
MeasurementOutcome sample_outcome(const GaussianMeasurement& meas,
                                  const SpinState& state, RandomStream& rng);

/// Outcome density P(m) evaluated in log space.
double log_outcome_density(const GaussianMeasurement& meas,
                           const SpinState& state, double m);

/// Backaction of outcome m: amplitudes reweighted by the Gaussian Kraus
/// factors and renormalized. Weights are computed log-domain with the
/// maximum exponent subtracted, so strong measurements at large N never
/// underflow to the zero vector.
SpinState posterior_update(const GaussianMeasurement& meas,
                           const SpinState& state, double m);

/// Density-matrix outcome sampling from the diagonal populations.
MeasurementOutcome sample_outcome_density(const GaussianMeasurement& meas,
                                          const DensityState& rho,
                                          RandomStream& rng);

/// rho -> K rho K / tr(K rho K) with the same log-domain weights.
DensityState posterior_update_density(const GaussianMeasurement& meas,
                                      const DensityState& rho, double m);

/// Max over Dicke levels of |integral of the POVM density - 1|, the
/// completeness defect, evaluated by adaptive quadrature over
/// [-j - 8 sigma, j + 8 sigma]. Should be <= 1e-8 for any sigma.
double povm_completeness_check(const GaussianMeasurement& meas);

}  // namespace spintop
