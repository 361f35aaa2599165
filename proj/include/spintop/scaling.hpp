#pragma once

#include <vector>

#include "spintop/trajectory.hpp"

namespace spintop {

/// Power-law fit F = c N^beta via weighted least squares of log F on log N.
struct ScalingFit {
  double beta = 0.0;
  double c = 0.0;
  double r_squared = 0.0;
  int n_points = 0;
  Eigen::Matrix2d covariance = Eigen::Matrix2d::Zero();  // (intercept, slope)
};

struct ScalingPoint {
  double n = 0.0;     // system size
  double mean = 0.0;  // ensemble-mean order parameter, must be > 0
  double sem = 0.0;   // standard error; <= 0 anywhere means unweighted fit
};

/// Weights are 1/(sem/mean)^2 (delta-method variance of log mean). Needs
/// >= 3 points with distinct positive sizes and positive means.
ScalingFit fit_power_law(const std::vector<ScalingPoint>& points);

struct BetaPoint {
  double k = 0.0;
  double sigma_over_sqrt_j = 0.0;
  bool ok = false;
  std::string error;
  ScalingFit fit;
};

/// One fit per (k, sigma/sqrt(j)) group of the sweep. Groups are formed by
/// exact value match (grids are generated per N from a shared rescaled grid,
/// so no interpolation is ever involved); groups with fewer than 3 sizes or
/// failed rows are flagged, not fitted.
std::vector<BetaPoint> beta_curve(const SweepResult& sweep);

}  // namespace spintop
