#include "spintop/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace spintop {

ScalingFit fit_power_law(const std::vector<ScalingPoint>& points) {
  if (points.size() < 3)
    throw std::invalid_argument("fit_power_law: need at least 3 points");
  std::set<double> sizes;
  for (const auto& p : points) {
    if (!(p.n > 0.0)) throw std::invalid_argument("fit_power_law: sizes must be positive");
    if (!(p.mean > 0.0)) throw std::invalid_argument("fit_power_law: means must be positive");
    sizes.insert(p.n);
  }
  if (sizes.size() < 2) throw std::invalid_argument("fit_power_law: sizes must be distinct");

  const bool weighted =
      std::all_of(points.begin(), points.end(), [](const ScalingPoint& p) { return p.sem > 0.0; });

  // log mean = log c + beta log N, weights = inverse delta-method variance.
  double sw = 0.0, swx = 0.0, swy = 0.0, swxx = 0.0, swxy = 0.0;
  for (const auto& p : points) {
    const double x = std::log(p.n);
    const double y = std::log(p.mean);
    const double w = weighted ? 1.0 / ((p.sem / p.mean) * (p.sem / p.mean)) : 1.0;
    sw += w;
    swx += w * x;
    swy += w * y;
    swxx += w * x * x;
    swxy += w * x * y;
  }
  const double det = sw * swxx - swx * swx;
  if (!(std::abs(det) > 0.0))
    throw std::invalid_argument("fit_power_law: singular design");

  const double intercept = (swxx * swy - swx * swxy) / det;
  const double slope = (sw * swxy - swx * swy) / det;

  ScalingFit fit;
  fit.beta = slope;
  fit.c = std::exp(intercept);
  fit.n_points = static_cast<int>(points.size());
  fit.covariance << swxx / det, -swx / det, -swx / det, sw / det;

  double ss_res = 0.0, ss_tot = 0.0;
  const double y_bar = swy / sw;
  for (const auto& p : points) {
    const double x = std::log(p.n);
    const double y = std::log(p.mean);
    const double w = weighted ? 1.0 / ((p.sem / p.mean) * (p.sem / p.mean)) : 1.0;
    const double resid = y - (intercept + slope * x);
    ss_res += w * resid * resid;
    ss_tot += w * (y - y_bar) * (y - y_bar);
  }
  fit.r_squared = ss_tot > 0.0 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0) : 1.0;
  return fit;
}

std::vector<BetaPoint> beta_curve(const SweepResult& sweep) {
  // Group rows by exact (k, sigma/sqrt(j)); rescaled grids are generated
  // from shared literals, so exact comparison is the grouping contract.
  std::map<std::pair<double, double>, std::vector<const SweepRow*>> groups;
  for (const auto& row : sweep.rows)
    groups[{row.k, row.sigma_over_sqrt_j}].push_back(&row);

  std::vector<BetaPoint> out;
  out.reserve(groups.size());
  for (const auto& [key, rows] : groups) {
    BetaPoint point;
    point.k = key.first;
    point.sigma_over_sqrt_j = key.second;
    std::vector<ScalingPoint> pts;
    bool any_failed = false;
    std::set<int> sizes;
    for (const SweepRow* row : rows) {
      if (!row->ok) {
        any_failed = true;
        break;
      }
      pts.push_back({static_cast<double>(row->n_particles), row->mean, row->sem});
      sizes.insert(row->n_particles);
    }
    if (any_failed) {
      point.error = "group contains failed sweep rows";
    } else if (sizes.size() < 3) {
      point.error = "fewer than 3 system sizes at this grid point";
    } else {
      try {
        point.fit = fit_power_law(pts);
        point.ok = true;
      } catch (const std::exception& e) {
        point.error = e.what();
      }
    }
    out.push_back(point);
  }
  return out;
}

}  // namespace spintop
