#include "spintop/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "spintop/numerics/quadrature.hpp"

namespace spintop {

namespace {

// Kraus log-weights for outcome m, maximum exponent subtracted. The
// maximum sits at the lattice level nearest to m (clamped into range), so
// no pass over the vector is needed to find it.
void kraus_weights(const SpinQuantum& q, double sigma, double m,
                   std::vector<double>& w) {
  const int d = q.dim();
  const double j = q.j();
  w.resize(d);
  const double inv = 1.0 / (4.0 * sigma * sigma);
  const double m_near = std::clamp(std::round(j - m), 0.0, static_cast<double>(d - 1));
  const double dz_near = q.m_of_index(static_cast<int>(m_near)) - m;
  const double max_exp = -dz_near * dz_near * inv;
  for (int i = 0; i < d; ++i) {
    const double dz = q.m_of_index(i) - m;
    w[i] = std::exp(-dz * dz * inv - max_exp);
  }
}

}  // namespace

MeasurementOutcome sample_outcome(const GaussianMeasurement& meas,
                                  const SpinState& state, RandomStream& rng) {
  const int d = meas.quantum.dim();
  std::vector<double> born(d);
  for (int i = 0; i < d; ++i) born[i] = std::norm(state.amplitudes[i]);
  const int level = rng.sample_discrete(born.data(), d);
  const double m =
      meas.quantum.m_of_index(level) + meas.sigma * rng.gauss_pair().first;
  return {m, log_outcome_density(meas, state, m)};
}

double log_outcome_density(const GaussianMeasurement& meas,
                           const SpinState& state, double m) {
  const int d = meas.quantum.dim();
  const double inv = 0.5 / (meas.sigma * meas.sigma);
  double max_exp = -std::numeric_limits<double>::infinity();
  std::vector<double> exps(d);
  for (int i = 0; i < d; ++i) {
    const double dz = meas.quantum.m_of_index(i) - m;
    exps[i] = -dz * dz * inv;
    max_exp = std::max(max_exp, exps[i]);
  }
  double acc = 0.0;
  for (int i = 0; i < d; ++i)
    acc += std::norm(state.amplitudes[i]) * std::exp(exps[i] - max_exp);
  return max_exp + std::log(acc) -
         0.5 * std::log(2.0 * std::numbers::pi * meas.sigma * meas.sigma);
}

SpinState posterior_update(const GaussianMeasurement& meas,
                           const SpinState& state, double m) {
  if (!std::isfinite(m))
    throw std::invalid_argument("posterior_update: outcome must be finite");
  const int d = meas.quantum.dim();
  std::vector<double> w;
  kraus_weights(meas.quantum, meas.sigma, m, w);
  SpinState out{meas.quantum, CVector(d)};
  for (int i = 0; i < d; ++i) out.amplitudes[i] = state.amplitudes[i] * w[i];
  const double norm = out.amplitudes.norm();
  if (!(norm > 0.0))
    throw std::runtime_error("posterior_update: outcome annihilates the state");
  out.amplitudes /= norm;
  return out;
}

MeasurementOutcome sample_outcome_density(const GaussianMeasurement& meas,
                                          const DensityState& rho,
                                          RandomStream& rng) {
  const int d = meas.quantum.dim();
  std::vector<double> pops(d);
  for (int i = 0; i < d; ++i) pops[i] = std::max(0.0, rho.rho(i, i).real());
  const int level = rng.sample_discrete(pops.data(), d);
  const double m =
      meas.quantum.m_of_index(level) + meas.sigma * rng.gauss_pair().first;
  // Diagnostic density from the diagonal populations.
  const double inv = 0.5 / (meas.sigma * meas.sigma);
  double max_exp = -std::numeric_limits<double>::infinity();
  std::vector<double> exps(d);
  for (int i = 0; i < d; ++i) {
    const double dz = meas.quantum.m_of_index(i) - m;
    exps[i] = -dz * dz * inv;
    max_exp = std::max(max_exp, exps[i]);
  }
  double acc = 0.0;
  double total = 0.0;
  for (int i = 0; i < d; ++i) {
    acc += pops[i] * std::exp(exps[i] - max_exp);
    total += pops[i];
  }
  const double log_norm =
      max_exp + std::log(acc / total) -
      0.5 * std::log(2.0 * std::numbers::pi * meas.sigma * meas.sigma);
  return {m, log_norm};
}

DensityState posterior_update_density(const GaussianMeasurement& meas,
                                      const DensityState& rho, double m) {
  if (!std::isfinite(m))
    throw std::invalid_argument("posterior_update_density: outcome must be finite");
  const int d = meas.quantum.dim();
  std::vector<double> w;
  kraus_weights(meas.quantum, meas.sigma, m, w);
  DensityState out{meas.quantum, CMatrix(d, d)};
  for (int col = 0; col < d; ++col)
    for (int row = 0; row < d; ++row)
      out.rho(row, col) = rho.rho(row, col) * (w[row] * w[col]);
  const double trace = out.rho.trace().real();
  if (!(trace > 0.0))
    throw std::runtime_error("posterior_update_density: outcome annihilates the state");
  out.rho /= trace;
  return out;
}

double povm_completeness_check(const GaussianMeasurement& meas) {
  const double j = meas.quantum.j();
  const double sigma = meas.sigma;
  const double lo = -j - 8.0 * sigma;
  const double hi = j + 8.0 * sigma;
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * sigma * sigma);
  double worst = 0.0;
  for (int i = 0; i < meas.quantum.dim(); ++i) {
    const double mz = meas.quantum.m_of_index(i);
    const auto density = [&](double m) {
      const double dz = m - mz;
      return norm * std::exp(-0.5 * dz * dz / (sigma * sigma));
    };
    const double integral = numerics::adaptive_simpson(density, lo, hi, 1e-12);
    worst = std::max(worst, std::abs(integral - 1.0));
  }
  return worst;
}

}  // namespace spintop
