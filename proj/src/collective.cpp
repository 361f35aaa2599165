#include "spintop/collective.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace spintop {

CollectiveOps make_ops(const SpinQuantum& quantum) {
  const int d = quantum.dim();
  const double j = quantum.j();

  CollectiveOps ops;
  ops.quantum = quantum;
  ops.jz.resize(d);
  for (int i = 0; i < d; ++i) ops.jz[i] = quantum.m_of_index(i);

  // C^+_m = sqrt((j - m)(j + m + 1)); on the descending layout J_+ couples
  // index i to i-1, so store the coefficient at the source index i.
  ops.ladder_plus = Vector::Zero(d);
  for (int i = 1; i < d; ++i) {
    const double m = quantum.m_of_index(i);
    ops.ladder_plus[i] = std::sqrt((j - m) * (j + m + 1.0));
  }

  ops.jx = CMatrix::Zero(d, d);
  ops.jy = CMatrix::Zero(d, d);
  for (int i = 1; i < d; ++i) {
    const double half_c = 0.5 * ops.ladder_plus[i];
    ops.jx(i - 1, i) = half_c;
    ops.jx(i, i - 1) = half_c;
    ops.jy(i - 1, i) = Complex(0.0, -half_c);
    ops.jy(i, i - 1) = Complex(0.0, half_c);
  }

  // J_x is real symmetric tridiagonal; solve it once.
  Matrix jx_real = ops.jx.real();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(jx_real);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("make_ops: J_x eigendecomposition failed");
  ops.jx_eigenvalues = solver.eigenvalues();
  ops.jx_eigenvectors = solver.eigenvectors().cast<Complex>();

  // J_y = R J_x R^dag with R = exp(-i pi/2 J_z), a diagonal phase, so its
  // eigenpairs follow from J_x exactly.
  CVector phases(d);
  for (int i = 0; i < d; ++i) {
    const double angle = -0.5 * std::numbers::pi * ops.jz[i];
    phases[i] = Complex(std::cos(angle), std::sin(angle));
  }
  ops.jy_eigenvalues = ops.jx_eigenvalues;
  ops.jy_eigenvectors = phases.asDiagonal() * ops.jx_eigenvectors;

  return ops;
}

SpinState spin_coherent(const SpinQuantum& quantum, double theta, double phi) {
  const int d = quantum.dim();
  const double j = quantum.j();
  SpinState state{quantum, CVector::Zero(d)};

  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  if (std::abs(s) < 1e-300) {
    state.amplitudes[0] = 1.0;
    return state;
  }
  if (std::abs(c) < 1e-300) {
    state.amplitudes[d - 1] = 1.0;
    return state;
  }

  const double log_c = std::log(std::abs(c));
  const double log_s = std::log(std::abs(s));
  const double sign_c = c < 0.0 ? -1.0 : 1.0;
  const double sign_s = s < 0.0 ? -1.0 : 1.0;

  Vector log_mag(d);
  double max_log = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < d; ++i) {
    const double m = quantum.m_of_index(i);
    const double log_binom = 0.5 * (std::lgamma(2.0 * j + 1.0) -
                                    std::lgamma(j - m + 1.0) -
                                    std::lgamma(j + m + 1.0));
    log_mag[i] = log_binom + (j + m) * log_c + (j - m) * log_s;
    max_log = std::max(max_log, log_mag[i]);
  }
  for (int i = 0; i < d; ++i) {
    const double m = quantum.m_of_index(i);
    // j+m and j-m are integers; track sign parity without pow.
    const long up = std::lround(j + m), down = std::lround(j - m);
    double sign = 1.0;
    if (sign_c < 0.0 && (up % 2 != 0)) sign = -sign;
    if (sign_s < 0.0 && (down % 2 != 0)) sign = -sign;
    const double mag = sign * std::exp(log_mag[i] - max_log);
    const double angle = -m * phi;
    state.amplitudes[i] = mag * Complex(std::cos(angle), std::sin(angle));
  }
  state.amplitudes /= state.amplitudes.norm();
  return state;
}

SpinState dicke_state(const SpinQuantum& quantum, double m) {
  SpinState state{quantum, CVector::Zero(quantum.dim())};
  state.amplitudes[quantum.index_of_m(m)] = 1.0;
  return state;
}

SpinState haar_random_state(const SpinQuantum& quantum, RandomStream& rng) {
  const int d = quantum.dim();
  SpinState state{quantum, CVector(d)};
  for (int i = 0; i < d; ++i) {
    const auto [re, im] = rng.gauss_pair();
    state.amplitudes[i] = Complex(re, im);
  }
  state.amplitudes /= state.amplitudes.norm();
  return state;
}

DensityState maximally_mixed(const SpinQuantum& quantum) {
  const int d = quantum.dim();
  return {quantum, CMatrix::Identity(d, d) / static_cast<double>(d)};
}

DensityState pure_density(const SpinState& state) {
  return {state.quantum, state.amplitudes * state.amplitudes.adjoint()};
}

}  // namespace spintop
