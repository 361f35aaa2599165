#include "spintop/observables.hpp"

#include <cmath>
#include <stdexcept>

#include "spintop/kernels.hpp"

namespace spintop {

namespace {

double casimir(const SpinQuantum& q) { return q.j() * (q.j() + 1.0); }

}  // namespace

Eigen::Vector3d magnetization(const SpinState& state, const CollectiveOps& ops) {
  const int d = state.quantum.dim();
  thread_local Vector re, im;
  re.resize(d);
  im.resize(d);
  for (int i = 0; i < d; ++i) {
    re[i] = state.amplitudes[i].real();
    im[i] = state.amplitudes[i].imag();
  }
  // <J_+> = sum C^+_i conj(c_{i-1}) c_i; J_x = Re, J_y = Im.
  const Complex jplus =
      kernels::ladder_expect(re.data(), im.data(), ops.ladder_plus.data(), d);
  const auto mom = kernels::weighted_moments(re.data(), im.data(), ops.jz.data(), d);
  const double inv_p = 1.0 / mom.p;  // tolerate norm drift
  return {jplus.real() * inv_p, jplus.imag() * inv_p, mom.w1 * inv_p};
}

Eigen::Vector3d magnetization_density(const DensityState& rho,
                                      const CollectiveOps& ops) {
  const int d = rho.quantum.dim();
  Complex jplus = 0.0;
  double jz = 0.0, trace = 0.0;
  for (int i = 0; i < d; ++i) {
    if (i >= 1) jplus += ops.ladder_plus[i] * rho.rho(i, i - 1);
    jz += ops.jz[i] * rho.rho(i, i).real();
    trace += rho.rho(i, i).real();
  }
  // tr(rho J_+) = sum_i C^+_i rho(i, i-1) on the descending layout.
  const double inv_t = 1.0 / trace;
  return {jplus.real() * inv_t, jplus.imag() * inv_t, jz * inv_t};
}

double qfi_axis(const SpinState& state, const CollectiveOps& ops, Axis axis) {
  const CVector& c = state.amplitudes;
  double first = 0.0, second = 0.0;
  switch (axis) {
    case Axis::z: {
      const int d = state.quantum.dim();
      for (int i = 0; i < d; ++i) {
        const double p = std::norm(c[i]);
        first += ops.jz[i] * p;
        second += ops.jz[i] * ops.jz[i] * p;
      }
      break;
    }
    case Axis::x: {
      const CVector jc = ops.jx * c;
      first = c.dot(jc).real();
      second = jc.squaredNorm();
      break;
    }
    case Axis::y: {
      const CVector jc = ops.jy * c;
      first = c.dot(jc).real();
      second = jc.squaredNorm();
      break;
    }
  }
  return 4.0 * (second - first * first);
}

QfiSummary mean_qfi(const SpinState& state, const CollectiveOps& ops) {
  const Eigen::Vector3d mag = magnetization(state, ops);
  QfiSummary out;
  out.mag_len_sq = mag.squaredNorm();
  out.mean_qfi = 4.0 / 3.0 * (casimir(state.quantum) - out.mag_len_sq);
  return out;
}

QfiSummary mean_qfi_density(const DensityState& rho, const CollectiveOps& ops) {
  const Eigen::Vector3d mag = magnetization_density(rho, ops);
  QfiSummary out;
  out.mag_len_sq = mag.squaredNorm();
  out.mean_qfi = 4.0 / 3.0 * (casimir(rho.quantum) - out.mag_len_sq);
  return out;
}

QfiSummary mean_qfi_per_axis(const SpinState& state, const CollectiveOps& ops) {
  QfiSummary out = mean_qfi(state, ops);
  out.per_axis = {{qfi_axis(state, ops, Axis::x), qfi_axis(state, ops, Axis::y),
                   qfi_axis(state, ops, Axis::z)}};
  return out;
}

double purity(const DensityState& rho) {
  // tr(rho^2) = ||rho||_F^2 for Hermitian rho.
  return rho.rho.squaredNorm();
}

ReferenceValues reference_values(const SpinQuantum& quantum, double r) {
  if (!std::isfinite(r))
    throw std::invalid_argument("reference_values: r must be finite");
  const double j = quantum.j();
  ReferenceValues v;
  v.scs = 4.0 / 3.0 * j;
  v.squeezed = 4.0 / 3.0 * j * std::cosh(r);
  v.haar = 4.0 / 3.0 * (j * j + 0.5 * j);
  v.dicke_avg = 8.0 / 9.0 * (j * j + j);
  return v;
}

}  // namespace spintop
