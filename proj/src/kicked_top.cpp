#include "spintop/kicked_top.hpp"

#include <cmath>
#include <stdexcept>

#include "spintop/kernels.hpp"

namespace spintop {

namespace {

CVector axis_phases(const Vector& eigenvalues, double alpha, double twist,
                    double j) {
  CVector phases(eigenvalues.size());
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    const double lambda = eigenvalues[i];
    const double angle = -(alpha * lambda + 0.5 * twist / j * lambda * lambda);
    phases[i] = Complex(std::cos(angle), std::sin(angle));
  }
  return phases;
}

}  // namespace

FloquetPropagator build_propagator(const CollectiveOps& ops,
                                   const KickedTopParams& params) {
  const SpinQuantum quantum = ops.quantum;
  const double j = quantum.j();

  // U_mu = V_mu diag(exp(-i(alpha lambda + twist/(2j) lambda^2))) V_mu^dag;
  // U_z is directly diagonal in the Dicke basis.
  const CVector px = axis_phases(ops.jx_eigenvalues, params.alpha_x, params.twist_x, j);
  const CVector py = axis_phases(ops.jy_eigenvalues, params.alpha_y, params.twist_y, j);
  const CVector pz = axis_phases(ops.jz, params.alpha_z, params.twist_z, j);

  CMatrix ux = ops.jx_eigenvectors * px.asDiagonal() * ops.jx_eigenvectors.adjoint();
  CMatrix uy = ops.jy_eigenvectors * py.asDiagonal() * ops.jy_eigenvectors.adjoint();

  FloquetPropagator prop;
  prop.quantum = quantum;
  prop.params = params;
  prop.matrix.noalias() = uy * ux;
  prop.matrix = pz.asDiagonal() * prop.matrix;  // row scaling by U_z

  prop.split_re = prop.matrix.real();
  prop.split_im = prop.matrix.imag();
  return prop;
}

void apply(const FloquetPropagator& prop, SpinState& state) {
  const int d = prop.quantum.dim();
  if (state.quantum.dim() != d)
    throw std::invalid_argument("apply: state/propagator dimension mismatch");

  thread_local Vector xr, xi, yr, yi;
  xr.resize(d); xi.resize(d); yr.resize(d); yi.resize(d);
  for (int i = 0; i < d; ++i) {
    xr[i] = state.amplitudes[i].real();
    xi[i] = state.amplitudes[i].imag();
  }
  kernels::cmatvec(prop.split_re.data(), prop.split_im.data(), xr.data(),
                   xi.data(), yr.data(), yi.data(), d);
  for (int i = 0; i < d; ++i) state.amplitudes[i] = Complex(yr[i], yi[i]);
}

void apply_density(const FloquetPropagator& prop, DensityState& rho) {
  if (rho.quantum.dim() != prop.quantum.dim())
    throw std::invalid_argument("apply_density: dimension mismatch");
  CMatrix tmp;
  tmp.noalias() = prop.matrix * rho.rho;
  rho.rho.noalias() = tmp * prop.matrix.adjoint();
}

}  // namespace spintop
