#pragma once

#include "spintop/collective.hpp"
#include "spintop/types.hpp"

namespace spintop {

/// Parameters of the kicked-top Floquet map: per-axis rotation angles and
/// twisting strengths. The scalar chaoticity knob k sets the default
/// twisting ratios (0.85 k, 0.9 k, k); the default angles (1.7, 1.0, 0.8)
/// make the map regular near k = 0 and fully chaotic for k >~ 2.5.
struct KickedTopParams {
  double alpha_x = 1.7;
  double alpha_y = 1.0;
  double alpha_z = 0.8;
  double twist_x = 0.0;
  double twist_y = 0.0;
  double twist_z = 0.0;
  double k = 0.0;  // scalar knob the defaults derive from

  static KickedTopParams from_k(double k) {
    KickedTopParams p;
    p.k = k;
    p.twist_x = 0.85 * k;
    p.twist_y = 0.9 * k;
    p.twist_z = k;
    return p;
  }
};

/// One-period Floquet unitary U = U_z U_y U_x with
/// U_mu = exp(-i (alpha_mu J_mu + twist_mu/(2j) J_mu^2)), built spectrally
/// from the precomputed J_mu eigendecompositions. Immutable after build;
/// shared read-only by trajectory workers. The split row-major copies feed
/// the SIMD mat-vec kernel.
struct FloquetPropagator {
  SpinQuantum quantum;
  KickedTopParams params;
  CMatrix matrix;

  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  RowMajor split_re;
  RowMajor split_im;
};

FloquetPropagator build_propagator(const CollectiveOps& ops,
                                   const KickedTopParams& params);

/// One Floquet step, |psi> -> U |psi>. Norm preserved to 1e-10.
void apply(const FloquetPropagator& prop, SpinState& state);

/// One Floquet step on a density matrix, rho -> U rho U^dag.
void apply_density(const FloquetPropagator& prop, DensityState& rho);

}  // namespace spintop
