#pragma once

#include "spintop/rng.hpp"
#include "spintop/types.hpp"

namespace spintop {

/// Dense Dicke-basis representations of the collective spin operators for a
/// fixed particle number, plus the eigendecompositions of J_x and J_y needed
/// for spectral exponentiation. Immutable after construction; safe to share
/// across threads.
struct CollectiveOps {
  SpinQuantum quantum;

  Vector jz;        // diagonal of J_z, descending m
  CMatrix jx;       // Hermitian tridiagonal
  CMatrix jy;
  Vector ladder_plus;   // ladder_plus[i] = C^+ at m = m_of_index(i), i.e.
                        // <i-1| J_+ |i> on the descending layout (entry 0 is 0)
  Vector jx_eigenvalues;
  CMatrix jx_eigenvectors;
  Vector jy_eigenvalues;
  CMatrix jy_eigenvectors;
};

/// Build the operator tables. Eigendecompositions are computed once; J_y is
/// obtained from J_x by the exact z-rotation by pi/2.
CollectiveOps make_ops(const SpinQuantum& quantum);

/// Pure symmetric state: complex amplitudes over the Dicke basis,
/// descending-m indexing. Normalized to 1 after every public operation.
struct SpinState {
  SpinQuantum quantum;
  CVector amplitudes;

  double norm() const { return amplitudes.norm(); }
};

/// Mixed symmetric state: Hermitian unit-trace density matrix.
struct DensityState {
  SpinQuantum quantum;
  CMatrix rho;
};

/// Spin coherent state |theta, phi>: all spins along (theta, phi).
/// Amplitudes follow the binomial profile; evaluated in log space so large N
/// never underflows.
SpinState spin_coherent(const SpinQuantum& quantum, double theta, double phi);

/// Dicke basis state |j, m>. m must lie on the lattice {-j, ..., j}.
SpinState dicke_state(const SpinQuantum& quantum, double m);

/// Haar-random state of the symmetric subspace: i.i.d. standard complex
/// Gaussian amplitudes, normalized.
SpinState haar_random_state(const SpinQuantum& quantum, RandomStream& rng);

/// rho = I/d.
DensityState maximally_mixed(const SpinQuantum& quantum);

/// rho = |psi><psi|.
DensityState pure_density(const SpinState& state);

}  // namespace spintop
