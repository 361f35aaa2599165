#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace spintop {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;

/// Symmetric-sector bookkeeping for an ensemble of N spin-1/2 particles:
/// total spin j = N/2, Hilbert dimension d = N + 1 = 2j + 1.
struct SpinQuantum {
  int n_particles = 0;

  SpinQuantum() = default;
  explicit SpinQuantum(int n) : n_particles(n) {
    if (n < 1) throw std::invalid_argument("SpinQuantum: particle count must be >= 1");
  }

  double j() const { return 0.5 * n_particles; }
  int dim() const { return n_particles + 1; }

  // Basis convention, fixed project-wide: amplitudes are indexed by the
  // magnetic quantum number in descending order, m = +j, j-1, ..., -j,
  // so index 0 is the fully stretched (north-pole) state.
  double m_of_index(int i) const { return j() - i; }
  int index_of_m(double m) const {
    const int i = static_cast<int>(std::lround(j() - m));
    if (i < 0 || i >= dim() || std::abs(m_of_index(i) - m) > 1e-9)
      throw std::invalid_argument("SpinQuantum: m outside {-j,...,j}");
    return i;
  }

  bool operator==(const SpinQuantum&) const = default;
};

}  // namespace spintop
