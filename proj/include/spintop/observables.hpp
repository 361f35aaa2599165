#pragma once

#include <array>
#include <optional>

#include "spintop/collective.hpp"
#include "spintop/types.hpp"

namespace spintop {

enum class Axis { x, y, z };

/// Axis-averaged quantum Fisher information of a symmetric pure state,
/// mean_qfi = (4/3) [j(j+1) - |<J>|^2]; bounded between (4/3) j (coherent
/// states) and (4/3) j (j+1) (vanishing magnetization).
struct QfiSummary {
  double mean_qfi = 0.0;
  double mag_len_sq = 0.0;  // |<J>|^2
  std::optional<std::array<double, 3>> per_axis;  // F_Q along x, y, z
};

/// F_Q[J_axis] = 4 (<J_axis^2> - <J_axis>^2).
double qfi_axis(const SpinState& state, const CollectiveOps& ops, Axis axis);

/// First moments <J_x>, <J_y>, <J_z> via O(d) ladder/diagonal contractions.
Eigen::Vector3d magnetization(const SpinState& state, const CollectiveOps& ops);
Eigen::Vector3d magnetization_density(const DensityState& rho, const CollectiveOps& ops);

/// Mean QFI from the reduced first-moment form (never from three variance
/// evaluations; identical by the symmetric-subspace identity and O(d)).
QfiSummary mean_qfi(const SpinState& state, const CollectiveOps& ops);

/// Same reduced formula on tr(rho J_alpha). For mixed states this is a
/// magnetization-length diagnostic, not a variance-based QFI.
QfiSummary mean_qfi_density(const DensityState& rho, const CollectiveOps& ops);

/// mean_qfi with the three per-axis values filled in (O(d^2); diagnostics).
QfiSummary mean_qfi_per_axis(const SpinState& state, const CollectiveOps& ops);

/// tr(rho^2), in [1/d, 1].
double purity(const DensityState& rho);

/// Closed-form mean-QFI reference values for the standard state families.
struct ReferenceValues {
  double scs = 0.0;        // (4/3) j
  double squeezed = 0.0;   // (4/3) j cosh(r)
  double haar = 0.0;       // (4/3) (j^2 + j/2)
  double dicke_avg = 0.0;  // (8/9) (j^2 + j)
};
ReferenceValues reference_values(const SpinQuantum& quantum, double r = 0.0);

}  // namespace spintop
