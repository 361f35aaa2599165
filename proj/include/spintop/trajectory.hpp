#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "spintop/collective.hpp"
#include "spintop/kicked_top.hpp"
#include "spintop/measurement.hpp"
#include "spintop/types.hpp"

namespace spintop {

/// Initial condition of a trajectory.
struct RandomScs {};                      // coherent state, direction uniform on the sphere
struct FixedScs { double theta, phi; };   // coherent state along (theta, phi)
struct MaximallyMixed {};                 // rho = I/d (mixed runs)
using InitialCondition = std::variant<RandomScs, FixedScs, MaximallyMixed>;

/// One grid point of the hybrid dynamics: a Floquet step followed by a
/// Gaussian J_z measurement, iterated `steps` times per trajectory and
/// repeated over `n_trajectories` independent measurement records.
struct RunConfig {
  SpinQuantum quantum;
  KickedTopParams kt_params;
  double sigma = 1.0;
  int steps = 40;
  int n_trajectories = 50;
  int burn_in = 0;  // steps excluded from the time average
  std::uint64_t seed = 0;
  std::uint64_t grid_index = 0;  // distinguishes RNG streams across grid points
  InitialCondition initial_condition = RandomScs{};

  void validate() const;
};

/// Per-trajectory time series: outcomes, per-step order parameter (mean QFI
/// after each measurement for pure runs, purity for mixed runs), and the
/// time average over post-burn-in steps.
struct TrajectoryRecord {
  std::vector<double> outcomes;
  std::vector<double> series;
  double time_avg = 0.0;
};

/// Ensemble statistics of one grid point.
struct SweepRow {
  int n_particles = 0;
  double j = 0.0;
  double k = 0.0;
  double sigma = 0.0;
  double sigma_over_sqrt_j = 0.0;
  double sigma_over_j = 0.0;
  double mean = 0.0;  // ensemble mean of per-trajectory time averages
  double sem = 0.0;   // sample std / sqrt(n_trajectories)
  int n_trajectories = 0;
  int steps = 0;
  bool ok = true;
  std::string error;  // failed grid points are marked, never dropped
};

struct SweepResult {
  enum class Observable { mean_qfi, purity };
  Observable observable = Observable::mean_qfi;
  std::vector<SweepRow> rows;
  bool all_ok() const;
};

/// Deterministic given (seed, grid_index, trajectory_index): the per-step
/// map is apply-propagator, sample outcome from the post-unitary state,
/// posterior update, record the mean QFI of the post-measurement state.
TrajectoryRecord run_pure_trajectory(const CollectiveOps& ops,
                                     const FloquetPropagator& prop,
                                     const GaussianMeasurement& meas,
                                     const RunConfig& config, int trajectory_index);

/// Convenience overload that builds the operator tables itself.
TrajectoryRecord run_pure_trajectory(const RunConfig& config, int trajectory_index);

/// Mixed-state version evolving a density matrix and recording purity.
/// initial_condition must be MaximallyMixed (or use the low-level stepper).
TrajectoryRecord run_mixed_trajectory(const CollectiveOps& ops,
                                      const FloquetPropagator& prop,
                                      const GaussianMeasurement& meas,
                                      const RunConfig& config, int trajectory_index);
TrajectoryRecord run_mixed_trajectory(const RunConfig& config, int trajectory_index);

/// Low-level steppers shared by both runners; exposed for consistency tests.
/// Each step consumes exactly three uniforms from the stream (one discrete
/// draw, one Gaussian pair), so pure and mixed evolutions started from the
/// same state and stream produce identical outcome records.
void step_pure(const FloquetPropagator& prop, const GaussianMeasurement& meas,
               SpinState& state, RandomStream& rng, double& outcome);
void step_mixed(const FloquetPropagator& prop, const GaussianMeasurement& meas,
                DensityState& rho, RandomStream& rng, double& outcome);

/// Runs every grid point with n_trajectories independent trajectories and
/// aggregates mean and standard error of the per-trajectory time averages.
/// Work is distributed over `threads` workers (0 = hardware concurrency);
/// results are bitwise independent of the thread count.
SweepResult run_sweep(const std::vector<RunConfig>& grid,
                      SweepResult::Observable observable, int threads = 0);

}  // namespace spintop
