#include "spintop/trajectory.hpp"

#include <atomic>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "spintop/observables.hpp"

namespace spintop {

namespace {

// Compensated (Kahan) mean so aggregation order never matters at the
// reproducibility level we promise.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - c_;
    const double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

SpinState initial_pure_state(const RunConfig& config, RandomStream& rng) {
  if (std::holds_alternative<RandomScs>(config.initial_condition)) {
    // Direction uniform on the sphere: cos(theta) uniform in [-1, 1].
    const double cos_theta = 2.0 * rng.uniform() - 1.0;
    const double phi = 2.0 * std::numbers::pi * rng.uniform();
    return spin_coherent(config.quantum, std::acos(cos_theta), phi);
  }
  if (const auto* fixed = std::get_if<FixedScs>(&config.initial_condition))
    return spin_coherent(config.quantum, fixed->theta, fixed->phi);
  throw std::invalid_argument("run_pure_trajectory: initial condition must be a coherent state");
}

double time_average(const std::vector<double>& series, int burn_in) {
  KahanSum sum;
  for (std::size_t i = burn_in; i < series.size(); ++i) sum.add(series[i]);
  return sum.value() / static_cast<double>(series.size() - burn_in);
}

}  // namespace

void RunConfig::validate() const {
  if (steps < 1) throw std::invalid_argument("RunConfig: steps must be >= 1");
  if (burn_in < 0 || burn_in >= steps)
    throw std::invalid_argument("RunConfig: need 0 <= burn_in < steps");
  if (n_trajectories < 1)
    throw std::invalid_argument("RunConfig: n_trajectories must be >= 1");
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw std::invalid_argument("RunConfig: sigma must be positive and finite");
}

void step_pure(const FloquetPropagator& prop, const GaussianMeasurement& meas,
               SpinState& state, RandomStream& rng, double& outcome) {
  apply(prop, state);
  const int d = state.quantum.dim();
  thread_local std::vector<double> born;
  born.resize(d);
  for (int i = 0; i < d; ++i) born[i] = std::norm(state.amplitudes[i]);
  const int level = rng.sample_discrete(born.data(), d);
  outcome = state.quantum.m_of_index(level) + meas.sigma * rng.gauss_pair().first;
  state = posterior_update(meas, state, outcome);
}

void step_mixed(const FloquetPropagator& prop, const GaussianMeasurement& meas,
                DensityState& rho, RandomStream& rng, double& outcome) {
  apply_density(prop, rho);
  const int d = rho.quantum.dim();
  thread_local std::vector<double> pops;
  pops.resize(d);
  for (int i = 0; i < d; ++i) pops[i] = std::max(0.0, rho.rho(i, i).real());
  const int level = rng.sample_discrete(pops.data(), d);
  outcome = rho.quantum.m_of_index(level) + meas.sigma * rng.gauss_pair().first;
  rho = posterior_update_density(meas, rho, outcome);
}

TrajectoryRecord run_pure_trajectory(const CollectiveOps& ops,
                                     const FloquetPropagator& prop,
                                     const GaussianMeasurement& meas,
                                     const RunConfig& config, int trajectory_index) {
  config.validate();
  RandomStream rng(config.seed, config.grid_index,
                   static_cast<std::uint64_t>(trajectory_index));
  SpinState state = initial_pure_state(config, rng);

  TrajectoryRecord record;
  record.outcomes.resize(config.steps);
  record.series.resize(config.steps);
  for (int step = 0; step < config.steps; ++step) {
    step_pure(prop, meas, state, rng, record.outcomes[step]);
    record.series[step] = mean_qfi(state, ops).mean_qfi;
  }
  record.time_avg = time_average(record.series, config.burn_in);
  return record;
}

TrajectoryRecord run_pure_trajectory(const RunConfig& config, int trajectory_index) {
  const CollectiveOps ops = make_ops(config.quantum);
  const FloquetPropagator prop = build_propagator(ops, config.kt_params);
  const GaussianMeasurement meas(config.quantum, config.sigma);
  return run_pure_trajectory(ops, prop, meas, config, trajectory_index);
}

TrajectoryRecord run_mixed_trajectory(const CollectiveOps& ops,
                                      const FloquetPropagator& prop,
                                      const GaussianMeasurement& meas,
                                      const RunConfig& config, int trajectory_index) {
  config.validate();
  if (!std::holds_alternative<MaximallyMixed>(config.initial_condition))
    throw std::invalid_argument("run_mixed_trajectory: initial condition must be maximally mixed");
  RandomStream rng(config.seed, config.grid_index,
                   static_cast<std::uint64_t>(trajectory_index));
  DensityState rho = maximally_mixed(config.quantum);

  (void)ops;
  TrajectoryRecord record;
  record.outcomes.resize(config.steps);
  record.series.resize(config.steps);
  for (int step = 0; step < config.steps; ++step) {
    step_mixed(prop, meas, rho, rng, record.outcomes[step]);
    record.series[step] = purity(rho);
  }
  record.time_avg = time_average(record.series, config.burn_in);
  return record;
}

TrajectoryRecord run_mixed_trajectory(const RunConfig& config, int trajectory_index) {
  const CollectiveOps ops = make_ops(config.quantum);
  const FloquetPropagator prop = build_propagator(ops, config.kt_params);
  const GaussianMeasurement meas(config.quantum, config.sigma);
  return run_mixed_trajectory(ops, prop, meas, config, trajectory_index);
}

bool SweepResult::all_ok() const {
  for (const auto& row : rows)
    if (!row.ok) return false;
  return true;
}

SweepResult run_sweep(const std::vector<RunConfig>& grid,
                      SweepResult::Observable observable, int threads) {
  if (grid.empty()) throw std::invalid_argument("run_sweep: empty grid");
  if (threads <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    threads = hw > 0 ? static_cast<int>(hw) : 1;
  }

  SweepResult result;
  result.observable = observable;
  result.rows.resize(grid.size());

  // Operator tables depend only on N; share them across grid points.
  std::map<int, CollectiveOps> ops_cache;

  for (std::size_t point = 0; point < grid.size(); ++point) {
    const RunConfig& base = grid[point];
    SweepRow& row = result.rows[point];
    row.n_particles = base.quantum.n_particles;
    row.j = base.quantum.j();
    row.k = base.kt_params.k;
    row.sigma = base.sigma;
    row.sigma_over_sqrt_j = base.sigma / std::sqrt(base.quantum.j());
    row.sigma_over_j = base.sigma / base.quantum.j();
    row.n_trajectories = base.n_trajectories;
    row.steps = base.steps;

    try {
      base.validate();
      RunConfig config = base;
      config.grid_index = point;

      auto it = ops_cache.find(config.quantum.n_particles);
      if (it == ops_cache.end())
        it = ops_cache.emplace(config.quantum.n_particles, make_ops(config.quantum)).first;
      const CollectiveOps& ops = it->second;
      const FloquetPropagator prop = build_propagator(ops, config.kt_params);
      const GaussianMeasurement meas(config.quantum, config.sigma);

      // Per-trajectory results land in fixed slots; the reduction below is
      // sequential, so scheduling cannot affect the output.
      std::vector<double> time_avgs(config.n_trajectories);
      std::vector<std::string> failures(config.n_trajectories);
      std::atomic<int> next{0};
      const int n_workers = std::min(threads, config.n_trajectories);

      auto worker = [&]() {
        for (;;) {
          const int traj = next.fetch_add(1);
          if (traj >= config.n_trajectories) return;
          try {
            const TrajectoryRecord rec =
                observable == SweepResult::Observable::mean_qfi
                    ? run_pure_trajectory(ops, prop, meas, config, traj)
                    : run_mixed_trajectory(ops, prop, meas, config, traj);
            time_avgs[traj] = rec.time_avg;
          } catch (const std::exception& e) {
            failures[traj] = e.what();
          }
        }
      };

      if (n_workers <= 1) {
        worker();
      } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
      }

      for (const auto& failure : failures)
        if (!failure.empty()) throw std::runtime_error("trajectory failed: " + failure);

      KahanSum sum;
      for (double v : time_avgs) sum.add(v);
      const double mean = sum.value() / config.n_trajectories;
      KahanSum sq;
      for (double v : time_avgs) sq.add((v - mean) * (v - mean));
      const double var = config.n_trajectories > 1
                             ? sq.value() / (config.n_trajectories - 1)
                             : 0.0;
      row.mean = mean;
      row.sem = std::sqrt(var / config.n_trajectories);
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
  }
  return result;
}

}  // namespace spintop
