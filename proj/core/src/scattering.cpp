#include "boltzlab/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace boltzlab {

DistributionFunction scattering_increment(const SolutionTrajectory& traj,
                                          const CollisionKernel& kernel, std::size_t from,
                                          std::size_t to, Interpolation interp) {
  if (traj.snapshots.empty()) throw std::invalid_argument("scattering: empty trajectory");
  if (to >= traj.snapshots.size() || from > to) {
    throw std::invalid_argument("scattering: index range outside the trajectory");
  }
  DistributionFunction sum(traj.snapshots.front().grid());
  const auto w = trapezoid_weights(from, to, traj.dt);
  for (std::size_t k = from; k <= to; ++k) {
    if (w[k] == 0.0) continue;
    const auto q = collision_operator(traj.snapshots[k], kernel);
    sum.axpy(w[k], adjoint_stream(q, traj.time(k), interp));
  }
  return sum;
}

DistributionFunction scattering_state(const SolutionTrajectory& traj, const CollisionKernel& kernel,
                                      Interpolation interp) {
  if (!traj.converged) {
    throw std::invalid_argument("scattering_state: trajectory did not converge");
  }
  DistributionFunction f_plus = traj.snapshots.front();
  f_plus += scattering_increment(traj, kernel, 0, traj.snapshots.size() - 1, interp);
  f_plus.set_nonnegative(false);
  return f_plus;
}

NormTrace scattering_defect(const SolutionTrajectory& traj, const DistributionFunction& f_plus,
                            const Rational& inv_a, Interpolation interp) {
  NormTrace trace;
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
    trace.times.push_back(traj.time(k));
    trace.values.push_back(
        lebesgue_norm_a(adjoint_stream(traj.snapshots[k], traj.time(k), interp) - f_plus, inv_a));
  }
  return trace;
}

WaveResult wave_operator(const DistributionFunction& f_plus, const CollisionKernel& kernel,
                         const SolverConfig& config) {
  config.validate(f_plus.grid().dim());
  const auto steps = static_cast<std::size_t>(config.steps());
  std::vector<DistributionFunction> free;
  for (std::size_t k = 0; k <= steps; ++k) {
    free.push_back(free_stream(f_plus, static_cast<double>(k) * config.dt, config.interpolation));
  }
  const double scale = lebesgue_norm_a(f_plus, config.inv_a);

  WaveResult result{DistributionFunction(f_plus.grid()), false, 0, {}, {}};
  std::vector<DistributionFunction> current = free;
  for (int n = 0; n < config.max_iters; ++n) {
    std::vector<DistributionFunction> q;
    for (const auto& s : current) q.push_back(collision_operator(s, kernel));
    std::vector<DistributionFunction> next = free;
    for (std::size_t k = 0; k < steps; ++k) {
      const auto w = trapezoid_weights(k, steps, config.dt);
      for (std::size_t j = k; j <= steps; ++j) {
        const double shift = (static_cast<double>(k) - static_cast<double>(j)) * config.dt;
        next[k].axpy(-w[j], free_stream(q[j], shift, config.interpolation));
      }
      next[k].set_nonnegative(false);
    }
    double delta = 0.0;
    for (std::size_t k = 0; k <= steps; ++k) {
      delta = std::max(delta, lebesgue_norm_a(next[k] - current[k], config.inv_a));
    }
    result.deltas.push_back(delta);
    current = std::move(next);
    result.iterations = n + 1;
    if (!std::isfinite(delta)) break;
    if (delta <= config.picard_tol * scale) {
      result.converged = true;
      break;
    }
  }
  result.f0 = current.front();
  result.trajectory.dt = config.dt;
  result.trajectory.snapshots = std::move(current);
  result.trajectory.iterate_deltas = result.deltas;
  result.trajectory.converged = result.converged;
  compute_traces(result.trajectory, config);
  return result;
}

ScatterResult scatter_adaptive(const DistributionFunction& f0, const CollisionKernel& kernel,
                               const SolverConfig& config, double t_inf_max) {
  if (!(t_inf_max >= config.horizon)) {
    throw std::invalid_argument("scatter: t_inf_max must be at least the horizon T");
  }
  const double scale = lebesgue_norm_a(f0, config.inv_a);
  SolverConfig run_config = config;
  while (true) {
    const int steps = run_config.steps();
    if (steps % 4 != 0) throw std::invalid_argument("scatter: T/dt must be a multiple of 4");
    auto run = picard_solve(f0, kernel, run_config);
    ScatterResult out{std::move(run), DistributionFunction(f0.grid()), {}, run_config.horizon, 0.0,
                      false};
    if (!out.run.converged) return out;
    const auto& traj = out.run.trajectory;
    out.f_plus = scattering_state(traj, kernel, run_config.interpolation);
    out.defect = scattering_defect(traj, out.f_plus, run_config.inv_a, run_config.interpolation);
    const auto last = static_cast<std::size_t>(steps);
    out.last_quarter_increment = lebesgue_norm_a(
        scattering_increment(traj, kernel, 3 * last / 4, last, run_config.interpolation),
        run_config.inv_a);
    out.plateau = out.last_quarter_increment <= config.picard_tol * scale;
    if (out.plateau || 2.0 * run_config.horizon > t_inf_max) return out;
    run_config.horizon *= 2.0;
  }
}

}  // namespace boltzlab
