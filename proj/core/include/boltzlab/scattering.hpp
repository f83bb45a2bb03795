#pragma once

#include <vector>

#include "boltzlab/mild_solver.hpp"

namespace boltzlab {

/// f+ = f0 + sum_k w_k U(-t_k) Q(f(t_k), f(t_k)), trapezoid over the whole
/// trajectory. Throws std::invalid_argument if the trajectory did not converge.
DistributionFunction scattering_state(const SolutionTrajectory& traj, const CollisionKernel& kernel,
                                      Interpolation interp = Interpolation::cubic);

/// Same sum restricted to lattice times in [t_from, t_to] (indices), without f0.
DistributionFunction scattering_increment(const SolutionTrajectory& traj,
                                          const CollisionKernel& kernel, std::size_t from,
                                          std::size_t to,
                                          Interpolation interp = Interpolation::cubic);

/// ||U(-t_k) f(t_k) - f+||_{L^a} over the lattice.
NormTrace scattering_defect(const SolutionTrajectory& traj, const DistributionFunction& f_plus,
                            const Rational& inv_a, Interpolation interp = Interpolation::cubic);

struct WaveResult {
  DistributionFunction f0;
  bool converged = false;
  int iterations = 0;
  std::vector<double> deltas;
  SolutionTrajectory trajectory;
};

/// Backward Duhamel problem g(t) = U(t) f+ - int_t^T U(t - s) Q(g, g)(s) ds on
/// the lattice of `config`, iterated from g^0(t) = U(t) f+. Returns g(0).
WaveResult wave_operator(const DistributionFunction& f_plus, const CollisionKernel& kernel,
                         const SolverConfig& config);

struct ScatterResult {
  PicardResult run;
  DistributionFunction f_plus;
  NormTrace defect;
  double t_inf = 0.0;
  double last_quarter_increment = 0.0;  ///< ||increment over [3T/4, T]||_{L^a}
  bool plateau = false;                 ///< increment <= picard_tol * ||f0||_{L^a}
};

/// Solves on [0, T] starting from config.horizon, doubling T until the last
/// quarter-horizon increment of the scattering integral falls below
/// picard_tol * ||f0||_{L^a} or T would exceed t_inf_max.
ScatterResult scatter_adaptive(const DistributionFunction& f0, const CollisionKernel& kernel,
                               const SolverConfig& config, double t_inf_max);

}  // namespace boltzlab
