#pragma once

#include <string>
#include <vector>

#include "boltzlab/collision.hpp"
#include "boltzlab/exponents.hpp"
#include "boltzlab/phase_grid.hpp"
#include "boltzlab/transport.hpp"

namespace boltzlab {

struct SolverConfig {
  double horizon = 1.0;
  double dt = 1.0 / 32.0;
  /// Stop when sup_k ||f^{n+1}(t_k) - f^n(t_k)||_{L^a} <= picard_tol * ||f0||_{L^a}.
  double picard_tol = 1e-10;
  int max_iters = 40;
  ExponentTriplet norm_triplet{Rational(3, 8), Rational(5, 16), Rational(11, 16)};
  Rational inv_a{1, 2};
  Interpolation interpolation = Interpolation::cubic;

  /// Throws std::invalid_argument: dt must divide the horizon, the triplet
  /// must be KT-admissible and non-endpoint in `dim` with HM(p, r) = a.
  void validate(int dim) const;
  /// Number of steps horizon / dt.
  int steps() const;
};

struct SolutionTrajectory {
  double dt = 0.0;
  std::vector<DistributionFunction> snapshots;  ///< at t_k = k dt, k = 0..K
  NormTrace norm_a;                             ///< ||f(t)||_{L^a_{x,v}}
  NormTrace norm_rp;                            ///< ||f(t)||_{L^r_x L^p_v}
  std::vector<double> iterate_deltas;
  bool converged = false;

  double time(std::size_t k) const { return static_cast<double>(k) * dt; }
};

/// Fills the norm traces of a trajectory from its snapshots.
void compute_traces(SolutionTrajectory& traj, const SolverConfig& config);

/// ||f||_{L^q_t L^r_x L^p_v} of a trajectory.
double strichartz_norm(const SolutionTrajectory& traj, const SolverConfig& config);

/// Trapezoid weights of the integral over [t_from, t_to] on the lattice.
std::vector<double> trapezoid_weights(std::size_t from, std::size_t to, double dt);

/// Sf(t_k) = U(t_k) f0 + sum_{j <= k} w_j U(t_k - t_j) Q(f(t_j), f(t_j)).
SolutionTrajectory duhamel_apply(const SolutionTrajectory& traj, const DistributionFunction& f0,
                                 const CollisionKernel& kernel, const SolverConfig& config);

struct PicardResult {
  SolutionTrajectory trajectory;
  bool converged = false;
  int iterations = 0;
  std::vector<double> deltas;              ///< delta_n = sup_k ||f^{n+1} - f^n||_{L^a}
  std::vector<double> contraction_ratios;  ///< delta_{n+1} / delta_n
};

/// Picard iteration from f^0(t) = U(t) f0. Non-convergence is reported, not thrown.
PicardResult picard_solve(const DistributionFunction& f0, const CollisionKernel& kernel,
                          const SolverConfig& config);

/// Empirical constants and fits from a family of runs.
struct EstimateReport {
  std::string kind;
  std::vector<double> parameters;  ///< amplitudes or horizons
  std::vector<double> data_norms;  ///< ||f0||_{L^a} per run
  std::vector<double> measured;    ///< per run: solution norm, ratio, ...
  std::vector<bool> converged;
  double c1 = 0.0;
  double c2 = 0.0;
  double fit_residual = 0.0;  ///< max relative residual over the fitted runs
  double largest_convergent_amplitude = 0.0;
  double fitted_exponent = 0.0;
  double target_exponent = 0.0;
};

/// Runs amplitude * shape for every amplitude and fits
/// ||f||_{L^q L^r L^p} = C1 ||f0||_{L^a} + C2 ||f||^2 (no intercept).
/// The residual is taken over the smaller half of the nonzero amplitudes.
/// Throws if fewer than two distinct nonzero amplitudes are given.
EstimateReport smallness_study(const DistributionFunction& shape, const CollisionKernel& kernel,
                               const SolverConfig& config, const std::vector<double>& amplitudes);

/// Data family for the horizon study: a Gaussian with the given base-scale
/// geometry, replicated at horizon T by the L^a-invariant scaling
/// f_T(x, v) = T^{-N/a} f_1(x / T, v) on a torus of period T * length.
struct ScaledGaussian {
  double length = 8.0;
  int n_x = 16;
  double v_max = 4.0;
  int n_v = 16;
  double sigma_x = 1.0;
  double sigma_v = 1.0;
  double amplitude = 1e-2;
  int steps = 16;  ///< time steps per horizon
};

/// Measures rho(T) = ||W||_{L^q_T L^r L^p} / ||f||^2_{L^q_T L^r L^p}, W = f - U(t) f0,
/// over the horizons and fits rho ~ T^beta by log-log least squares.
/// Requires -N < gamma < 2 - N; the norm triplet is the subcritical family
/// member with alpha at the middle of its range.
EstimateReport tbeta_study(int dim, const Rational& gamma, const ScaledGaussian& data,
                           const std::vector<double>& horizons, const SolverConfig& base,
                           int angular_nodes = 16);

struct LipschitzResult {
  double ratio = 0.0;
  bool degenerate = false;  ///< f0 == g0: 0/0 reported as 0
};

/// ||f - g||_{L^q L^r L^p} / ||f0 - g0||_{L^a}. Throws std::runtime_error if
/// either solve fails to converge.
LipschitzResult lipschitz_check(const DistributionFunction& f0, const DistributionFunction& g0,
                                const CollisionKernel& kernel, const SolverConfig& config);

}  // namespace boltzlab
