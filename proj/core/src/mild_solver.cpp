#include "boltzlab/mild_solver.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace boltzlab {

namespace {

std::vector<DistributionFunction> free_trajectory(const DistributionFunction& f0,
                                                  const SolverConfig& config) {
  std::vector<DistributionFunction> out;
  const int steps = config.steps();
  out.reserve(static_cast<std::size_t>(steps) + 1);
  for (int k = 0; k <= steps; ++k) {
    out.push_back(free_stream(f0, k * config.dt, config.interpolation));
  }
  return out;
}

// Sf(t_k) = free[k] + sum_{j <= k} w_j U(t_k - t_j) q[j].
std::vector<DistributionFunction> duhamel_core(const std::vector<DistributionFunction>& free,
                                               const std::vector<DistributionFunction>& q,
                                               const SolverConfig& config) {
  std::vector<DistributionFunction> out = free;
  for (std::size_t k = 1; k < out.size(); ++k) {
    const auto w = trapezoid_weights(0, k, config.dt);
    for (std::size_t j = 0; j <= k; ++j) {
      out[k].axpy(w[j], free_stream(q[j], static_cast<double>(k - j) * config.dt,
                                    config.interpolation));
    }
    out[k].set_nonnegative(false);
  }
  return out;
}

std::vector<DistributionFunction> collisions(const std::vector<DistributionFunction>& snaps,
                                             const CollisionKernel& kernel) {
  std::vector<DistributionFunction> q;
  q.reserve(snaps.size());
  for (const auto& s : snaps) q.push_back(collision_operator(s, kernel));
  return q;
}

double sup_distance(const std::vector<DistributionFunction>& a,
                    const std::vector<DistributionFunction>& b, const Rational& inv_a) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, lebesgue_norm_a(a[k] - b[k], inv_a));
  return d;
}

NormTrace trace_of(const std::vector<DistributionFunction>& snaps, double dt, const Rational& inv_r,
                   const Rational& inv_p) {
  NormTrace t;
  for (std::size_t k = 0; k < snaps.size(); ++k) {
    t.times.push_back(static_cast<double>(k) * dt);
    t.values.push_back(mixed_norm_xv(snaps[k], inv_r, inv_p));
  }
  return t;
}

}  // namespace

int SolverConfig::steps() const { return static_cast<int>(std::lround(horizon / dt)); }

void SolverConfig::validate(int dim) const {
  if (!(horizon > 0.0) || !(dt > 0.0)) throw std::invalid_argument("solver: T and dt must be positive");
  const double ratio = horizon / dt;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio)) {
    throw std::invalid_argument("solver: dt must divide T");
  }
  if (!(picard_tol > 0.0)) throw std::invalid_argument("solver: picard_tol must be positive");
  if (max_iters < 1) throw std::invalid_argument("solver: max_iters must be at least 1");
  norm_triplet.validate();
  const auto report = kt_admissible(norm_triplet, dim);
  if (!report.admissible) {
    std::string why;
    for (const auto& c : report.violated_conditions) why += " " + c;
    throw std::invalid_argument("solver: norm triplet is not KT-admissible:" + why);
  }
  if (report.is_endpoint) throw std::invalid_argument("solver: endpoint norm triplet rejected");
  if (report.inv_a != inv_a) {
    throw std::invalid_argument("solver: a = " + exponent_string(inv_a) +
                                " differs from HM(p, r) = " + exponent_string(report.inv_a));
  }
}

std::vector<double> trapezoid_weights(std::size_t from, std::size_t to, double dt) {
  std::vector<double> w(to + 1, 0.0);
  if (to <= from) return w;
  for (std::size_t j = from; j <= to; ++j) w[j] = dt;
  w[from] = w[to] = 0.5 * dt;
  return w;
}

void compute_traces(SolutionTrajectory& traj, const SolverConfig& config) {
  traj.norm_a = trace_of(traj.snapshots, traj.dt, config.inv_a, config.inv_a);
  traj.norm_rp = trace_of(traj.snapshots, traj.dt, config.norm_triplet.inv_r,
                          config.norm_triplet.inv_p);
}

double strichartz_norm(const SolutionTrajectory& traj, const SolverConfig& config) {
  NormTrace t = traj.norm_rp;
  if (t.empty()) t = trace_of(traj.snapshots, traj.dt, config.norm_triplet.inv_r,
                              config.norm_triplet.inv_p);
  return time_norm(t, config.norm_triplet.inv_q);
}

SolutionTrajectory duhamel_apply(const SolutionTrajectory& traj, const DistributionFunction& f0,
                                 const CollisionKernel& kernel, const SolverConfig& config) {
  config.validate(f0.grid().dim());
  if (traj.snapshots.size() != static_cast<std::size_t>(config.steps()) + 1 ||
      std::abs(traj.dt - config.dt) > 1e-12 * config.dt) {
    throw std::invalid_argument("duhamel_apply: trajectory is not on the configured time lattice");
  }
  for (const auto& s : traj.snapshots) {
    if (!(s.grid() == f0.grid())) throw std::invalid_argument("duhamel_apply: grid mismatch");
  }
  SolutionTrajectory out;
  out.dt = config.dt;
  out.snapshots = duhamel_core(free_trajectory(f0, config), collisions(traj.snapshots, kernel), config);
  compute_traces(out, config);
  return out;
}

PicardResult picard_solve(const DistributionFunction& f0, const CollisionKernel& kernel,
                          const SolverConfig& config) {
  config.validate(f0.grid().dim());
  const auto free = free_trajectory(f0, config);
  const double scale = lebesgue_norm_a(f0, config.inv_a);

  PicardResult result;
  std::vector<DistributionFunction> current = free;
  for (int n = 0; n < config.max_iters; ++n) {
    auto next = duhamel_core(free, collisions(current, kernel), config);
    const double delta = sup_distance(next, current, config.inv_a);
    if (!result.deltas.empty()) {
      const double prev = result.deltas.back();
      result.contraction_ratios.push_back(prev > 0.0 ? delta / prev : 0.0);
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

  auto& traj = result.trajectory;
  traj.dt = config.dt;
  traj.snapshots = std::move(current);
  traj.iterate_deltas = result.deltas;
  traj.converged = result.converged;
  compute_traces(traj, config);
  return result;
}

EstimateReport smallness_study(const DistributionFunction& shape, const CollisionKernel& kernel,
                               const SolverConfig& config, const std::vector<double>& amplitudes) {
  std::set<double> distinct;
  for (double a : amplitudes) {
    if (a != 0.0) distinct.insert(std::abs(a));
  }
  if (distinct.size() < 2) {
    throw std::invalid_argument("smallness_study: need at least two distinct nonzero amplitudes");
  }

  EstimateReport rep;
  rep.kind = "smallness";
  std::vector<double> xs, ys;
  for (double a : amplitudes) {
    DistributionFunction f0 = a * shape;
    const auto run = picard_solve(f0, kernel, config);
    const double y = lebesgue_norm_a(f0, config.inv_a);
    const double x = strichartz_norm(run.trajectory, config);
    rep.parameters.push_back(a);
    rep.data_norms.push_back(y);
    rep.measured.push_back(x);
    rep.converged.push_back(run.converged);
    const bool geometric =
        run.converged && std::all_of(run.contraction_ratios.begin(), run.contraction_ratios.end(),
                                     [](double r) { return r < 1.0; });
    if (geometric) rep.largest_convergent_amplitude = std::max(rep.largest_convergent_amplitude, std::abs(a));
    if (run.converged) {
      xs.push_back(x);
      ys.push_back(y);
    }
  }

  // Least squares for x = c1 y + c2 x^2 through the origin.
  double syy = 0, syz = 0, szz = 0, sxy = 0, sxz = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double z = xs[i] * xs[i];
    syy += ys[i] * ys[i];
    syz += ys[i] * z;
    szz += z * z;
    sxy += xs[i] * ys[i];
    sxz += xs[i] * z;
  }
  const double det = syy * szz - syz * syz;
  if (!(std::abs(det) > 0.0)) throw std::invalid_argument("smallness_study: degenerate fit");
  rep.c1 = (sxy * szz - sxz * syz) / det;
  rep.c2 = (syy * sxz - syz * sxy) / det;

  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (ys[i] > 0.0) order.push_back(i);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ys[a] < ys[b]; });
  const std::size_t half = std::max<std::size_t>(1, (order.size() + 1) / 2);
  for (std::size_t k = 0; k < half && k < order.size(); ++k) {
    const std::size_t i = order[k];
    const double fit = rep.c1 * ys[i] + rep.c2 * xs[i] * xs[i];
    rep.fit_residual = std::max(rep.fit_residual, std::abs(xs[i] - fit) / xs[i]);
  }
  return rep;
}

EstimateReport tbeta_study(int dim, const Rational& gamma, const ScaledGaussian& data,
                           const std::vector<double>& horizons, const SolverConfig& base,
                           int angular_nodes) {
  const Rational target = beta(gamma, dim);  // validates the range
  if (horizons.size() < 2) throw std::invalid_argument("tbeta_study: need at least two horizons");
  const Rational alpha = (Rational(1, 2) + Rational(dim + 1, 2 * dim)) / 2;
  const auto pair = theorem2_triplets(alpha, gamma, dim);

  SolverConfig config = base;
  config.norm_triplet = pair.primal;
  config.inv_a = pair.inv_a;
  const double inv_a = to_double(pair.inv_a);

  EstimateReport rep;
  rep.kind = "tbeta";
  rep.target_exponent = to_double(target);
  std::vector<double> lx, ly;
  for (double T : horizons) {
    if (!(T > 0.0)) throw std::invalid_argument("tbeta_study: horizons must be positive");
    const PhaseGrid grid(dim, T * data.length, data.n_x, data.v_max, data.n_v);
    const std::vector<double> centre(static_cast<std::size_t>(dim), 0.5 * T * data.length);
    const std::vector<double> v0(static_cast<std::size_t>(dim), 0.0);
    const auto f0 = make_gaussian(grid, centre, v0, data.sigma_x * T, data.sigma_v,
                                  data.amplitude * std::pow(T, -dim * inv_a));
    const auto kernel = make_kernel(grid, to_double(gamma), 1.0, angular_nodes);
    config.horizon = T;
    config.dt = T / data.steps;
    const auto run = picard_solve(f0, kernel, config);

    const auto free = free_trajectory(f0, config);
    std::vector<DistributionFunction> w;
    for (std::size_t k = 0; k < free.size(); ++k) w.push_back(run.trajectory.snapshots[k] - free[k]);
    const auto& t = config.norm_triplet;
    const double nw = time_norm(trace_of(w, config.dt, t.inv_r, t.inv_p), t.inv_q);
    const double nf = strichartz_norm(run.trajectory, config);
    const double rho = nw / (nf * nf);

    rep.parameters.push_back(T);
    rep.data_norms.push_back(lebesgue_norm_a(f0, config.inv_a));
    rep.measured.push_back(rho);
    rep.converged.push_back(run.converged);
    lx.push_back(std::log(T));
    ly.push_back(std::log(rho));
  }

  const double n = static_cast<double>(lx.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i] / n;
    my += ly[i] / n;
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  rep.fitted_exponent = sxy / sxx;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double r = std::abs(ly[i] - (my + rep.fitted_exponent * (lx[i] - mx)));
    rep.fit_residual = std::max(rep.fit_residual, r);
  }
  return rep;
}

LipschitzResult lipschitz_check(const DistributionFunction& f0, const DistributionFunction& g0,
                                const CollisionKernel& kernel, const SolverConfig& config) {
  const double denom = lebesgue_norm_a(f0 - g0, config.inv_a);
  if (denom == 0.0) return {0.0, true};
  const auto a = picard_solve(f0, kernel, config);
  const auto b = picard_solve(g0, kernel, config);
  if (!a.converged || !b.converged) {
    throw std::runtime_error("lipschitz_check: Picard iteration did not converge");
  }
  std::vector<DistributionFunction> diff;
  for (std::size_t k = 0; k < a.trajectory.snapshots.size(); ++k) {
    diff.push_back(a.trajectory.snapshots[k] - b.trajectory.snapshots[k]);
  }
  const auto& t = config.norm_triplet;
  return {time_norm(trace_of(diff, config.dt, t.inv_r, t.inv_p), t.inv_q) / denom, false};
}

}  // namespace boltzlab
