#include <cmath>
#include <numbers>

#include "boltzlab/scattering.hpp"
#include "doctest.h"

using namespace boltzlab;

namespace {

// Lowest Fourier modes in x only, so spectral shifts are exact.
DistributionFunction smooth_data(const PhaseGrid& g, double amplitude) {
  DistributionFunction f(g);
  const double pi = std::numbers::pi;
  for (std::size_t v = 0; v < g.v_nodes(); ++v) {
    const auto vel = g.velocity(v);
    const double m = std::exp(-0.5 * ((vel[0] - 1.0) * (vel[0] - 1.0) + vel[1] * vel[1])) +
                     std::exp(-0.5 * ((vel[0] + 1.0) * (vel[0] + 1.0) + vel[1] * vel[1]));
    for (std::size_t x = 0; x < g.x_cells(); ++x) {
      const auto xi = g.x_multi(x);
      const double px = 2.0 * pi * g.x_coord(xi[0]) / g.length();
      const double py = 2.0 * pi * g.x_coord(xi[1]) / g.length();
      f.at(x, v) = amplitude * m * (1.0 + 0.3 * std::cos(px) + 0.2 * std::sin(py));
    }
  }
  f.refresh_nonnegative();
  return f;
}

SolverConfig spectral_config() {
  SolverConfig c;
  c.horizon = 0.5;
  c.dt = 0.125;
  c.picard_tol = 1e-12;
  c.interpolation = Interpolation::spectral;
  return c;
}

}  // namespace

TEST_CASE("without collisions the scattering state is the data") {
  const PhaseGrid g(2, 8.0, 8, 3.0, 6);
  const auto kernel = make_kernel(g, 0.0, 0.0, 8);
  const auto f0 = smooth_data(g, 1e-2);
  const auto cfg = spectral_config();
  const auto run = picard_solve(f0, kernel, cfg);
  const auto fp = scattering_state(run.trajectory, kernel, cfg.interpolation);
  CHECK(lebesgue_norm_a(fp - f0, cfg.inv_a) == 0.0);
  const auto defect = scattering_defect(run.trajectory, fp, cfg.inv_a, cfg.interpolation);
  for (double d : defect.values) CHECK(d < 1e-15);

  const auto sc = scatter_adaptive(f0, kernel, cfg, 2.0);
  CHECK(sc.plateau);
  CHECK(sc.t_inf == 0.5);
}

TEST_CASE("scattering increments add over adjacent windows") {
  const PhaseGrid g(2, 8.0, 8, 3.0, 6);
  const auto kernel = make_kernel(g, -0.5, 1.0, 8);
  const auto cfg = spectral_config();
  const auto run = picard_solve(smooth_data(g, 1e-2), kernel, cfg);
  REQUIRE(run.converged);
  const auto& t = run.trajectory;
  const auto whole = scattering_increment(t, kernel, 0, 4, cfg.interpolation);
  const auto parts = scattering_increment(t, kernel, 0, 2, cfg.interpolation) +
                     scattering_increment(t, kernel, 2, 4, cfg.interpolation);
  CHECK(lebesgue_norm_a(whole - parts, cfg.inv_a) <= 1e-15 * lebesgue_norm_a(whole, cfg.inv_a) + 1e-300);
  CHECK(lebesgue_norm_a(scattering_increment(t, kernel, 2, 2, cfg.interpolation), cfg.inv_a) == 0.0);
  CHECK_THROWS_AS(scattering_increment(t, kernel, 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(scattering_increment(t, kernel, 0, 9), std::invalid_argument);
}

TEST_CASE("scattering refuses unconverged runs and bad horizons") {
  const PhaseGrid g(2, 8.0, 8, 3.0, 6);
  const auto kernel = make_kernel(g, 0.0, 1.0, 8);
  SolutionTrajectory t;
  t.dt = 0.125;
  t.snapshots.assign(5, DistributionFunction(g));
  CHECK_THROWS_AS(scattering_state(t, kernel), std::invalid_argument);
  auto cfg = spectral_config();
  CHECK_THROWS_AS(scatter_adaptive(DistributionFunction(g), kernel, cfg, 0.25), std::invalid_argument);
  cfg.horizon = 0.375;
  CHECK_THROWS_AS(scatter_adaptive(DistributionFunction(g), kernel, cfg, 1.0), std::invalid_argument);
}

TEST_CASE("wave operator then scattering returns the asymptotic state") {
  const PhaseGrid g(2, 8.0, 8, 3.0, 6);
  const auto kernel = make_kernel(g, -0.5, 1.0, 8);
  const auto cfg = spectral_config();
  const auto fp = smooth_data(g, 1e-3);
  const auto wave = wave_operator(fp, kernel, cfg);
  REQUIRE(wave.converged);
  const auto run = picard_solve(wave.f0, kernel, cfg);
  REQUIRE(run.converged);
  const auto back = scattering_state(run.trajectory, kernel, cfg.interpolation);
  const double rel = lebesgue_norm_a(back - fp, cfg.inv_a) / lebesgue_norm_a(fp, cfg.inv_a);
  CHECK(rel < 1e-9);
  // The wave map moves the data by the (small) scattering integral.
  CHECK(lebesgue_norm_a(wave.f0 - fp, cfg.inv_a) > 0.0);
}

TEST_CASE("scattering worked examples") {
  const PhaseGrid g(2, 8.0, 8, 3.0, 6);
  const auto kernel = make_kernel(g, 0.0, 1.0, 8);
  const auto cfg = spectral_config();
  const auto run = picard_solve(DistributionFunction(g), kernel, cfg);
  const auto fp0 = scattering_state(run.trajectory, kernel);
  for (double x : fp0.values()) CHECK(x == 0.0);
  const auto w0 = wave_operator(DistributionFunction(g), kernel, cfg);
  for (double x : w0.f0.values()) CHECK(x == 0.0);
  const auto none = make_kernel(g, 0.0, 0.0, 8);
  const auto fp = smooth_data(g, 1e-2);
  const auto w = wave_operator(fp, none, cfg);
  CHECK(lebesgue_norm_a(w.f0 - fp, cfg.inv_a) == 0.0);
}

TEST_CASE("the scattering tail shrinks as the horizon grows") {
  // Velocity components of a localised bump separate in x, so the collision
  // integrand decays before the torus wraps around.
  const PhaseGrid g(2, 16.0, 16, 4.0, 8);
  const auto kernel = make_kernel(g, 0.0, 1.0, 8);
  const std::vector<double> x0{8.0, 8.0}, va{1.5, 0.0}, vb{-1.5, 0.0};
  const auto f0 = make_gaussian(g, x0, va, 2.0, 2.0, 1e-2) + make_gaussian(g, x0, vb, 2.0, 2.0, 1e-2);
  SolverConfig c;
  c.dt = 0.25;
  c.picard_tol = 1e-10;
  c.interpolation = Interpolation::spectral;
  double previous = 1.0;
  for (double T : {1.0, 2.0}) {
    c.horizon = T;
    const auto run = picard_solve(f0, kernel, c);
    REQUIRE(run.converged);
    const auto last = static_cast<std::size_t>(c.steps());
    const double total = lebesgue_norm_a(scattering_increment(run.trajectory, kernel, 0, last), c.inv_a);
    const double tail =
        lebesgue_norm_a(scattering_increment(run.trajectory, kernel, last / 2, last), c.inv_a) / total;
    CHECK(tail < previous);
    previous = tail;
  }
}

TEST_CASE("scattering then wave operator returns the initial data") {
  // With 8 x-cells Q feeds the Nyquist mode, where even-n spectral shifts do not
  // compose exactly, and the residual floors near 5e-10. 16 cells leave ~1e-13.
  const PhaseGrid g(2, 8.0, 16, 3.0, 6);
  const auto kernel = make_kernel(g, 0.0, 1.0, 8);
  auto cfg = spectral_config();
  cfg.picard_tol = 1e-10;
  const auto f0 = smooth_data(g, 1e-2);
  const auto run = picard_solve(f0, kernel, cfg);
  REQUIRE(run.converged);
  const auto fp = scattering_state(run.trajectory, kernel, cfg.interpolation);
  const auto wave = wave_operator(fp, kernel, cfg);
  REQUIRE(wave.converged);
  CHECK(lebesgue_norm_a(wave.f0 - f0, cfg.inv_a) / lebesgue_norm_a(f0, cfg.inv_a) <
        5.0 * cfg.picard_tol);
}
