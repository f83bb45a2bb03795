#include <cmath>
#include <numbers>
#include <random>

#include "boltzlab/collision.hpp"
#include "doctest.h"
#include "collision_oracle.hpp"

using namespace boltzlab;

using namespace oracle;


TEST_CASE("kernel validation") {
  const PhaseGrid g(2, 8, 8, 3, 6);
  CHECK_THROWS_AS(make_kernel(g, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(make_kernel(g, -2.0), std::invalid_argument);
  CHECK_THROWS_AS(make_kernel(g, -1.0, 1.0, 16, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_kernel(g, 0.0, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_kernel(g, 0.0, [](double) { return INFINITY; }), std::invalid_argument);
  CHECK(make_kernel(g, -1.0).epsilon == doctest::Approx(0.5));
  const PhaseGrid g3(3, 8, 4, 2, 4);
  CHECK_THROWS_AS(make_kernel(g3, 0.0, 1.0, 17), std::invalid_argument);
  CHECK_NOTHROW(make_kernel(g3, -2.5, 1.0, 24));
}

TEST_CASE("angular rules integrate the admissible cap") {
  const PhaseGrid g2(2, 8, 8, 3, 6), g3(3, 8, 4, 2, 4);
  CHECK(grad_cutoff_constant(make_kernel(g2, 0.0)) == doctest::Approx(std::numbers::pi));
  CHECK(grad_cutoff_constant(make_kernel(g3, 0.0)) == doctest::Approx(2.0 * std::numbers::pi));
  // int_cap cos(theta) dS = pi in N = 3 and 2 in N = 2.
  const auto cosb = [](double c) { return c; };
  CHECK(grad_cutoff_constant(make_kernel(g3, 0.0, cosb, 32)) == doctest::Approx(std::numbers::pi));
  CHECK(grad_cutoff_constant(make_kernel(g2, 0.0, cosb, 64)) == doctest::Approx(2.0).epsilon(1e-3));
  const auto [x, w] = gauss_legendre_unit(5);
  double m4 = 0.0;
  for (int i = 0; i < 5; ++i) m4 += w[i] * std::pow(x[i], 8);
  CHECK(m4 == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
  CHECK_THROWS(gauss_legendre_unit(0));
}

TEST_CASE("post-collision velocities conserve momentum and energy") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> nd;
  const auto rule = make_angular_rule(3, 16);
  for (int s = 0; s < 100; ++s) {
    const Vec3 v{nd(rng), nd(rng), nd(rng)}, vs{nd(rng), nd(rng), nd(rng)};
    const Vec3 u{v[0] - vs[0], v[1] - vs[1], v[2] - vs[2]};
    const Vec3 w = angular_node(rule, static_cast<std::size_t>(s) % rule.size(), u);
    CHECK(w[0] * w[0] + w[1] * w[1] + w[2] * w[2] == doctest::Approx(1.0));
    CHECK(w[0] * u[0] + w[1] * u[1] + w[2] * u[2] >= 0.0);
    const auto [vp, vsp] = post_collision(v, vs, w);
    double e0 = 0, e1 = 0;
    for (int d = 0; d < 3; ++d) {
      CHECK(vp[d] + vsp[d] == doctest::Approx(v[d] + vs[d]));
      e0 += v[d] * v[d] + vs[d] * vs[d];
      e1 += vp[d] * vp[d] + vsp[d] * vsp[d];
    }
    CHECK(e1 == doctest::Approx(e0));
  }
}

TEST_CASE("gain and loss match the brute-force oracle in N = 2") {
  const PhaseGrid grid(2, 4.0, 4, 3.0, 6);
  const oracle::VelocityBox box{2, 6, 3.0};
  const std::size_t batch = 3;
  for (double gamma : {0.0, -0.5, -1.5}) {
    const auto kernel = make_kernel(grid, gamma, 1.0, 12);
    for (int s = 0; s < 4; ++s) {
      const auto f = random_columns(grid.v_nodes() * batch, 100 + s);
      const auto h = random_columns(grid.v_nodes() * batch, 200 + s);
      std::vector<double> out(f.size());
      gain_columns(grid, kernel, f, h, out, batch);
      CHECK(rel_error(out, oracle_gain_2d(box, gamma, kernel.epsilon, 12, f, h, batch)) < 1e-12);
      loss_columns(grid, kernel, f, h, out, batch);
      CHECK(rel_error(out, oracle_loss(box, gamma, kernel.epsilon, std::numbers::pi, f, h, batch)) <
            1e-12);
    }
  }
}

TEST_CASE("gain and loss match the brute-force oracle in N = 3") {
  const PhaseGrid grid(3, 4.0, 4, 2.0, 4);
  const oracle::VelocityBox box{3, 4, 2.0};
  const std::size_t batch = 2;
  const auto kernel = make_kernel(grid, -1.0, 1.0, 8);
  const auto f = random_columns(grid.v_nodes() * batch, 7);
  const auto h = random_columns(grid.v_nodes() * batch, 8);
  std::vector<double> out(f.size());
  gain_columns(grid, kernel, f, h, out, batch);
  CHECK(rel_error(out, oracle_gain_3d(box, kernel, f, h, batch)) < 1e-12);
  loss_columns(grid, kernel, f, h, out, batch);
  CHECK(rel_error(out, oracle_loss(box, -1.0, kernel.epsilon, 2.0 * std::numbers::pi, f, h,
                                   batch)) < 1e-12);
}

TEST_CASE("collision terms are bilinear") {
  const PhaseGrid grid(2, 4.0, 4, 3.0, 8);
  const auto kernel = make_kernel(grid, -0.5, 1.0, 8);
  auto make = [&](std::uint64_t seed) {
    return DistributionFunction(grid, random_columns(grid.size(), seed));
  };
  const auto f1 = make(1), f2 = make(2), g = make(3);
  const double a = 0.7, b = -1.3;
  for (auto term : {&gain_term, &loss_term}) {
    const auto lhs = term(a * f1 + b * f2, g, kernel);
    const auto rhs = a * term(f1, g, kernel) + b * term(f2, g, kernel);
    const auto right = term(g, a * f1 + b * f2, kernel);
    const auto right_ref = a * term(g, f1, kernel) + b * term(g, f2, kernel);
    double err = 0.0, err2 = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      err = std::max(err, std::abs(lhs.values()[i] - rhs.values()[i]));
      err2 = std::max(err2, std::abs(right.values()[i] - right_ref.values()[i]));
      scale = std::max(scale, std::abs(rhs.values()[i]));
    }
    CHECK(err < 1e-12 * scale);
    CHECK(err2 < 1e-12 * scale);
  }
}

TEST_CASE("collision operator is local in x") {
  // Each x-cell is an independent column: permuting cells permutes Q.
  const PhaseGrid grid(2, 4.0, 4, 3.0, 6);
  const auto kernel = make_kernel(grid, 0.0, 1.0, 8);
  DistributionFunction f(grid, random_columns(grid.size(), 4));
  for (auto& x : f.values()) x = std::abs(x);
  DistributionFunction p(grid);
  const std::size_t cells = grid.x_cells();
  for (std::size_t v = 0; v < grid.v_nodes(); ++v)
    for (std::size_t x = 0; x < cells; ++x) p.at(x, v) = f.at((x + 5) % cells, v);
  const auto q = collision_operator(f, kernel), qp = collision_operator(p, kernel);
  for (std::size_t v = 0; v < grid.v_nodes(); ++v)
    for (std::size_t x = 0; x < cells; ++x)
      CHECK(qp.at(x, v) == doctest::Approx(q.at((x + 5) % cells, v)).epsilon(1e-14));
}

TEST_CASE("gain commutes with velocity translations by whole nodes") {
  const int n = 12;
  const PhaseGrid grid(2, 4.0, 4, 3.0, n);
  const auto kernel = make_kernel(grid, -1.0, 1.0, 8);
  // Supports in a central block, translated by (2, 1) nodes.
  auto field = [&](int sx, int sy, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    DistributionFunction f(grid);
    for (int i = 4; i < 7; ++i)
      for (int j = 4; j < 7; ++j) {
        const auto v = grid.v_flat({i + sx, j + sy, 0});
        for (std::size_t x = 0; x < grid.x_cells(); ++x) f.at(x, v) = u(rng);
      }
    return f;
  };
  const auto q0 = gain_term(field(0, 0, 1), field(0, 0, 2), kernel);
  const auto q1 = gain_term(field(2, 1, 1), field(2, 1, 2), kernel);
  double scale = 0.0;
  for (double x : q0.values()) scale = std::max(scale, std::abs(x));
  for (int i = 0; i + 2 < n; ++i)
    for (int j = 0; j + 1 < n; ++j)
      for (std::size_t x = 0; x < grid.x_cells(); ++x)
        CHECK(std::abs(q1.at(x, grid.v_flat({i + 2, j + 1, 0})) -
                       q0.at(x, grid.v_flat({i, j, 0}))) <= 1e-12 * scale);
}

TEST_CASE("column buffers are checked") {
  const PhaseGrid grid(2, 4.0, 4, 3.0, 6);
  const auto kernel = make_kernel(grid, 0.0);
  std::vector<double> a(36), b(35);
  CHECK_THROWS_AS(gain_columns(grid, kernel, a, b, a, 1), std::invalid_argument);
  const PhaseGrid g3(3, 4.0, 4, 2.0, 4);
  CHECK_THROWS_AS(loss_columns(g3, kernel, a, a, a, 1), std::invalid_argument);
}

TEST_CASE("collision worked examples") {
  const Vec3 v{1.0, 2.0, -0.5}, vs{-1.0, 0.5, 0.5};
  const Vec3 u{2.0, 1.5, -1.0};
  const double un = std::sqrt(2.0 * 2.0 + 1.5 * 1.5 + 1.0);
  const Vec3 par{u[0] / un, u[1] / un, u[2] / un};
  const Vec3 perp{1.5 / 2.5, -2.0 / 2.5, 0.0};
  auto [a, b] = post_collision(v, vs, perp);
  for (int d = 0; d < 3; ++d) {
    CHECK(a[d] == doctest::Approx(v[d]));
    CHECK(b[d] == doctest::Approx(vs[d]));
  }
  std::tie(a, b) = post_collision(v, vs, par);
  for (int d = 0; d < 3; ++d) {
    CHECK(a[d] == doctest::Approx(vs[d]));
    CHECK(b[d] == doctest::Approx(v[d]));
  }

  const PhaseGrid grid(2, 4.0, 4, 3.0, 8);
  DistributionFunction f(grid, random_columns(grid.size(), 31));
  for (auto& x : f.values()) x = std::abs(x);
  const DistributionFunction zero(grid);
  const auto none = make_kernel(grid, 0.0, 0.0, 64);
  CHECK(grad_cutoff_constant(none) == 0.0);
  const auto q_none = collision_operator(f, none);
  for (double x : q_none.values()) CHECK(x == 0.0);
  const auto kernel = make_kernel(grid, 0.0, 1.0, 64);
  CHECK(grad_cutoff_constant(kernel) == doctest::Approx(std::numbers::pi).epsilon(1e-12));
  const auto gain0 = gain_term(f, zero, kernel);
  const auto loss0 = loss_term(zero, f, kernel);
  const auto q0 = collision_operator(zero, kernel);
  for (double x : gain0.values()) CHECK(x == 0.0);
  for (double x : loss0.values()) CHECK(x == 0.0);
  for (double x : q0.values()) CHECK(x == 0.0);

  // gamma = 0, b = b0: Q-(f, g) = b0 |cap| f sum_v g dv^N.
  const double b0 = 0.7;
  const auto k07 = make_kernel(grid, 0.0, b0, 16);
  const DistributionFunction g(grid, random_columns(grid.size(), 32));
  const auto loss = loss_term(f, g, k07);
  const auto mass = velocity_moment0(g);
  for (std::size_t v = 0; v < grid.v_nodes(); ++v)
    for (std::size_t x = 0; x < grid.x_cells(); ++x)
      CHECK(loss.at(x, v) == doctest::Approx(b0 * std::numbers::pi * f.at(x, v) * mass[x]).epsilon(1e-12));
}
