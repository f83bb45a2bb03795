#include <cmath>
#include <random>

#include "boltzlab/transport.hpp"
#include "doctest.h"

using namespace boltzlab;

namespace {

DistributionFunction random_field(const PhaseGrid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  DistributionFunction f(g);
  for (auto& x : f.values()) x = nd(rng);
  return f;
}

double max_abs_diff(const DistributionFunction& a, const DistributionFunction& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i)
    m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
  return m;
}

// Bandlimited line without a Nyquist component, sampled at i - shift.
std::vector<double> smooth_line(std::size_t n, double shift) {
  std::vector<double> y(n);
  const double pi = std::numbers::pi;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = 2.0 * pi * (static_cast<double>(i) - shift) / static_cast<double>(n);
    y[i] = 1.0 + std::sin(x) + 0.3 * std::cos(3.0 * x);
  }
  return y;
}

}  // namespace

TEST_CASE("interpolation names") {
  for (auto m : {Interpolation::cubic, Interpolation::linear, Interpolation::clamped,
                 Interpolation::spectral})
    CHECK(parse_interpolation(to_string(m)) == m);
  CHECK_THROWS_AS(parse_interpolation("quintic"), std::invalid_argument);
}

TEST_CASE("integer shifts are exact rotations for every mode") {
  const std::vector<double> in{1, 2, 3, 4, 5, 6};
  std::vector<double> out(6);
  for (auto m : {Interpolation::cubic, Interpolation::linear, Interpolation::clamped,
                 Interpolation::spectral}) {
    shift_line(in, 2.0, m, out);
    CHECK(out == std::vector<double>{5, 6, 1, 2, 3, 4});
    shift_line(in, -7.0, m, out);
    CHECK(out == std::vector<double>{2, 3, 4, 5, 6, 1});
  }
}

TEST_CASE("cubic and spectral reproduce smooth periodic data at fractional shifts") {
  const std::size_t n = 32;
  const double s = 0.37;
  const auto in = smooth_line(n, 0.0);
  const auto exact = smooth_line(n, s);
  std::vector<double> out(n);
  shift_line(in, s, Interpolation::spectral, out);
  for (std::size_t i = 0; i < n; ++i) CHECK(out[i] == doctest::Approx(exact[i]).epsilon(1e-12));
  shift_line(in, s, Interpolation::cubic, out);
  for (std::size_t i = 0; i < n; ++i) CHECK(out[i] == doctest::Approx(exact[i]).epsilon(1e-3));
}

TEST_CASE("linear and clamped shifts preserve sign and bounds") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> in(16), out(16);
  for (auto& x : in) x = u(rng);
  for (auto m : {Interpolation::linear, Interpolation::clamped}) {
    for (double s : {0.1, 0.5, 3.9, -2.3}) {
      shift_line(in, s, m, out);
      for (double x : out) {
        CHECK(x >= 0.0);
        CHECK(x <= 1.0);
      }
    }
  }
}

TEST_CASE("spectral shifts form a group on bandlimited data") {
  const auto in = smooth_line(16, 0.4);
  std::vector<double> a(16), b(16), c(16);
  shift_line(in, 0.3, Interpolation::spectral, a);
  shift_line(a, 1.45, Interpolation::spectral, b);
  shift_line(in, 1.75, Interpolation::spectral, c);
  for (std::size_t i = 0; i < 16; ++i) CHECK(b[i] == doctest::Approx(c[i]).epsilon(1e-13));
  shift_line(b, -1.75, Interpolation::spectral, a);
  for (std::size_t i = 0; i < 16; ++i) CHECK(a[i] == doctest::Approx(in[i]).epsilon(1e-13));
}

TEST_CASE("free streaming moves mass along characteristics") {
  const PhaseGrid g(2, 8.0, 16, 4.0, 8);
  const auto f = random_field(g, 1);
  // Velocities are odd multiples of dv/2 = 0.5, dx = 0.5: t = 1 is on-grid.
  for (auto m : {Interpolation::cubic, Interpolation::linear, Interpolation::spectral}) {
    const auto h = free_stream(f, 1.0, m);
    for (std::size_t v = 0; v < g.v_nodes(); ++v) {
      const auto vel = g.velocity(v);
      const int sx = static_cast<int>(std::lround(vel[0] / g.dx()));
      const int sy = static_cast<int>(std::lround(vel[1] / g.dx()));
      for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j) {
          const int si = ((i - sx) % 16 + 16) % 16, sj = ((j - sy) % 16 + 16) % 16;
          REQUIRE(h.at(g.x_flat({i, j, 0}), v) == f.at(g.x_flat({si, sj, 0}), v));
        }
    }
  }
  CHECK(max_abs_diff(free_stream(f, 0.0), f) == 0.0);
}

TEST_CASE("adjoint identity <U(t)f, g> = <f, U(-t)g>") {
  for (int dim : {2, 3}) {
    const PhaseGrid g(dim, 4.0, 8, 2.0, 4);
    const auto f = random_field(g, 2), h = random_field(g, 3);
    for (auto m : {Interpolation::cubic, Interpolation::linear, Interpolation::spectral}) {
      for (double t : {0.13, 0.7}) {
        const double lhs = inner_product(free_stream(f, t, m), h);
        const double rhs = inner_product(f, adjoint_stream(h, t, m));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("streaming keeps the nonnegativity flag honest") {
  const PhaseGrid g(2, 8.0, 16, 4.0, 16);
  const std::vector<double> x0{4.0, 4.0}, v0{0.0, 0.0};
  const auto f = make_gaussian(g, x0, v0, 1.0, 1.0, 1.0);
  CHECK(free_stream(f, 0.3, Interpolation::linear).nonnegative());
  CHECK(free_stream(f, 0.3, Interpolation::clamped).nonnegative());
  const auto c = free_stream(f, 0.3, Interpolation::cubic);
  bool pos = true;
  for (double x : c.values()) pos = pos && x >= 0.0;
  CHECK(c.nonnegative() == pos);
  CHECK_THROWS_AS(inner_product(f, DistributionFunction(PhaseGrid(2, 8.0, 16, 4.0, 10))),
                  std::invalid_argument);
}

TEST_CASE("U(t)U(s) = U(t+s) for spectral streaming of smooth data") {
  const PhaseGrid g(2, 8.0, 16, 4.0, 16);
  const std::vector<double> x0{3.0, 5.0}, v0{0.5, 0.0};
  const auto f = make_gaussian(g, x0, v0, 1.5, 1.0, 1.0);
  const auto a = free_stream(free_stream(f, 0.21, Interpolation::spectral), 0.4, Interpolation::spectral);
  const auto b = free_stream(f, 0.61, Interpolation::spectral);
  CHECK(max_abs_diff(a, b) < 1e-12);
}

TEST_CASE("transport worked examples") {
  const PhaseGrid g(2, 8.0, 16, 4.0, 8);
  const auto f = random_field(g, 21);
  CHECK(max_abs_diff(free_stream(f, 0.0, Interpolation::cubic), f) == 0.0);
  // Velocity nodes are odd multiples of dv/2, so t = 2 dx / dv moves each by whole cells.
  const double t = 2.0 * g.dx() / g.dv();
  for (auto m : {Interpolation::cubic, Interpolation::spectral}) {
    const auto there = free_stream(f, t, m);
    CHECK(max_abs_diff(adjoint_stream(there, t, m), f) == 0.0);
    CHECK(max_abs_diff(free_stream(f, t, m), there) == 0.0);
  }

  // Isometry for resolved Gaussian data with the default interpolation.
  const PhaseGrid h(2, 8.0, 16, 4.0, 16);
  const std::vector<double> x0{4.0, 4.0}, v0{0.0, 0.0};
  const auto gauss = make_gaussian(h, x0, v0, 1.0, 1.0, 1.0);
  const double n0 = lebesgue_norm_a(gauss, Rational(1, 2));
  for (double s : {0.25, 0.5, 1.0})
    CHECK(lebesgue_norm_a(free_stream(gauss, s), Rational(1, 2)) == doctest::Approx(n0).epsilon(1e-3));

  // Group law on Gaussian data for the default interpolation.
  const auto a = free_stream(free_stream(gauss, 0.3), 0.45);
  const auto b = free_stream(gauss, 0.75);
  CHECK(lebesgue_norm_a(a - b, Rational(1, 2)) < 1e-2 * n0);
}
