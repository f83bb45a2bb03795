#include "boltzlab/phase_grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace boltzlab {

namespace {

std::size_t ipow(int base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= static_cast<std::size_t>(base);
  return r;
}

// Number of periodic images summed on each side when wrapping a Gaussian.
constexpr int kWrapImages = 3;

// Resolution slack so that sigma = 2 * spacing exactly is accepted.
constexpr double kResolutionSlack = 1e-12;

}  // namespace

PhaseGrid::PhaseGrid(int dim, double length, int n_x, double v_max, int n_v)
    : dim_(dim), length_(length), n_x_(n_x), v_max_(v_max), n_v_(n_v) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("PhaseGrid: N must be 2 or 3");
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw std::invalid_argument("PhaseGrid: period L must be positive");
  }
  if (!(v_max > 0.0) || !std::isfinite(v_max)) {
    throw std::invalid_argument("PhaseGrid: v_max must be positive");
  }
  if (n_x < 4 || n_x % 2 != 0) throw std::invalid_argument("PhaseGrid: n_x must be even and >= 4");
  if (n_v < 4 || n_v % 2 != 0) throw std::invalid_argument("PhaseGrid: n_v must be even and >= 4");
  x_cells_ = ipow(n_x, dim);
  v_nodes_ = ipow(n_v, dim);
}

double PhaseGrid::cell_volume_x() const { return std::pow(dx(), dim_); }
double PhaseGrid::cell_volume_v() const { return std::pow(dv(), dim_); }

std::array<int, 3> PhaseGrid::unflatten(std::size_t flat, int n) const {
  std::array<int, 3> m{0, 0, 0};
  for (int d = 0; d < dim_; ++d) {
    m[d] = static_cast<int>(flat % static_cast<std::size_t>(n));
    flat /= static_cast<std::size_t>(n);
  }
  return m;
}

std::size_t PhaseGrid::flatten(const std::array<int, 3>& m, int n) const {
  std::size_t flat = 0;
  for (int d = dim_ - 1; d >= 0; --d) flat = flat * static_cast<std::size_t>(n) + m[d];
  return flat;
}

std::array<double, 3> PhaseGrid::velocity(std::size_t flat) const {
  const auto m = v_multi(flat);
  std::array<double, 3> v{0.0, 0.0, 0.0};
  for (int d = 0; d < dim_; ++d) v[d] = v_coord(m[d]);
  return v;
}

PhaseGrid PhaseGrid::with_length(double length) const {
  return PhaseGrid(dim_, length, n_x_, v_max_, n_v_);
}

DistributionFunction::DistributionFunction(const PhaseGrid& grid)
    : grid_(grid), values_(grid.size(), 0.0), nonnegative_(true) {}

DistributionFunction::DistributionFunction(const PhaseGrid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw std::invalid_argument("DistributionFunction: expected " + std::to_string(grid_.size()) +
                                " values, got " + std::to_string(values_.size()));
  }
  refresh_nonnegative();
}

bool DistributionFunction::refresh_nonnegative() {
  nonnegative_ = std::all_of(values_.begin(), values_.end(), [](double x) { return x >= 0.0; });
  return nonnegative_;
}

bool DistributionFunction::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double x) { return std::isfinite(x); });
}

void DistributionFunction::require_same_grid(const DistributionFunction& other) const {
  if (!(grid_ == other.grid_)) throw std::invalid_argument("DistributionFunction: grid mismatch");
}

DistributionFunction& DistributionFunction::operator+=(const DistributionFunction& other) {
  require_same_grid(other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  nonnegative_ = nonnegative_ && other.nonnegative_;
  return *this;
}

DistributionFunction& DistributionFunction::operator-=(const DistributionFunction& other) {
  require_same_grid(other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  nonnegative_ = false;
  return *this;
}

DistributionFunction& DistributionFunction::operator*=(double s) {
  for (double& x : values_) x *= s;
  nonnegative_ = nonnegative_ && s >= 0.0;
  return *this;
}

DistributionFunction& DistributionFunction::axpy(double s, const DistributionFunction& other) {
  require_same_grid(other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += s * other.values_[i];
  nonnegative_ = nonnegative_ && other.nonnegative_ && s >= 0.0;
  return *this;
}

void NormTrace::validate() const {
  if (times.size() != values.size()) throw std::invalid_argument("NormTrace: length mismatch");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw std::invalid_argument("NormTrace: times must be strictly increasing");
    }
  }
  for (double v : values) {
    if (!(v >= 0.0)) throw std::invalid_argument("NormTrace: values must be nonnegative");
  }
}

double velocity_norm(std::span<const double> slice, double cell_volume_v, const Rational& inv_p) {
  if (inv_p < Rational(0) || inv_p > Rational(1)) {
    throw std::invalid_argument("velocity_norm: 1/p outside [0,1]");
  }
  if (inv_p == Rational(0)) {
    double m = 0.0;
    for (double x : slice) m = std::max(m, std::abs(x));
    return m;
  }
  const double p = 1.0 / to_double(inv_p);
  double s = 0.0;
  for (double x : slice) s += std::pow(std::abs(x), p);
  return std::pow(s * cell_volume_v, 1.0 / p);
}

double mixed_norm_xv(const DistributionFunction& f, const Rational& inv_r, const Rational& inv_p) {
  const Rational zero(0), one(1);
  if (inv_r < zero || inv_r > one || inv_p < zero || inv_p > one) {
    throw std::invalid_argument("mixed_norm_xv: reciprocals must lie in [0,1]");
  }
  const PhaseGrid& g = f.grid();
  const std::size_t nx = g.x_cells();
  const std::size_t nv = g.v_nodes();

  // inner[x] = int_v |f|^p dv (or sup_v |f|)
  std::vector<double> inner(nx, 0.0);
  const bool sup_v = inv_p == zero;
  const double p = sup_v ? 0.0 : 1.0 / to_double(inv_p);
  const bool p_is_one = inv_p == one;
  const bool p_is_two = inv_p == Rational(1, 2);
  for (std::size_t v = 0; v < nv; ++v) {
    const auto row = f.row(v);
    for (std::size_t x = 0; x < nx; ++x) {
      const double a = std::abs(row[x]);
      if (sup_v) {
        inner[x] = std::max(inner[x], a);
      } else if (p_is_one) {
        inner[x] += a;
      } else if (p_is_two) {
        inner[x] += a * a;
      } else {
        inner[x] += std::pow(a, p);
      }
    }
  }
  if (!sup_v) {
    const double dvn = g.cell_volume_v();
    for (double& s : inner) s = std::pow(s * dvn, 1.0 / p);
  }

  if (inv_r == zero) return *std::max_element(inner.begin(), inner.end());
  const double r = 1.0 / to_double(inv_r);
  double outer = 0.0;
  for (double s : inner) outer += std::pow(s, r);
  return std::pow(outer * g.cell_volume_x(), 1.0 / r);
}

double lebesgue_norm_a(const DistributionFunction& f, const Rational& inv_a) {
  return mixed_norm_xv(f, inv_a, inv_a);
}

double time_norm(const NormTrace& trace, const Rational& inv_q) {
  trace.validate();
  if (trace.empty()) throw std::invalid_argument("time_norm: empty trace");
  if (inv_q < Rational(0) || inv_q > Rational(1)) {
    throw std::invalid_argument("time_norm: 1/q outside [0,1]");
  }
  if (inv_q == Rational(0)) return *std::max_element(trace.values.begin(), trace.values.end());
  const double q = 1.0 / to_double(inv_q);
  double acc = 0.0;
  for (std::size_t i = 1; i < trace.times.size(); ++i) {
    const double h = trace.times[i] - trace.times[i - 1];
    acc += 0.5 * h * (std::pow(trace.values[i - 1], q) + std::pow(trace.values[i], q));
  }
  return std::pow(acc, 1.0 / q);
}

std::vector<double> velocity_moment0(const DistributionFunction& f) {
  const PhaseGrid& g = f.grid();
  std::vector<double> m(g.x_cells(), 0.0);
  for (std::size_t v = 0; v < g.v_nodes(); ++v) {
    const auto row = f.row(v);
    for (std::size_t x = 0; x < g.x_cells(); ++x) m[x] += row[x];
  }
  const double dvn = g.cell_volume_v();
  for (double& s : m) s *= dvn;
  return m;
}

DistributionFunction make_gaussian(const PhaseGrid& grid, std::span<const double> x0,
                                   std::span<const double> v0, double sigma_x, double sigma_v,
                                   double amplitude) {
  const int dim = grid.dim();
  if (static_cast<int>(x0.size()) != dim || static_cast<int>(v0.size()) != dim) {
    throw std::invalid_argument("make_gaussian: centres must have N components");
  }
  if (!(sigma_x > 0.0) || !(sigma_v > 0.0)) {
    throw std::invalid_argument("make_gaussian: widths must be positive");
  }
  if (sigma_x < 2.0 * grid.dx() * (1.0 - kResolutionSlack)) {
    throw std::invalid_argument("make_gaussian: sigma_x below two x-spacings is unresolvable");
  }
  if (sigma_v < 2.0 * grid.dv() * (1.0 - kResolutionSlack)) {
    throw std::invalid_argument("make_gaussian: sigma_v below two v-spacings is unresolvable");
  }

  // Separable factors, one table per dimension.
  const double L = grid.length();
  std::vector<std::vector<double>> gx(dim, std::vector<double>(grid.n_x()));
  std::vector<std::vector<double>> gv(dim, std::vector<double>(grid.n_v()));
  for (int d = 0; d < dim; ++d) {
    for (int i = 0; i < grid.n_x(); ++i) {
      double s = 0.0;
      for (int m = -kWrapImages; m <= kWrapImages; ++m) {
        const double dx = grid.x_coord(i) - x0[d] + m * L;
        s += std::exp(-dx * dx / (2.0 * sigma_x * sigma_x));
      }
      gx[d][i] = s;
    }
    for (int j = 0; j < grid.n_v(); ++j) {
      const double dv = grid.v_coord(j) - v0[d];
      gv[d][j] = std::exp(-dv * dv / (2.0 * sigma_v * sigma_v));
    }
  }

  DistributionFunction f(grid);
  for (std::size_t v = 0; v < grid.v_nodes(); ++v) {
    const auto vm = grid.v_multi(v);
    double fv = amplitude;
    for (int d = 0; d < dim; ++d) fv *= gv[d][vm[d]];
    auto row = f.row(v);
    for (std::size_t x = 0; x < grid.x_cells(); ++x) {
      const auto xm = grid.x_multi(x);
      double fx = 1.0;
      for (int d = 0; d < dim; ++d) fx *= gx[d][xm[d]];
      row[x] = fv * fx;
    }
  }
  f.set_nonnegative(amplitude >= 0.0);
  return f;
}

DistributionFunction make_maxwellian(const PhaseGrid& grid, double density,
                                     std::span<const double> bulk_velocity, double temperature) {
  const int dim = grid.dim();
  if (static_cast<int>(bulk_velocity.size()) != dim) {
    throw std::invalid_argument("make_maxwellian: bulk velocity must have N components");
  }
  if (!(temperature > 0.0)) throw std::invalid_argument("make_maxwellian: temperature must be > 0");
  if (std::sqrt(temperature) < 2.0 * grid.dv() * (1.0 - kResolutionSlack)) {
    throw std::invalid_argument("make_maxwellian: thermal width below two v-spacings");
  }
  const double norm = density * std::pow(2.0 * std::numbers::pi * temperature, -0.5 * dim);
  DistributionFunction f(grid);
  for (std::size_t v = 0; v < grid.v_nodes(); ++v) {
    const auto vel = grid.velocity(v);
    double r2 = 0.0;
    for (int d = 0; d < dim; ++d) r2 += (vel[d] - bulk_velocity[d]) * (vel[d] - bulk_velocity[d]);
    const double value = norm * std::exp(-r2 / (2.0 * temperature));
    auto row = f.row(v);
    std::fill(row.begin(), row.end(), value);
  }
  f.set_nonnegative(density >= 0.0);
  return f;
}

}  // namespace boltzlab
