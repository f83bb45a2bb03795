#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "boltzlab/exponents.hpp"

namespace boltzlab {

/// Periodic x-torus [0, L)^N times the truncated velocity box [-v_max, v_max]^N.
///
/// Both factors use cell-centred nodes. Flat indices run with dimension 0
/// fastest. A DistributionFunction stores one contiguous row of x-cells per
/// velocity node, so transport shifts rows in place and the collision loop
/// vectorises over x.
class PhaseGrid {
public:
  PhaseGrid(int dim, double length, int n_x, double v_max, int n_v);

  int dim() const { return dim_; }
  double length() const { return length_; }
  int n_x() const { return n_x_; }
  double v_max() const { return v_max_; }
  int n_v() const { return n_v_; }

  double dx() const { return length_ / n_x_; }
  double dv() const { return 2.0 * v_max_ / n_v_; }
  double cell_volume_x() const;
  double cell_volume_v() const;

  std::size_t x_cells() const { return x_cells_; }
  std::size_t v_nodes() const { return v_nodes_; }
  std::size_t size() const { return x_cells_ * v_nodes_; }

  double x_coord(int i) const { return (i + 0.5) * dx(); }
  double v_coord(int j) const { return -v_max_ + (j + 0.5) * dv(); }

  std::array<int, 3> x_multi(std::size_t flat) const { return unflatten(flat, n_x_); }
  std::array<int, 3> v_multi(std::size_t flat) const { return unflatten(flat, n_v_); }
  std::size_t x_flat(const std::array<int, 3>& m) const { return flatten(m, n_x_); }
  std::size_t v_flat(const std::array<int, 3>& m) const { return flatten(m, n_v_); }

  /// Velocity vector of node `flat` (unused components are zero).
  std::array<double, 3> velocity(std::size_t flat) const;

  /// Same resolution and velocity box on a torus of a different period.
  PhaseGrid with_length(double length) const;

  friend bool operator==(const PhaseGrid&, const PhaseGrid&) = default;

private:
  std::array<int, 3> unflatten(std::size_t flat, int n) const;
  std::size_t flatten(const std::array<int, 3>& m, int n) const;

  int dim_;
  double length_;
  int n_x_;
  double v_max_;
  int n_v_;
  std::size_t x_cells_;
  std::size_t v_nodes_;
};

/// Phase-space density sampled on a PhaseGrid.
class DistributionFunction {
public:
  explicit DistributionFunction(const PhaseGrid& grid);
  DistributionFunction(const PhaseGrid& grid, std::vector<double> values);

  const PhaseGrid& grid() const { return grid_; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  /// The x-row belonging to velocity node v.
  std::span<double> row(std::size_t v) {
    return {values_.data() + v * grid_.x_cells(), grid_.x_cells()};
  }
  std::span<const double> row(std::size_t v) const {
    return {values_.data() + v * grid_.x_cells(), grid_.x_cells()};
  }

  double& at(std::size_t x, std::size_t v) { return values_[v * grid_.x_cells() + x]; }
  double at(std::size_t x, std::size_t v) const { return values_[v * grid_.x_cells() + x]; }

  /// Known to be >= 0 everywhere. Set by constructors of nonnegative data and
  /// by operations that provably preserve sign; never set speculatively.
  bool nonnegative() const { return nonnegative_; }
  void set_nonnegative(bool flag) { nonnegative_ = flag; }
  /// Recomputes the flag from the values.
  bool refresh_nonnegative();

  bool all_finite() const;

  DistributionFunction& operator+=(const DistributionFunction& other);
  DistributionFunction& operator-=(const DistributionFunction& other);
  DistributionFunction& operator*=(double s);
  /// this += s * other
  DistributionFunction& axpy(double s, const DistributionFunction& other);

  friend DistributionFunction operator+(DistributionFunction a, const DistributionFunction& b) {
    return a += b;
  }
  friend DistributionFunction operator-(DistributionFunction a, const DistributionFunction& b) {
    return a -= b;
  }
  friend DistributionFunction operator*(double s, DistributionFunction a) { return a *= s; }

private:
  void require_same_grid(const DistributionFunction& other) const;

  PhaseGrid grid_;
  std::vector<double> values_;
  bool nonnegative_ = false;
};

/// A time series of nonnegative norm values on strictly increasing times.
struct NormTrace {
  std::vector<double> times;
  std::vector<double> values;

  void validate() const;
  bool empty() const { return times.empty(); }
};

/// (int_x (int_v |f|^p dv)^{r/p} dx)^{1/r} by the midpoint rule; a zero
/// reciprocal selects the essential supremum in that variable.
double mixed_norm_xv(const DistributionFunction& f, const Rational& inv_r, const Rational& inv_p);

/// L^a_{x,v} norm: mixed_norm_xv with r = p = a.
double lebesgue_norm_a(const DistributionFunction& f, const Rational& inv_a);

/// L^q of a trace on its recorded times (trapezoid on |value|^q); sup when inv_q = 0.
double time_norm(const NormTrace& trace, const Rational& inv_q);

/// L^p_v norm of a single velocity slice (one x-cell worth of data).
double velocity_norm(std::span<const double> slice, double cell_volume_v, const Rational& inv_p);

/// Per-x-cell integral sum_v f dv^N.
std::vector<double> velocity_moment0(const DistributionFunction& f);

/// Periodic-wrapped Gaussian in x times a plain Gaussian in v:
///   amplitude * exp(-|x - x0|^2 / 2 sigma_x^2) * exp(-|v - v0|^2 / 2 sigma_v^2).
/// Widths must be at least two grid spacings; throws std::invalid_argument otherwise.
DistributionFunction make_gaussian(const PhaseGrid& grid, std::span<const double> x0,
                                   std::span<const double> v0, double sigma_x, double sigma_v,
                                   double amplitude);

/// Spatially uniform Maxwellian rho (2 pi T)^{-N/2} exp(-|v - u|^2 / 2T).
DistributionFunction make_maxwellian(const PhaseGrid& grid, double density,
                                     std::span<const double> bulk_velocity, double temperature);

}  // namespace boltzlab
