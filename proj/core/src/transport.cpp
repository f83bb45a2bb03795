#include "boltzlab/transport.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace boltzlab {

namespace {

constexpr double kIntegerShiftTol = 1e-9;

// Pole of the cubic B-spline prefilter (z^2 + 4z + 1 = 0, |z| < 1).
const double kPole = std::sqrt(3.0) - 2.0;

std::size_t wrap(long long i, std::size_t n) {
  const long long m = static_cast<long long>(n);
  long long r = i % m;
  return static_cast<std::size_t>(r < 0 ? r + m : r);
}

// Periodic cubic B-spline coefficients: (c[i-1] + 4 c[i] + c[i+1]) / 6 = y[i].
void spline_coefficients(std::span<const double> y, std::vector<double>& c) {
  const std::size_t n = y.size();
  c.resize(n);
  const double zn = std::pow(kPole, static_cast<double>(n));

  double acc = 0.0, zk = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    acc += zk * y[wrap(-static_cast<long long>(k), n)];
    zk *= kPole;
  }
  c[0] = acc / (1.0 - zn);
  for (std::size_t k = 1; k < n; ++k) c[k] = y[k] + kPole * c[k - 1];

  acc = 0.0;
  zk = kPole;
  for (std::size_t j = 0; j < n; ++j) {
    acc += zk * c[(n - 1 + j) % n];
    zk *= kPole;
  }
  std::vector<double> cp = c;
  c[n - 1] = -acc / (1.0 - zn);
  for (std::size_t k = n - 1; k-- > 0;) c[k] = kPole * (c[k + 1] - cp[k]);
  for (double& x : c) x *= 6.0;
}

}  // namespace

Interpolation parse_interpolation(std::string_view text) {
  if (text == "cubic") return Interpolation::cubic;
  if (text == "linear") return Interpolation::linear;
  if (text == "clamped") return Interpolation::clamped;
  if (text == "spectral") return Interpolation::spectral;
  throw std::invalid_argument("unknown interpolation '" + std::string(text) + "'");
}

std::string_view to_string(Interpolation interp) {
  switch (interp) {
    case Interpolation::cubic: return "cubic";
    case Interpolation::linear: return "linear";
    case Interpolation::clamped: return "clamped";
    case Interpolation::spectral: return "spectral";
  }
  return "cubic";
}

void shift_line(std::span<const double> in, double shift_cells, Interpolation interp,
                std::span<double> out) {
  const std::size_t n = in.size();
  if (out.size() != n) throw std::invalid_argument("shift_line: size mismatch");
  if (n == 0) return;

  const double whole = std::floor(shift_cells);
  double frac = shift_cells - whole;
  long long m = static_cast<long long>(whole);
  if (frac > 1.0 - kIntegerShiftTol) {
    frac = 0.0;
    ++m;
  }
  if (frac < kIntegerShiftTol) {
    for (std::size_t i = 0; i < n; ++i) out[i] = in[wrap(static_cast<long long>(i) - m, n)];
    return;
  }

  // Sample point i - shift = j + eta with j = i - m - 1, eta in (0, 1).
  const double eta = 1.0 - frac;
  const long long base = -m - 1;

  if (interp == Interpolation::linear) {
    for (std::size_t i = 0; i < n; ++i) {
      const long long j = static_cast<long long>(i) + base;
      out[i] = (1.0 - eta) * in[wrap(j, n)] + eta * in[wrap(j + 1, n)];
    }
    return;
  }

  if (interp == Interpolation::spectral) {
    // Periodic sinc: D(y) = sin(pi y) / (n tan(pi y / n)) for even n, with
    // sin in place of tan for odd n. Odd n has no Nyquist mode, so shifts
    // compose exactly; for even n the Nyquist mode is damped by cos(pi frac).
    thread_local std::vector<double> kernel;
    thread_local double cached_frac = -1.0;
    thread_local std::size_t cached_n = 0;
    if (cached_frac != frac || cached_n != n) {
      kernel.resize(n);
      const double pi = std::numbers::pi;
      for (std::size_t k = 0; k < n; ++k) {
        const double y = static_cast<double>(k) - frac;
        const double den = n % 2 == 0 ? std::tan(pi * y / n) : std::sin(pi * y / n);
        kernel[k] = std::sin(pi * y) / (static_cast<double>(n) * den);
      }
      cached_frac = frac;
      cached_n = n;
    }
    // out[i] = sum_k in[i - m - k] D(k - frac)
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        acc += kernel[k] * in[wrap(static_cast<long long>(i) - m - static_cast<long long>(k), n)];
      }
      out[i] = acc;
    }
    return;
  }

  thread_local std::vector<double> c;
  spline_coefficients(in, c);
  const double e = eta, q = 1.0 - eta;
  const double w0 = q * q * q / 6.0;
  const double w1 = 2.0 / 3.0 - e * e + 0.5 * e * e * e;
  const double w2 = 2.0 / 3.0 - q * q + 0.5 * q * q * q;
  const double w3 = e * e * e / 6.0;
  for (std::size_t i = 0; i < n; ++i) {
    const long long j = static_cast<long long>(i) + base;
    double value = w0 * c[wrap(j - 1, n)] + w1 * c[wrap(j, n)] + w2 * c[wrap(j + 1, n)] +
                   w3 * c[wrap(j + 2, n)];
    if (interp == Interpolation::clamped) {
      const double a = in[wrap(j, n)], b = in[wrap(j + 1, n)];
      value = std::clamp(value, std::min(a, b), std::max(a, b));
    }
    out[i] = value;
  }
}

DistributionFunction free_stream(const DistributionFunction& f, double t, Interpolation interp) {
  const PhaseGrid& g = f.grid();
  DistributionFunction out = f;
  if (t == 0.0) return out;

  const int dim = g.dim();
  const std::size_t n = static_cast<std::size_t>(g.n_x());
  const std::size_t cells = g.x_cells();
  const double inv_dx = 1.0 / g.dx();
  const long long nv = static_cast<long long>(g.v_nodes());

#pragma omp parallel
  {
    std::vector<double> line(n), shifted(n);
#pragma omp for schedule(static)
    for (long long v = 0; v < nv; ++v) {
      const auto vel = g.velocity(static_cast<std::size_t>(v));
      auto row = out.row(static_cast<std::size_t>(v));
      std::size_t stride = 1;
      for (int d = 0; d < dim; ++d) {
        const double s = vel[d] * t * inv_dx;
        // Lines along dimension d: fix every other index.
        for (std::size_t start = 0; start < cells; ++start) {
          if ((start / stride) % n != 0) continue;
          for (std::size_t i = 0; i < n; ++i) line[i] = row[start + i * stride];
          shift_line(line, s, interp, shifted);
          for (std::size_t i = 0; i < n; ++i) row[start + i * stride] = shifted[i];
        }
        stride *= n;
      }
    }
  }

  if (interp == Interpolation::cubic || interp == Interpolation::spectral) {
    out.refresh_nonnegative();
  } else {
    out.set_nonnegative(f.nonnegative());
  }
  return out;
}

DistributionFunction adjoint_stream(const DistributionFunction& f, double t, Interpolation interp) {
  return free_stream(f, -t, interp);
}

double inner_product(const DistributionFunction& f, const DistributionFunction& g) {
  if (!(f.grid() == g.grid())) throw std::invalid_argument("inner_product: grid mismatch");
  const auto a = f.values();
  const auto b = g.values();
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s * f.grid().cell_volume_x() * f.grid().cell_volume_v();
}

}  // namespace boltzlab
