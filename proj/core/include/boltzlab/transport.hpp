#pragma once

#include <span>
#include <string_view>

#include "boltzlab/phase_grid.hpp"

namespace boltzlab {

/// How off-grid characteristics are resolved in x.
enum class Interpolation {
  cubic,    ///< periodic cubic B-spline interpolation (default); may undershoot
  linear,   ///< periodic linear interpolation; preserves sign
  clamped,  ///< cubic value clamped to the bracketing samples; preserves sign
  spectral, ///< trigonometric interpolation; shifts compose exactly up to the Nyquist mode
};

Interpolation parse_interpolation(std::string_view text);
std::string_view to_string(Interpolation interp);

/// Shifts one periodic line by `shift_cells` grid cells:
/// out[i] = P(i - shift_cells), P the chosen interpolant of `in`.
/// Integer shifts (to within 1e-9 cells) are exact circular rotations.
void shift_line(std::span<const double> in, double shift_cells, Interpolation interp,
                std::span<double> out);

/// Free streaming U(t) f (x, v) = f(x - v t, v) on the periodic torus.
/// Valid for any real t; v is untouched.
DistributionFunction free_stream(const DistributionFunction& f, double t,
                                 Interpolation interp = Interpolation::cubic);

/// U*(t) = U(-t).
DistributionFunction adjoint_stream(const DistributionFunction& f, double t,
                                    Interpolation interp = Interpolation::cubic);

/// Discrete phase-space inner product sum f g dx^N dv^N.
double inner_product(const DistributionFunction& f, const DistributionFunction& g);

}  // namespace boltzlab
