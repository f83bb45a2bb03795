#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "boltzlab/exponents.hpp"

namespace boltzlab {

enum class BoundTerm { gain, loss };

BoundTerm parse_bound_term(std::string_view text);
std::string_view to_string(BoundTerm term);

/// Velocity exponents (p_v, q_v, r_v) of a bilinear bound, as reciprocals.
struct VelocityExponents {
  Rational inv_p;
  Rational inv_q;
  Rational inv_r;
};

/// Sample families and resolutions for the sampled bound ratio.
struct BoundConfig {
  double v_max = 4.0;
  std::vector<int> resolutions{16, 32};  ///< nested: each divides the next
  int samples = 50;
  std::uint64_t seed = 0;
  int angular_nodes = 16;
  double b0 = 1.0;
};

/// Ratios ||Q(f,g)||_{r} / (||f||_{p} ||g||_{q}) over the sampled pairs.
struct BoundSampleReport {
  BoundTerm which = BoundTerm::gain;
  int dim = 2;
  Rational gamma;
  VelocityExponents exponents;
  std::vector<int> resolutions;
  std::vector<std::vector<double>> ratios;  ///< [level][sample]
  std::vector<double> max_ratio;            ///< per level
  int samples = 0;

  /// |max_last - max_first| / max_first.
  double relative_change() const;
};

/// Throws std::invalid_argument unless 1/p + 1/q = 1 + gamma/N + 1/r exactly
/// and every reciprocal lies strictly inside (0, 1).
void check_bound_exponents(const VelocityExponents& e, const Rational& gamma, int dim);

/// Samples (f, g) pairs of velocity-only data and reports the ratio per
/// resolution. The families are Gaussians, boxes of coarse cells and random
/// piecewise-constant fields on the coarsest grid, so every pair is the same
/// function at every resolution (Gaussians up to sampling).
BoundSampleReport verify_bilinear_bound(BoundTerm which, const VelocityExponents& exponents,
                                        int dim, const Rational& gamma,
                                        const BoundConfig& config = {});

/// Several exponent triples sharing one set of collision evaluations.
std::vector<BoundSampleReport> verify_bilinear_bounds(BoundTerm which,
                                                      const std::vector<VelocityExponents>& list,
                                                      int dim, const Rational& gamma,
                                                      const BoundConfig& config = {});

}  // namespace boltzlab
