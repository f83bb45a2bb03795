#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "boltzlab/phase_grid.hpp"

namespace boltzlab {

using Vec3 = std::array<double, 3>;

/// Quadrature on the admissible part {theta in [0, pi/2]} of S^{N-1}.
///
/// Nodes are stored in a frame attached to the relative velocity u: component
/// 0 is cos(theta) = omega . u/|u|, components 1 and 2 lie in the plane
/// orthogonal to u. N = 2 uses uniform midpoints in theta in (-pi/2, pi/2);
/// N = 3 uses Gauss-Legendre in cos(theta) on [0, 1] times uniform azimuth.
struct AngularRule {
  int dim = 2;
  std::vector<Vec3> local;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
};

/// `nodes` >= 2 for N = 2. For N = 3, nodes = n_polar * n_azimuth with
/// n_polar = max(2, nodes / 8); `nodes` must be a multiple of n_polar.
AngularRule make_angular_rule(int dim, int nodes);

/// Gauss-Legendre nodes and weights on [0, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre_unit(int n);

/// B(u, omega) = (|u|^2 + eps^2)^{gamma/2} b(cos theta).
struct CollisionKernel {
  int dim = 2;
  double gamma = 0.0;
  double epsilon = 0.0;
  std::function<double(double)> b;
  AngularRule rule;
  std::vector<double> bw;  ///< b(cos theta_i) * weight_i

  /// Regularised kinetic factor as a function of |u|^2.
  double kinetic(double u2) const;
};

/// Validates -N < gamma <= 0. A negative epsilon (the default) selects dv/2.
CollisionKernel make_kernel(const PhaseGrid& grid, double gamma, double b0 = 1.0,
                            int angular_nodes = 16, double epsilon = -1.0);
CollisionKernel make_kernel(const PhaseGrid& grid, double gamma, std::function<double(double)> b,
                            int angular_nodes = 16, double epsilon = -1.0);

/// Quadrature of b over the admissible cap. Throws if b is not finite on a node.
double grad_cutoff_constant(const CollisionKernel& kernel);

/// (v', v*') with v' = v - [omega.(v - v*)] omega and v*' = v* + [omega.(v - v*)] omega.
std::pair<Vec3, Vec3> post_collision(const Vec3& v, const Vec3& v_star, const Vec3& omega);

/// Unit vector omega for node i of the rule, relative to u (any orientation
/// is used when u = 0).
Vec3 angular_node(const AngularRule& rule, std::size_t i, const Vec3& u);

/// Column-batched gain: f, g, out hold `batch` values per velocity node
/// (node-major). out is overwritten.
void gain_columns(const PhaseGrid& grid, const CollisionKernel& kernel, std::span<const double> f,
                  std::span<const double> g, std::span<double> out, std::size_t batch);

/// Column-batched loss f * Lg, same layout as gain_columns.
void loss_columns(const PhaseGrid& grid, const CollisionKernel& kernel, std::span<const double> f,
                  std::span<const double> g, std::span<double> out, std::size_t batch);

DistributionFunction gain_term(const DistributionFunction& f, const DistributionFunction& g,
                               const CollisionKernel& kernel);
DistributionFunction loss_term(const DistributionFunction& f, const DistributionFunction& g,
                               const CollisionKernel& kernel);
/// Q(f, f) = Q+(f, f) - Q-(f, f).
DistributionFunction collision_operator(const DistributionFunction& f,
                                        const CollisionKernel& kernel);

}  // namespace boltzlab
