#include "boltzlab/collision.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace boltzlab {

namespace {

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// Orthonormal frame (u_hat, e1, e2) for relative velocity u.
std::array<Vec3, 3> frame(int dim, const Vec3& u) {
  const double norm = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
  Vec3 h = norm > 0.0 ? Vec3{u[0] / norm, u[1] / norm, u[2] / norm} : Vec3{1.0, 0.0, 0.0};
  if (dim == 2) return {h, Vec3{-h[1], h[0], 0.0}, Vec3{0.0, 0.0, 0.0}};
  // Cross with the coordinate axis least aligned with h.
  int axis = 0;
  for (int k = 1; k < 3; ++k) {
    if (std::abs(h[k]) < std::abs(h[axis])) axis = k;
  }
  Vec3 a{0.0, 0.0, 0.0};
  a[axis] = 1.0;
  Vec3 e1 = cross(h, a);
  const double n1 = std::sqrt(e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]);
  for (double& c : e1) c /= n1;
  return {h, e1, cross(h, e1)};
}

void check_batch(const PhaseGrid& grid, const CollisionKernel& kernel, std::size_t f,
                 std::size_t g, std::size_t out, std::size_t batch) {
  if (kernel.dim != grid.dim()) throw std::invalid_argument("collision: kernel/grid dimension mismatch");
  const std::size_t need = grid.v_nodes() * batch;
  if (f != need || g != need || out != need) {
    throw std::invalid_argument("collision: column buffers do not match grid x batch");
  }
}

// Kinetic factor indexed by the multi-index difference of two velocity nodes.
std::vector<double> kinetic_table(const PhaseGrid& grid, const CollisionKernel& kernel) {
  const int n = grid.n_v();
  const int span = 2 * n - 1;
  const int dim = grid.dim();
  std::size_t size = 1;
  for (int d = 0; d < dim; ++d) size *= static_cast<std::size_t>(span);
  std::vector<double> table(size);
  const double dv = grid.dv();
  for (std::size_t k = 0; k < size; ++k) {
    std::size_t rest = k;
    double u2 = 0.0;
    for (int d = 0; d < dim; ++d) {
      const double diff = (static_cast<int>(rest % span) - (n - 1)) * dv;
      rest /= span;
      u2 += diff * diff;
    }
    table[k] = kernel.kinetic(u2);
  }
  return table;
}

std::size_t table_index(const std::array<int, 3>& a, const std::array<int, 3>& b, int dim, int n) {
  const std::size_t span = static_cast<std::size_t>(2 * n - 1);
  std::size_t idx = 0, stride = 1;
  for (int d = 0; d < dim; ++d) {
    idx += static_cast<std::size_t>(a[d] - b[d] + n - 1) * stride;
    stride *= span;
  }
  return idx;
}

// Multilinear stencil of a point in the velocity box: 2^D rows and weights.
// Corners outside the box point at a shared zero row. Returns false when no
// corner lies inside the box.
template <int D>
bool stencil(const Vec3& point, double v_max, double dv, int n, std::size_t batch,
             const double* base, const double* zero, std::array<const double*, (1 << D)>& rows,
             std::array<double, (1 << D)>& weights) {
  std::array<int, D> lo;
  std::array<double, D> t;
  std::array<std::array<bool, 2>, D> valid;
  bool any = true;
  for (int d = 0; d < D; ++d) {
    const double p = (point[d] + v_max) / dv - 0.5;
    const double fl = std::floor(p);
    lo[d] = static_cast<int>(fl);
    t[d] = p - fl;
    valid[d][0] = lo[d] >= 0 && lo[d] < n;
    valid[d][1] = lo[d] + 1 >= 0 && lo[d] + 1 < n;
    if (!valid[d][0] && !valid[d][1]) any = false;
  }
  if (!any) return false;
  for (int c = 0; c < (1 << D); ++c) {
    double w = 1.0;
    bool inside = true;
    std::size_t flat = 0, stride = 1;
    for (int d = 0; d < D; ++d) {
      const int bit = (c >> d) & 1;
      inside = inside && valid[d][bit];
      w *= bit ? t[d] : 1.0 - t[d];
      flat += static_cast<std::size_t>(lo[d] + bit) * stride;
      stride *= static_cast<std::size_t>(n);
    }
    rows[c] = inside ? base + flat * batch : zero;
    weights[c] = inside ? w : 0.0;
  }
  return true;
}

template <int D>
void gain_impl(const PhaseGrid& grid, const CollisionKernel& kernel, const double* f,
               const double* g, double* out, std::size_t batch) {
  constexpr int C = 1 << D;
  const int n = grid.n_v();
  const long long nv = static_cast<long long>(grid.v_nodes());
  const double dv = grid.dv();
  const double v_max = grid.v_max();
  const double cell = grid.cell_volume_v();
  const auto table = kinetic_table(grid, kernel);
  const std::vector<double> zero(batch, 0.0);
  const std::size_t nodes = kernel.rule.size();

  std::vector<Vec3> vel(grid.v_nodes());
  std::vector<std::array<int, 3>> multi(grid.v_nodes());
  for (std::size_t i = 0; i < vel.size(); ++i) {
    vel[i] = grid.velocity(i);
    multi[i] = grid.v_multi(i);
  }

#pragma omp parallel for schedule(dynamic, 1)
  for (long long iv = 0; iv < nv; ++iv) {
    double* acc = out + static_cast<std::size_t>(iv) * batch;
    std::fill(acc, acc + batch, 0.0);
    const Vec3& v = vel[static_cast<std::size_t>(iv)];
    std::array<const double*, C> fr, gr;
    std::array<double, C> fw, gw;
    for (std::size_t jv = 0; jv < vel.size(); ++jv) {
      const Vec3& vs = vel[jv];
      const Vec3 u{v[0] - vs[0], v[1] - vs[1], v[2] - vs[2]};
      const double kin =
          cell * table[table_index(multi[static_cast<std::size_t>(iv)], multi[jv], D, n)];
      const auto axes = frame(D, u);
      for (std::size_t i = 0; i < nodes; ++i) {
        const double coef = kin * kernel.bw[i];
        if (coef == 0.0) continue;
        const Vec3& loc = kernel.rule.local[i];
        Vec3 omega{};
        for (int d = 0; d < 3; ++d) {
          omega[d] = loc[0] * axes[0][d] + loc[1] * axes[1][d] + loc[2] * axes[2][d];
        }
        const double s = omega[0] * u[0] + omega[1] * u[1] + omega[2] * u[2];
        const Vec3 vp{v[0] - s * omega[0], v[1] - s * omega[1], v[2] - s * omega[2]};
        const Vec3 vsp{vs[0] + s * omega[0], vs[1] + s * omega[1], vs[2] + s * omega[2]};
        if (!stencil<D>(vp, v_max, dv, n, batch, f, zero.data(), fr, fw)) continue;
        if (!stencil<D>(vsp, v_max, dv, n, batch, g, zero.data(), gr, gw)) continue;
        for (std::size_t b = 0; b < batch; ++b) {
          double a = 0.0, c = 0.0;
          for (int k = 0; k < C; ++k) {
            a += fw[k] * fr[k][b];
            c += gw[k] * gr[k][b];
          }
          acc[b] += coef * a * c;
        }
      }
    }
  }
}

}  // namespace

std::pair<std::vector<double>, std::vector<double>> gauss_legendre_unit(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre_unit: need at least one node");
  std::vector<double> x(n), w(n);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double step = p1 / dp;
      z -= step;
      if (std::abs(step) < 1e-16) break;
    }
    // Map [-1, 1] -> [0, 1].
    x[n - 1 - i] = 0.5 * (z + 1.0);
    w[n - 1 - i] = 1.0 / ((1.0 - z * z) * dp * dp);
  }
  return {x, w};
}

AngularRule make_angular_rule(int dim, int nodes) {
  AngularRule rule;
  rule.dim = dim;
  const double pi = std::numbers::pi;
  if (dim == 2) {
    if (nodes < 2) throw std::invalid_argument("angular rule: N=2 needs at least 2 nodes");
    for (int k = 0; k < nodes; ++k) {
      const double theta = -0.5 * pi + (k + 0.5) * pi / nodes;
      rule.local.push_back({std::cos(theta), std::sin(theta), 0.0});
      rule.weights.push_back(pi / nodes);
    }
    return rule;
  }
  if (dim != 3) throw std::invalid_argument("angular rule: dimension must be 2 or 3");
  const int n_polar = std::max(2, nodes / 8);
  if (nodes < 4 || nodes % n_polar != 0) {
    throw std::invalid_argument("angular rule: N=3 node count " + std::to_string(nodes) +
                                " is not n_polar x n_azimuth with n_polar = max(2, nodes/8)");
  }
  const int n_az = nodes / n_polar;
  const auto [mu, wmu] = gauss_legendre_unit(n_polar);
  for (int i = 0; i < n_polar; ++i) {
    const double s = std::sqrt(std::max(0.0, 1.0 - mu[i] * mu[i]));
    for (int k = 0; k < n_az; ++k) {
      const double phi = 2.0 * pi * (k + 0.5) / n_az;
      rule.local.push_back({mu[i], s * std::cos(phi), s * std::sin(phi)});
      rule.weights.push_back(wmu[i] * 2.0 * pi / n_az);
    }
  }
  return rule;
}

double CollisionKernel::kinetic(double u2) const {
  if (gamma == 0.0) return 1.0;
  return std::pow(u2 + epsilon * epsilon, 0.5 * gamma);
}

CollisionKernel make_kernel(const PhaseGrid& grid, double gamma, double b0, int angular_nodes,
                            double epsilon) {
  return make_kernel(grid, gamma, [b0](double) { return b0; }, angular_nodes, epsilon);
}

CollisionKernel make_kernel(const PhaseGrid& grid, double gamma, std::function<double(double)> b,
                            int angular_nodes, double epsilon) {
  const int dim = grid.dim();
  if (!(gamma > -dim && gamma <= 0.0)) {
    throw std::invalid_argument("kernel: gamma must lie in (-N, 0], got " + std::to_string(gamma));
  }
  if (!b) throw std::invalid_argument("kernel: empty angular function");
  CollisionKernel k;
  k.dim = dim;
  k.gamma = gamma;
  k.epsilon = epsilon < 0.0 ? 0.5 * grid.dv() : epsilon;
  if (gamma < 0.0 && k.epsilon == 0.0) {
    throw std::invalid_argument("kernel: gamma < 0 needs epsilon > 0 on a node grid");
  }
  k.b = std::move(b);
  k.rule = make_angular_rule(dim, angular_nodes);
  k.bw.resize(k.rule.size());
  for (std::size_t i = 0; i < k.rule.size(); ++i) {
    const double value = k.b(k.rule.local[i][0]);
    if (!std::isfinite(value)) throw std::invalid_argument("kernel: b is not finite on a node");
    k.bw[i] = value * k.rule.weights[i];
  }
  return k;
}

double grad_cutoff_constant(const CollisionKernel& kernel) {
  double total = 0.0;
  for (std::size_t i = 0; i < kernel.rule.size(); ++i) {
    const double value = kernel.b(kernel.rule.local[i][0]);
    if (!std::isfinite(value)) throw std::invalid_argument("grad_cutoff_constant: b not finite");
    total += value * kernel.rule.weights[i];
  }
  return total;
}

std::pair<Vec3, Vec3> post_collision(const Vec3& v, const Vec3& v_star, const Vec3& omega) {
  double s = 0.0;
  for (int d = 0; d < 3; ++d) s += omega[d] * (v[d] - v_star[d]);
  Vec3 vp, vsp;
  for (int d = 0; d < 3; ++d) {
    vp[d] = v[d] - s * omega[d];
    vsp[d] = v_star[d] + s * omega[d];
  }
  return {vp, vsp};
}

Vec3 angular_node(const AngularRule& rule, std::size_t i, const Vec3& u) {
  const auto axes = frame(rule.dim, u);
  const Vec3& loc = rule.local.at(i);
  Vec3 omega{};
  for (int d = 0; d < 3; ++d) {
    omega[d] = loc[0] * axes[0][d] + loc[1] * axes[1][d] + loc[2] * axes[2][d];
  }
  return omega;
}

void gain_columns(const PhaseGrid& grid, const CollisionKernel& kernel, std::span<const double> f,
                  std::span<const double> g, std::span<double> out, std::size_t batch) {
  check_batch(grid, kernel, f.size(), g.size(), out.size(), batch);
  if (grid.dim() == 2) {
    gain_impl<2>(grid, kernel, f.data(), g.data(), out.data(), batch);
  } else {
    gain_impl<3>(grid, kernel, f.data(), g.data(), out.data(), batch);
  }
}

void loss_columns(const PhaseGrid& grid, const CollisionKernel& kernel, std::span<const double> f,
                  std::span<const double> g, std::span<double> out, std::size_t batch) {
  check_batch(grid, kernel, f.size(), g.size(), out.size(), batch);
  const auto table = kinetic_table(grid, kernel);
  const double scale = grad_cutoff_constant(kernel) * grid.cell_volume_v();
  const int dim = grid.dim();
  const int n = grid.n_v();
  const long long nv = static_cast<long long>(grid.v_nodes());
  std::vector<std::array<int, 3>> multi(grid.v_nodes());
  for (std::size_t i = 0; i < multi.size(); ++i) multi[i] = grid.v_multi(i);

#pragma omp parallel
  {
    std::vector<double> lg(batch);
#pragma omp for schedule(static)
    for (long long iv = 0; iv < nv; ++iv) {
      std::fill(lg.begin(), lg.end(), 0.0);
      const auto& mi = multi[static_cast<std::size_t>(iv)];
      for (std::size_t jv = 0; jv < multi.size(); ++jv) {
        const double k = table[table_index(mi, multi[jv], dim, n)];
        const double* gr = g.data() + jv * batch;
        for (std::size_t b = 0; b < batch; ++b) lg[b] += k * gr[b];
      }
      const double* fr = f.data() + static_cast<std::size_t>(iv) * batch;
      double* o = out.data() + static_cast<std::size_t>(iv) * batch;
      for (std::size_t b = 0; b < batch; ++b) o[b] = scale * fr[b] * lg[b];
    }
  }
}

DistributionFunction gain_term(const DistributionFunction& f, const DistributionFunction& g,
                               const CollisionKernel& kernel) {
  if (!(f.grid() == g.grid())) throw std::invalid_argument("gain_term: grid mismatch");
  DistributionFunction out(f.grid());
  gain_columns(f.grid(), kernel, f.values(), g.values(), out.values(), f.grid().x_cells());
  out.set_nonnegative(f.nonnegative() && g.nonnegative() && kernel.b &&
                      std::all_of(kernel.bw.begin(), kernel.bw.end(),
                                  [](double w) { return w >= 0.0; }));
  return out;
}

DistributionFunction loss_term(const DistributionFunction& f, const DistributionFunction& g,
                               const CollisionKernel& kernel) {
  if (!(f.grid() == g.grid())) throw std::invalid_argument("loss_term: grid mismatch");
  DistributionFunction out(f.grid());
  loss_columns(f.grid(), kernel, f.values(), g.values(), out.values(), f.grid().x_cells());
  return out;
}

DistributionFunction collision_operator(const DistributionFunction& f,
                                        const CollisionKernel& kernel) {
  DistributionFunction q = gain_term(f, f, kernel);
  q -= loss_term(f, f, kernel);
  q.set_nonnegative(false);
  return q;
}

}  // namespace boltzlab
