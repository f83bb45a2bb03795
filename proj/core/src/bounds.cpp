#include "boltzlab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "boltzlab/collision.hpp"
#include "boltzlab/phase_grid.hpp"

namespace boltzlab {

namespace {

// A velocity-only test function, described independently of resolution.
struct Sample {
  enum Kind { gaussian, box, piecewise } kind = gaussian;
  Vec3 center{};
  double sigma = 1.0;
  std::array<int, 3> lo{}, hi{};  // box: coarse cells [lo, hi)
  std::vector<double> cells;      // piecewise: one value per coarse cell
};

Sample draw(std::mt19937_64& rng, int dim, int n_coarse, double v_max, int kind) {
  const double dv_c = 2.0 * v_max / n_coarse;
  Sample s;
  s.kind = static_cast<Sample::Kind>(kind);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  switch (s.kind) {
    case Sample::gaussian:
      for (int d = 0; d < dim; ++d) s.center[d] = (unit(rng) - 0.5) * v_max;
      s.sigma = 2.0 * dv_c + unit(rng) * (0.5 * v_max - 2.0 * dv_c);
      break;
    case Sample::box:
      for (int d = 0; d < dim; ++d) {
        std::uniform_int_distribution<int> width(1, n_coarse / 2);
        const int w = width(rng);
        std::uniform_int_distribution<int> start(0, n_coarse - w);
        s.lo[d] = start(rng);
        s.hi[d] = s.lo[d] + w;
      }
      break;
    case Sample::piecewise: {
      std::size_t count = 1;
      for (int d = 0; d < dim; ++d) count *= static_cast<std::size_t>(n_coarse);
      s.cells.resize(count);
      for (double& c : s.cells) c = unit(rng);
      break;
    }
  }
  return s;
}

double evaluate(const Sample& s, const Vec3& v, int dim, int n_coarse, double v_max) {
  const double dv_c = 2.0 * v_max / n_coarse;
  switch (s.kind) {
    case Sample::gaussian: {
      double r2 = 0.0;
      for (int d = 0; d < dim; ++d) r2 += (v[d] - s.center[d]) * (v[d] - s.center[d]);
      return std::exp(-0.5 * r2 / (s.sigma * s.sigma));
    }
    case Sample::box: {
      for (int d = 0; d < dim; ++d) {
        const int cell = static_cast<int>(std::floor((v[d] + v_max) / dv_c));
        if (cell < s.lo[d] || cell >= s.hi[d]) return 0.0;
      }
      return 1.0;
    }
    case Sample::piecewise: {
      std::size_t flat = 0, stride = 1;
      for (int d = 0; d < dim; ++d) {
        const int cell = static_cast<int>(std::floor((v[d] + v_max) / dv_c));
        flat += static_cast<std::size_t>(cell) * stride;
        stride *= static_cast<std::size_t>(n_coarse);
      }
      return s.cells[flat];
    }
  }
  return 0.0;
}

}  // namespace

BoundTerm parse_bound_term(std::string_view text) {
  if (text == "gain") return BoundTerm::gain;
  if (text == "loss") return BoundTerm::loss;
  throw std::invalid_argument("unknown bound term '" + std::string(text) + "' (gain|loss)");
}

std::string_view to_string(BoundTerm term) {
  return term == BoundTerm::gain ? "gain" : "loss";
}

double BoundSampleReport::relative_change() const {
  if (max_ratio.size() < 2 || max_ratio.front() == 0.0) return 0.0;
  return std::abs(max_ratio.back() - max_ratio.front()) / max_ratio.front();
}

void check_bound_exponents(const VelocityExponents& e, const Rational& gamma, int dim) {
  if (dim < 2 || dim > 3) throw std::invalid_argument("bound: N must be 2 or 3");
  for (const Rational* r : {&e.inv_p, &e.inv_q, &e.inv_r}) {
    if (*r <= 0 || *r >= 1) {
      throw std::invalid_argument("bound: exponents must satisfy 1 < p_v, q_v, r_v < inf");
    }
  }
  if (gamma <= Rational(-dim) || gamma > 0) {
    throw std::invalid_argument("bound: gamma must lie in (-N, 0]");
  }
  if (e.inv_p + e.inv_q != Rational(1) + gamma / Rational(dim) + e.inv_r) {
    throw std::invalid_argument("bound: exponents violate 1/p_v + 1/q_v = 1 + gamma/N + 1/r_v (" +
                                to_string(e.inv_p + e.inv_q) + " vs " +
                                to_string(Rational(1) + gamma / Rational(dim) + e.inv_r) + ")");
  }
}

std::vector<BoundSampleReport> verify_bilinear_bounds(BoundTerm which,
                                                      const std::vector<VelocityExponents>& list,
                                                      int dim, const Rational& gamma,
                                                      const BoundConfig& config) {
  for (const auto& e : list) check_bound_exponents(e, gamma, dim);
  if (config.samples < 1) throw std::invalid_argument("bound: samples must be positive");
  if (config.resolutions.empty()) throw std::invalid_argument("bound: no resolutions given");
  const int n_coarse = config.resolutions.front();
  for (int n : config.resolutions) {
    if (n < n_coarse || n % n_coarse != 0) {
      throw std::invalid_argument("bound: resolutions must be multiples of the first");
    }
  }

  std::mt19937_64 rng(config.seed);
  const auto batch = static_cast<std::size_t>(config.samples);
  std::vector<Sample> fs, gs;
  for (std::size_t s = 0; s < batch; ++s) {
    fs.push_back(draw(rng, dim, n_coarse, config.v_max, static_cast<int>(s % 3)));
    gs.push_back(draw(rng, dim, n_coarse, config.v_max, static_cast<int>((s / 3) % 3)));
  }

  std::vector<BoundSampleReport> reports(list.size());
  for (std::size_t k = 0; k < list.size(); ++k) {
    reports[k].which = which;
    reports[k].dim = dim;
    reports[k].gamma = gamma;
    reports[k].exponents = list[k];
    reports[k].resolutions = config.resolutions;
    reports[k].samples = config.samples;
  }

  for (int n : config.resolutions) {
    const PhaseGrid grid(dim, 1.0, 4, config.v_max, n);
    const auto kernel = make_kernel(grid, to_double(gamma), config.b0, config.angular_nodes);
    const std::size_t nv = grid.v_nodes();
    std::vector<double> f(nv * batch), g(nv * batch), q(nv * batch);
    for (std::size_t v = 0; v < nv; ++v) {
      const Vec3 vel = grid.velocity(v);
      for (std::size_t s = 0; s < batch; ++s) {
        f[v * batch + s] = evaluate(fs[s], vel, dim, n_coarse, config.v_max);
        g[v * batch + s] = evaluate(gs[s], vel, dim, n_coarse, config.v_max);
      }
    }
    if (which == BoundTerm::gain) {
      gain_columns(grid, kernel, f, g, q, batch);
    } else {
      loss_columns(grid, kernel, f, g, q, batch);
    }

    const double cell = grid.cell_volume_v();
    std::vector<double> fc(nv), gc(nv), qc(nv);
    for (auto& rep : reports) rep.ratios.emplace_back();
    for (std::size_t s = 0; s < batch; ++s) {
      for (std::size_t v = 0; v < nv; ++v) {
        fc[v] = f[v * batch + s];
        gc[v] = g[v * batch + s];
        qc[v] = q[v * batch + s];
      }
      for (auto& rep : reports) {
        const double denom = velocity_norm(fc, cell, rep.exponents.inv_p) *
                             velocity_norm(gc, cell, rep.exponents.inv_q);
        rep.ratios.back().push_back(denom > 0.0 ? velocity_norm(qc, cell, rep.exponents.inv_r) / denom
                                                : 0.0);
      }
    }
    for (auto& rep : reports) {
      rep.max_ratio.push_back(*std::max_element(rep.ratios.back().begin(), rep.ratios.back().end()));
    }
  }
  return reports;
}

BoundSampleReport verify_bilinear_bound(BoundTerm which, const VelocityExponents& exponents,
                                        int dim, const Rational& gamma,
                                        const BoundConfig& config) {
  return verify_bilinear_bounds(which, {exponents}, dim, gamma, config).front();
}

}  // namespace boltzlab
