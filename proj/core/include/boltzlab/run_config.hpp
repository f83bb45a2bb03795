#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include "boltzlab/collision.hpp"
#include "boltzlab/mild_solver.hpp"

namespace boltzlab {

/// Resolved contents of an INI run configuration:
///
///   [grid]       N, L, n_x, v_max, n_v
///   [kernel]     gamma, b0, angular_nodes, epsilon   (epsilon < 0 or "auto": dv/2)
///   [solver]     T, dt, picard_tol, max_iters, q, r, p, a, interpolation
///   [experiment] seed, t_inf_max, plus free-form keys kept verbatim
///
/// Missing q, r, p default to a member of the admissible family for
/// (N, gamma) whose conjugated dual is also a non-endpoint admissible triplet:
/// the critical family when gamma = 2 - N, the subcritical one (alpha at the
/// middle of its range) when gamma < 2 - N. Missing a defaults to HM(p, r).
struct RunConfig {
  int dim = 2;
  double length = 8.0;
  int n_x = 16;
  double v_max = 4.0;
  int n_v = 16;

  Rational gamma{0};
  double b0 = 1.0;
  int angular_nodes = 16;
  double epsilon = -1.0;

  SolverConfig solver;

  std::uint64_t seed = 0;
  double t_inf_max = 1.0;
  std::map<std::string, std::string> experiment;

  PhaseGrid grid() const;
  CollisionKernel kernel() const;
  /// Full resolved configuration as a JSON object.
  std::string to_json() const;
};

/// Throws std::runtime_error naming the path if it cannot be read, and
/// std::invalid_argument for malformed or inconsistent content.
RunConfig load_run_config(const std::filesystem::path& path);
RunConfig parse_run_config(const std::string& text, const std::string& origin = "<string>");

/// The default triplet for (N, gamma), as described above.
ExponentTriplet default_norm_triplet(int dim, const Rational& gamma);

/// Initial data from a spec string `family:key=value,...`:
///   gaussian:amplitude=0.01,sigma_x=1,sigma_v=1,x0=4:4,v0=0:0
///   twostream:amplitude=0.01,sigma_x=1,sigma_v=1,u=1.5   (two Gaussians at v = +-u e_0)
///   maxwellian:rho=1,T=1,u=0:0
///   zero
///   snapshot:path/to/file.csv    (grid must match)
/// Vector components are separated by ':'; omitted centres default to the
/// middle of the torus and v = 0.
DistributionFunction make_initial_data(const std::string& spec, const PhaseGrid& grid);

}  // namespace boltzlab
