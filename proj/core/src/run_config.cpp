#include "boltzlab/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <json.hpp>

#include "boltzlab/snapshot_io.hpp"

namespace boltzlab {

namespace {

namespace pt = boost::property_tree;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_number(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (trim(text.substr(used)).empty() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw std::invalid_argument(what + ": expected a number, got '" + text + "'");
}

int to_int(const std::string& text, const std::string& what) {
  const double v = to_number(text, what);
  if (v != std::floor(v) || std::abs(v) > 1e9) {
    throw std::invalid_argument(what + ": expected an integer, got '" + text + "'");
  }
  return static_cast<int>(v);
}

// Parses a `key=value,...` list.
std::map<std::string, std::string> parse_params(const std::string& text, const std::string& spec) {
  std::map<std::string, std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("data spec '" + spec + "': expected key=value, got '" + item + "'");
    }
    out[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
  }
  return out;
}

std::vector<double> parse_vector(const std::string& text, int dim, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) out.push_back(to_number(trim(item), what));
  if (static_cast<int>(out.size()) != dim) {
    throw std::invalid_argument(what + ": expected " + std::to_string(dim) + " components");
  }
  return out;
}

class Params {
public:
  Params(std::map<std::string, std::string> values, std::string spec)
      : values_(std::move(values)), spec_(std::move(spec)) {}

  double number(const std::string& key, double fallback) {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    const double v = to_number(it->second, "data spec '" + spec_ + "' key " + key);
    values_.erase(it);
    return v;
  }
  std::vector<double> vec(const std::string& key, std::vector<double> fallback, int dim) {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    auto v = parse_vector(it->second, dim, "data spec '" + spec_ + "' key " + key);
    values_.erase(it);
    return v;
  }
  void finish() const {
    if (!values_.empty()) {
      throw std::invalid_argument("data spec '" + spec_ + "': unknown key '" +
                                  values_.begin()->first + "'");
    }
  }

private:
  std::map<std::string, std::string> values_;
  std::string spec_;
};

}  // namespace

PhaseGrid RunConfig::grid() const { return PhaseGrid(dim, length, n_x, v_max, n_v); }

CollisionKernel RunConfig::kernel() const {
  return make_kernel(grid(), to_double(gamma), b0, angular_nodes, epsilon);
}

std::string RunConfig::to_json() const {
  nlohmann::json j;
  j["grid"] = {{"N", dim}, {"L", length}, {"n_x", n_x}, {"v_max", v_max}, {"n_v", n_v}};
  const auto k = kernel();
  j["kernel"] = {{"gamma", to_string(gamma)},
                 {"b0", b0},
                 {"angular_nodes", angular_nodes},
                 {"epsilon", k.epsilon}};
  const auto& t = solver.norm_triplet;
  j["solver"] = {{"T", solver.horizon},
                 {"dt", solver.dt},
                 {"picard_tol", solver.picard_tol},
                 {"max_iters", solver.max_iters},
                 {"q", exponent_string(t.inv_q)},
                 {"r", exponent_string(t.inv_r)},
                 {"p", exponent_string(t.inv_p)},
                 {"a", exponent_string(solver.inv_a)},
                 {"interpolation", std::string(to_string(solver.interpolation))}};
  nlohmann::json e = {{"seed", seed}, {"t_inf_max", t_inf_max}};
  for (const auto& [key, value] : experiment) e[key] = value;
  j["experiment"] = e;
  return j.dump(2);
}

ExponentTriplet default_norm_triplet(int dim, const Rational& gamma) {
  if (gamma == Rational(2 - dim)) {
    // Middle of the part of the family whose conjugated dual is itself a
    // non-endpoint admissible triplet: (2N+1)/(2N^2) <= 1/p < (N+1)/N^2.
    const Rational mid = (Rational(2 * dim + 1, 2 * dim * dim) + Rational(dim + 1, dim * dim)) / 2;
    return theorem1_triplets(mid, dim).primal;
  }
  if (gamma < Rational(2 - dim)) {
    const Rational alpha = (Rational(1, 2) + Rational(dim + 1, 2 * dim)) / 2;
    return theorem2_triplets(alpha, gamma, dim).primal;
  }
  throw std::invalid_argument("no default norm triplet for gamma > 2 - N; set q, r, p in [solver]");
}

RunConfig parse_run_config(const std::string& text, const std::string& origin) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw std::invalid_argument("config " + origin + ": " + e.message() + " (line " +
                                std::to_string(e.line()) + ")");
  }

  static const std::map<std::string, std::vector<std::string>> known = {
      {"grid", {"N", "L", "n_x", "v_max", "n_v"}},
      {"kernel", {"gamma", "b0", "angular_nodes", "epsilon"}},
      {"solver", {"T", "dt", "picard_tol", "max_iters", "q", "r", "p", "a", "interpolation"}},
      {"experiment", {}},
  };
  for (const auto& [section, body] : tree) {
    auto it = known.find(section);
    if (it == known.end()) {
      throw std::invalid_argument("config " + origin + ": unknown section [" + section + "]");
    }
    if (section == "experiment") continue;
    for (const auto& [key, value] : body) {
      if (std::find(it->second.begin(), it->second.end(), key) == it->second.end()) {
        throw std::invalid_argument("config " + origin + ": unknown key '" + key + "' in [" +
                                    section + "]");
      }
    }
  }

  auto get = [&](const std::string& path) -> std::optional<std::string> {
    auto v = tree.get_optional<std::string>(pt::ptree::path_type(path, '.'));
    if (!v) return std::nullopt;
    return trim(*v);
  };
  auto where = [&](const std::string& path) { return "config " + origin + " " + path; };

  RunConfig c;
  try {
    if (auto v = get("grid.N")) c.dim = to_int(*v, where("grid.N"));
    if (auto v = get("grid.L")) c.length = to_number(*v, where("grid.L"));
    if (auto v = get("grid.n_x")) c.n_x = to_int(*v, where("grid.n_x"));
    if (auto v = get("grid.v_max")) c.v_max = to_number(*v, where("grid.v_max"));
    if (auto v = get("grid.n_v")) c.n_v = to_int(*v, where("grid.n_v"));
    c.gamma = Rational(2 - c.dim);
    if (auto v = get("kernel.gamma")) c.gamma = parse_rational(*v);
    if (auto v = get("kernel.b0")) c.b0 = to_number(*v, where("kernel.b0"));
    if (auto v = get("kernel.angular_nodes")) c.angular_nodes = to_int(*v, where("kernel.angular_nodes"));
    if (auto v = get("kernel.epsilon")) {
      c.epsilon = *v == "auto" ? -1.0 : to_number(*v, where("kernel.epsilon"));
    }

    auto& s = c.solver;
    if (auto v = get("solver.T")) s.horizon = to_number(*v, where("solver.T"));
    if (auto v = get("solver.dt")) s.dt = to_number(*v, where("solver.dt"));
    if (auto v = get("solver.picard_tol")) s.picard_tol = to_number(*v, where("solver.picard_tol"));
    if (auto v = get("solver.max_iters")) s.max_iters = to_int(*v, where("solver.max_iters"));
    if (auto v = get("solver.interpolation")) s.interpolation = parse_interpolation(*v);

    const auto q = get("solver.q"), r = get("solver.r"), p = get("solver.p");
    if (q || r || p) {
      if (!(q && r && p)) throw std::invalid_argument("[solver] q, r, p must be given together");
      s.norm_triplet = {parse_exponent_reciprocal(*q), parse_exponent_reciprocal(*r),
                        parse_exponent_reciprocal(*p)};
    } else {
      s.norm_triplet = default_norm_triplet(c.dim, c.gamma);
    }
    s.inv_a = harmonic_mean(s.norm_triplet.inv_p, s.norm_triplet.inv_r);
    if (auto v = get("solver.a")) s.inv_a = parse_exponent_reciprocal(*v);

    if (auto e = tree.get_child_optional("experiment")) {
      for (const auto& [key, value] : *e) {
        const std::string val = trim(value.data());
        if (key == "seed") {
          const double sd = to_number(val, where("experiment.seed"));
          if (sd < 0 || sd != std::floor(sd)) throw std::invalid_argument(where("experiment.seed") + ": must be a nonnegative integer");
          c.seed = static_cast<std::uint64_t>(sd);
        } else if (key == "t_inf_max") {
          c.t_inf_max = to_number(val, where("experiment.t_inf_max"));
        } else {
          c.experiment[key] = val;
        }
      }
    }
    if (!get("experiment.t_inf_max")) c.t_inf_max = s.horizon;

    (void)c.grid();
    (void)c.kernel();
    s.validate(c.dim);
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    if (msg.rfind("config ", 0) == 0) throw;
    throw std::invalid_argument("config " + origin + ": " + msg);
  }
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_run_config(buffer.str(), path.string());
}

DistributionFunction make_initial_data(const std::string& spec, const PhaseGrid& grid) {
  const auto colon = spec.find(':');
  const std::string family = trim(spec.substr(0, colon));
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  const int dim = grid.dim();
  const std::vector<double> middle(static_cast<std::size_t>(dim), 0.5 * grid.length());
  const std::vector<double> origin(static_cast<std::size_t>(dim), 0.0);

  if (family == "zero") {
    DistributionFunction f(grid);
    f.set_nonnegative(true);
    return f;
  }
  if (family == "snapshot") {
    if (trim(rest).empty()) throw std::invalid_argument("data spec 'snapshot:' needs a path");
    auto snap = read_snapshot(trim(rest));
    if (!(snap.f.grid() == grid)) {
      throw std::invalid_argument("snapshot " + trim(rest) +
                                  ": grid metadata inconsistent with the configured grid");
    }
    snap.f.refresh_nonnegative();
    return std::move(snap.f);
  }

  Params params(parse_params(rest, spec), spec);
  DistributionFunction f(grid);
  if (family == "gaussian") {
    const double amp = params.number("amplitude", 1e-2);
    const double sx = params.number("sigma_x", 1.0);
    const double sv = params.number("sigma_v", 1.0);
    const auto x0 = params.vec("x0", middle, dim);
    const auto v0 = params.vec("v0", origin, dim);
    params.finish();
    f = make_gaussian(grid, x0, v0, sx, sv, amp);
  } else if (family == "twostream") {
    const double amp = params.number("amplitude", 1e-2);
    const double sx = params.number("sigma_x", 1.0);
    const double sv = params.number("sigma_v", 1.0);
    const double u = params.number("u", 1.5);
    const auto x0 = params.vec("x0", middle, dim);
    params.finish();
    std::vector<double> va = origin, vb = origin;
    va[0] = u;
    vb[0] = -u;
    f = make_gaussian(grid, x0, va, sx, sv, amp);
    f += make_gaussian(grid, x0, vb, sx, sv, amp);
    f.refresh_nonnegative();
  } else if (family == "maxwellian") {
    const double rho = params.number("rho", 1.0);
    const double temp = params.number("T", 1.0);
    const auto u = params.vec("u", origin, dim);
    params.finish();
    f = make_maxwellian(grid, rho, u, temp);
  } else {
    throw std::invalid_argument("data spec '" + spec +
                                "': unknown family (gaussian|twostream|maxwellian|zero|snapshot)");
  }
  return f;
}

}  // namespace boltzlab
