#include <filesystem>
#include <fstream>

#include "boltzlab/run_config.hpp"
#include "boltzlab/snapshot_io.hpp"
#include "doctest.h"

using namespace boltzlab;

TEST_CASE("defaults resolve the critical family midpoint") {
  const auto c = parse_run_config("[grid]\nN = 2\n");
  CHECK(c.gamma == Rational(0));
  CHECK(c.solver.norm_triplet == default_norm_triplet(2, Rational(0)));
  CHECK(c.solver.norm_triplet == SolverConfig{}.norm_triplet);
  CHECK(c.solver.norm_triplet.inv_p == Rational(11, 16));
  for (int n = 2; n <= 3; ++n) {
    const auto t = default_norm_triplet(n, Rational(2 - n));
    CHECK(theorem1_triplets(t.inv_p, n).dual_window_ok);
    CHECK(theorem2_triplets((Rational(1, 2) + Rational(n + 1, 2 * n)) / 2, Rational(1 - n), n)
              .dual_window_ok);
  }
  CHECK(c.solver.inv_a == Rational(1, 2));
  CHECK(c.t_inf_max == c.solver.horizon);
  const auto c3 = parse_run_config("[grid]\nN = 3\nn_v = 8\nn_x = 4\n");
  CHECK(c3.gamma == Rational(-1));
  CHECK(c3.solver.inv_a == Rational(1, 3));
  CHECK(c3.grid().dim() == 3);
}

TEST_CASE("subcritical gamma selects the subcritical family") {
  const auto c = parse_run_config("[kernel]\ngamma = -1/2\n");
  CHECK(c.solver.inv_a == Rational(3, 8));
  CHECK(kt_admissible(c.solver.norm_triplet, 2).admissible);
  CHECK_THROWS_AS(default_norm_triplet(2, Rational(1, 2)), std::invalid_argument);
}

TEST_CASE("explicit exponents and experiment keys") {
  const auto c = parse_run_config(
      "[solver]\nq = 4\nr = 8/3\np = 8/5\nT = 0.5\ndt = 0.125\ninterpolation = spectral\n"
      "[experiment]\nseed = 17\nt_inf_max = 4\ndata = twostream:amplitude=0.02\n");
  CHECK(c.solver.norm_triplet.inv_p == Rational(5, 8));
  CHECK(c.solver.interpolation == Interpolation::spectral);
  CHECK(c.seed == 17);
  CHECK(c.t_inf_max == 4.0);
  CHECK(c.experiment.at("data") == "twostream:amplitude=0.02");
  const auto json = c.to_json();
  CHECK(json.find("\"spectral\"") != std::string::npos);
  CHECK(json.find("\"8/5\"") != std::string::npos);
}

TEST_CASE("configuration errors name the origin") {
  auto fails = [](const std::string& text) {
    try {
      parse_run_config(text, "t.ini");
    } catch (const std::invalid_argument& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(fails("[grids]\nN = 2\n").find("config t.ini") == 0);
  CHECK(fails("[grid]\nNN = 2\n").find("unknown key") != std::string::npos);
  CHECK_FALSE(fails("[grid]\nn_x = 15\n").empty());
  CHECK_FALSE(fails("[grid]\nn_x = four\n").empty());
  CHECK_FALSE(fails("[solver]\nq = 4\n").empty());
  CHECK_FALSE(fails("[solver]\ndt = 0.3\n").empty());
  CHECK_FALSE(fails("[kernel]\ngamma = 1/3\n").empty());
  CHECK_FALSE(fails("[experiment]\nseed = -1\n").empty());
  CHECK_FALSE(fails("[solver]\ninterpolation = sinc\n").empty());
  CHECK_THROWS_AS(load_run_config("/nonexistent/run.ini"), std::runtime_error);
}

TEST_CASE("initial data specs") {
  const PhaseGrid g(2, 8.0, 16, 4.0, 16);
  const auto z = make_initial_data("zero", g);
  for (double x : z.values()) CHECK(x == 0.0);

  const auto a = make_initial_data("gaussian:amplitude=0.5,x0=4:4,v0=0:0", g);
  const std::vector<double> x0{4, 4}, v0{0, 0};
  const auto ref = make_gaussian(g, x0, v0, 1.0, 1.0, 0.5);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(a.values()[i] == ref.values()[i]);

  const auto ts = make_initial_data("twostream:amplitude=1,u=1.5", g);
  CHECK(ts.nonnegative());
  const std::vector<double> va{1.5, 0.0}, vb{-1.5, 0.0};
  const auto tref = make_gaussian(g, x0, va, 1.0, 1.0, 1.0) + make_gaussian(g, x0, vb, 1.0, 1.0, 1.0);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(ts.values()[i] == doctest::Approx(tref.values()[i]));

  const auto m = make_initial_data("maxwellian:rho=2,T=1", g);
  CHECK(velocity_moment0(m)[0] == doctest::Approx(2.0).epsilon(1e-3));

  CHECK_THROWS_AS(make_initial_data("gaussian:amp=1", g), std::invalid_argument);
  CHECK_THROWS_AS(make_initial_data("gaussian:x0=1:2:3", g), std::invalid_argument);
  CHECK_THROWS_AS(make_initial_data("plasma", g), std::invalid_argument);
  CHECK_THROWS_AS(make_initial_data("gaussian:sigma_x=abc", g), std::invalid_argument);

  const auto dir = std::filesystem::temp_directory_path() / "boltzlab_unit";
  std::filesystem::create_directories(dir);
  write_snapshot(dir / "init.csv", ts, 0.0);
  const auto back = make_initial_data("snapshot:" + (dir / "init.csv").string(), g);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(back.values()[i] == ts.values()[i]);
  CHECK_THROWS_AS(make_initial_data("snapshot:" + (dir / "init.csv").string(), PhaseGrid(2, 8.0, 8, 4.0, 16)),
                  std::invalid_argument);
}
