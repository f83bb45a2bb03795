#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "boltzlab/bounds.hpp"
#include "boltzlab/exponents.hpp"
#include "boltzlab/mild_solver.hpp"
#include "boltzlab/run_config.hpp"
#include "boltzlab/scattering.hpp"
#include "boltzlab/snapshot_io.hpp"
#include "boltzlab/transport.hpp"

namespace boltzlab::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

// Thrown when a run completes but the fixed-point iteration did not converge.
struct NotConverged : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
  if (!f) throw std::runtime_error("failed writing " + path.string());
}

fs::path prepare_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw std::runtime_error("cannot create output directory " + dir);
  return fs::path(dir);
}

void write_trace_csv(const fs::path& path, const SolutionTrajectory& traj) {
  std::ostringstream s;
  s << "t,norm_a,norm_rp\n";
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
    s << fmt(traj.time(k)) << ',' << fmt(traj.norm_a.values[k]) << ','
      << fmt(traj.norm_rp.values[k]) << '\n';
  }
  write_text(path, s.str());
}

void write_picard_csv(const fs::path& path, const std::vector<double>& deltas) {
  std::ostringstream s;
  s << "iter,delta,ratio\n";
  for (std::size_t n = 0; n < deltas.size(); ++n) {
    s << n << ',' << fmt(deltas[n]) << ',';
    if (n > 0) s << fmt(deltas[n - 1] > 0.0 ? deltas[n] / deltas[n - 1] : 0.0);
    s << '\n';
  }
  write_text(path, s.str());
}

void write_snapshots(const fs::path& dir, const SolutionTrajectory& traj, const std::string& mode) {
  if (mode == "none") return;
  const fs::path sub = dir / "snapshots";
  fs::create_directories(sub);
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
    if (mode == "final" && k + 1 != traj.snapshots.size()) continue;
    char name[32];
    std::snprintf(name, sizeof name, "f_%05zu.csv", k);
    write_snapshot(sub / name, traj.snapshots[k], traj.time(k));
  }
}

json triplet_json(const ExponentTriplet& t) {
  return {{"q", exponent_string(t.inv_q)},
          {"r", exponent_string(t.inv_r)},
          {"p", exponent_string(t.inv_p)}};
}

json base_summary(const std::string& command, int threads, std::uint64_t seed) {
  return {{"command", command}, {"version", kVersion}, {"threads", threads}, {"seed", seed}};
}

int apply_threads(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
  return omp_get_max_threads();
#else
  (void)threads;
  return 1;
#endif
}

const char* kTracesSchema =
    "traces.csv  columns t,norm_a,norm_rp: time, ||f(t)||_{L^a_{x,v}}, ||f(t)||_{L^r_x L^p_v}\n";
const char* kPicardSchema =
    "picard.csv  columns iter,delta,ratio: iteration n, sup_t ||f^{n+1}-f^n||_{L^a}, delta_n/delta_{n-1} (empty for n=0)\n";
const char* kSnapshotSchema =
    "snapshots   first line '# {json grid metadata}', then ix0,ix1[,ix2],iv0,iv1[,iv2],value\n";
const char* kSummarySchema =
    "summary.json  resolved configuration (grid, kernel, solver, experiment, seed, threads) and results\n";

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"boltzlab: mild solutions, collision bounds and scattering for the cut-off "
               "soft-potential Boltzmann equation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  int threads = 0;
  std::uint64_t seed = 0;
  app.add_option("--threads", threads, "OpenMP threads (default: all available)")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", seed, "Seed for randomised sample families (default 0)");

  std::function<int()> action;

  // admissible
  auto* adm = app.add_subcommand("admissible", "KT-admissibility report of (q, r, p) as JSON");
  int adm_dim = 2;
  std::string adm_q, adm_r, adm_p;
  adm->add_option("--N", adm_dim, "Dimension (1, 2 or 3)")->required();
  adm->add_option("--q", adm_q, "q as integer, a/b or inf")->required();
  adm->add_option("--r", adm_r, "r as integer, a/b or inf")->required();
  adm->add_option("--p", adm_p, "p as integer, a/b or inf")->required();
  adm->footer("Output: JSON {N,q,r,p,admissible,is_endpoint,violated_conditions,a}");
  adm->callback([&] {
    action = [&] {
      const ExponentTriplet t{parse_exponent_reciprocal(adm_q), parse_exponent_reciprocal(adm_r),
                              parse_exponent_reciprocal(adm_p)};
      const auto rep = kt_admissible(t, adm_dim);
      json j = triplet_json(t);
      j["N"] = adm_dim;
      j["admissible"] = rep.admissible;
      j["is_endpoint"] = rep.is_endpoint;
      j["violated_conditions"] = rep.violated_conditions;
      j["a"] = exponent_string(rep.inv_a);
      out << j.dump(2) << '\n';
      return ok;
    };
  });

  // region
  auto* reg = app.add_subcommand("region", "Feasible (1/p, 1/r) lattice points as CSV");
  int reg_dim = 2;
  std::string reg_gamma, reg_mode = "equality", reg_out;
  std::int64_t reg_den = 120;
  reg->add_option("--N", reg_dim, "Dimension (2 or 3)")->required();
  reg->add_option("--gamma", reg_gamma, "Kinetic exponent gamma in (-N, 0], rational")->required();
  reg->add_option("--mode", reg_mode, "equality | strict")->capture_default_str();
  reg->add_option("--denominator", reg_den, "Lattice denominator")->capture_default_str();
  reg->add_option("--out", reg_out, "CSV file (default: stdout)");
  reg->footer("CSV columns inv_p,inv_r,inv_q,a (exact rationals; a as an exponent, 'inf' for infinity)");
  reg->callback([&] {
    action = [&] {
      const auto points = feasibility_scan(parse_rational(reg_gamma), reg_dim,
                                           parse_feasibility_mode(reg_mode), reg_den);
      std::ostringstream s;
      s << "inv_p,inv_r,inv_q,a\n";
      for (const auto& pt : points) {
        s << to_string(pt.inv_p) << ',' << to_string(pt.inv_r) << ',' << to_string(pt.inv_q) << ','
          << exponent_string(pt.inv_a) << '\n';
      }
      if (reg_out.empty()) {
        out << s.str();
      } else {
        write_text(reg_out, s.str());
      }
      return ok;
    };
  });

  // norm
  auto* nrm = app.add_subcommand("norm", "Mixed Lebesgue norms of one or more snapshots");
  std::vector<std::string> nrm_files;
  std::string nrm_q = "inf", nrm_r, nrm_p;
  nrm->add_option("--snapshot", nrm_files, "Snapshot file(s); several give a time series")->required();
  nrm->add_option("--q", nrm_q, "Time exponent q (used for a time series)")->capture_default_str();
  nrm->add_option("--r", nrm_r, "Space exponent r")->required();
  nrm->add_option("--p", nrm_p, "Velocity exponent p")->required();
  nrm->footer("Output: JSON {q,r,p,a,snapshots:[{file,time,norm_rp,norm_a}],time_norm}");
  nrm->callback([&] {
    action = [&] {
      const Rational iq = parse_exponent_reciprocal(nrm_q), ir = parse_exponent_reciprocal(nrm_r),
                     ip = parse_exponent_reciprocal(nrm_p);
      const Rational ia = harmonic_mean(ip, ir);
      json j = triplet_json({iq, ir, ip});
      j["a"] = exponent_string(ia);
      NormTrace trace;
      for (const auto& file : nrm_files) {
        const auto snap = read_snapshot(file);
        const double v = mixed_norm_xv(snap.f, ir, ip);
        j["snapshots"].push_back({{"file", file},
                                  {"time", snap.time},
                                  {"norm_rp", v},
                                  {"norm_a", lebesgue_norm_a(snap.f, ia)}});
        trace.times.push_back(snap.time);
        trace.values.push_back(v);
      }
      if (trace.times.size() > 1) {
        trace.validate();
        j["time_norm"] = time_norm(trace, iq);
      } else {
        j["time_norm"] = nullptr;
      }
      out << j.dump(2) << '\n';
      return ok;
    };
  });

  // stream
  auto* str = app.add_subcommand("stream", "Free streaming U(t) of a snapshot");
  std::string str_in, str_out, str_interp = "cubic";
  double str_t = 0.0;
  str->add_option("--snapshot", str_in, "Input snapshot")->required();
  str->add_option("--t", str_t, "Time (any real)")->required();
  str->add_option("--out", str_out, "Output snapshot file")->required();
  str->add_option("--interpolation", str_interp, "cubic | linear | clamped | spectral")->capture_default_str();
  str->footer(std::string(kSnapshotSchema) + "Also writes <out>.summary.json");
  str->callback([&] {
    action = [&] {
      const auto snap = read_snapshot(str_in);
      const auto interp = parse_interpolation(str_interp);
      const auto f = free_stream(snap.f, str_t, interp);
      write_snapshot(str_out, f, snap.time + str_t);
      json s = base_summary("stream", apply_threads(threads), seed);
      s["input"] = str_in;
      s["t"] = str_t;
      s["interpolation"] = str_interp;
      s["grid"] = json::parse(grid_metadata_json(f.grid(), snap.time + str_t));
      write_text(str_out + ".summary.json", s.dump(2) + "\n");
      return ok;
    };
  });

  // verify-bounds
  auto* vb = app.add_subcommand("verify-bounds", "Sampled bilinear bound ratios as JSON");
  std::string vb_which = "gain", vb_gamma, vb_pv, vb_qv, vb_rv, vb_out;
  int vb_dim = 2;
  BoundConfig vb_cfg;
  vb->add_option("--which", vb_which, "gain | loss")->capture_default_str();
  vb->add_option("--N", vb_dim, "Dimension (2 or 3)")->required();
  vb->add_option("--gamma", vb_gamma, "gamma in (-N, 0], rational")->required();
  vb->add_option("--pv", vb_pv, "p_v")->required();
  vb->add_option("--qv", vb_qv, "q_v")->required();
  vb->add_option("--rv", vb_rv, "r_v")->required();
  vb->add_option("--samples", vb_cfg.samples, "Number of (f, g) pairs")->capture_default_str();
  vb->add_option("--resolutions", vb_cfg.resolutions, "Nested n_v values, e.g. 16,32")
      ->delimiter(',')
      ->capture_default_str();
  vb->add_option("--v-max", vb_cfg.v_max, "Velocity box half-width")->capture_default_str();
  vb->add_option("--angular-nodes", vb_cfg.angular_nodes, "Angular quadrature nodes")->capture_default_str();
  vb->add_option("--out", vb_out, "Directory for report.json and summary.json (default: stdout)");
  vb->footer("Output: JSON {which,N,gamma,pv,qv,rv,samples,resolutions,max_ratio,relative_change,ratios}");
  vb->callback([&] {
    action = [&] {
      vb_cfg.seed = seed;
      const VelocityExponents e{parse_exponent_reciprocal(vb_pv), parse_exponent_reciprocal(vb_qv),
                                parse_exponent_reciprocal(vb_rv)};
      const int nthreads = apply_threads(threads);
      const auto rep = verify_bilinear_bound(parse_bound_term(vb_which), e, vb_dim,
                                             parse_rational(vb_gamma), vb_cfg);
      json j = {{"which", vb_which},
                {"N", vb_dim},
                {"gamma", to_string(rep.gamma)},
                {"pv", vb_pv},
                {"qv", vb_qv},
                {"rv", vb_rv},
                {"samples", rep.samples},
                {"resolutions", rep.resolutions},
                {"max_ratio", rep.max_ratio},
                {"relative_change", rep.relative_change()},
                {"ratios", rep.ratios}};
      if (vb_out.empty()) {
        out << j.dump(2) << '\n';
      } else {
        const auto dir = prepare_dir(vb_out);
        write_text(dir / "report.json", j.dump(2) + "\n");
        json s = base_summary("verify-bounds", nthreads, seed);
        s["config"] = {{"v_max", vb_cfg.v_max}, {"angular_nodes", vb_cfg.angular_nodes},
                       {"b0", vb_cfg.b0}, {"samples", vb_cfg.samples},
                       {"resolutions", vb_cfg.resolutions}};
        s["result"] = j;
        write_text(dir / "summary.json", s.dump(2) + "\n");
      }
      return ok;
    };
  });

  // simulate
  auto* sim = app.add_subcommand("simulate", "Picard solution of the mild equation on [0, T]");
  std::string sim_cfg, sim_data, sim_out, sim_snaps = "all";
  sim->add_option("--config", sim_cfg, "INI run configuration")->required();
  sim->add_option("--data", sim_data, "Initial data spec, e.g. gaussian:amplitude=0.01")->required();
  sim->add_option("--out", sim_out, "Output directory")->required();
  sim->add_option("--snapshots", sim_snaps, "all | final | none")->capture_default_str();
  sim->footer(std::string("Writes:\n  ") + kTracesSchema + "  " + kPicardSchema + "  " +
              kSnapshotSchema + "  " + kSummarySchema + "Exit 2 when Picard does not converge.");
  sim->callback([&] {
    action = [&] {
      const auto cfg = load_run_config(sim_cfg);
      const auto grid = cfg.grid();
      const auto f0 = make_initial_data(sim_data, grid);
      const int nthreads = apply_threads(threads);
      const auto dir = prepare_dir(sim_out);
      const auto res = picard_solve(f0, cfg.kernel(), cfg.solver);
      write_trace_csv(dir / "traces.csv", res.trajectory);
      write_picard_csv(dir / "picard.csv", res.deltas);
      write_snapshots(dir, res.trajectory, sim_snaps);
      json s = base_summary("simulate", nthreads, cfg.seed);
      s["config"] = json::parse(cfg.to_json());
      s["data"] = sim_data;
      s["result"] = {{"converged", res.converged},
                     {"iterations", res.iterations},
                     {"deltas", res.deltas},
                     {"contraction_ratios", res.contraction_ratios},
                     {"strichartz_norm", strichartz_norm(res.trajectory, cfg.solver)},
                     {"data_norm_a", lebesgue_norm_a(f0, cfg.solver.inv_a)}};
      write_text(dir / "summary.json", s.dump(2) + "\n");
      if (!res.converged) throw NotConverged("Picard iteration did not converge within max_iters");
      return ok;
    };
  });

  // scatter
  auto* sca = app.add_subcommand("scatter", "Scattering state f+ and defect trace");
  std::string sca_cfg, sca_data, sca_out;
  sca->add_option("--config", sca_cfg, "INI run configuration ([experiment] t_inf_max caps T)")->required();
  sca->add_option("--data", sca_data, "Initial data spec")->required();
  sca->add_option("--out", sca_out, "Output directory")->required();
  sca->footer(std::string("Writes:\n  defect.csv  columns t,defect: ||U(-t)f(t) - f+||_{L^a}\n  ") +
              kTracesSchema + "  " + kPicardSchema +
              "  fplus.csv   snapshot of f+ (time = T_inf)\n  " + kSummarySchema +
              "Exit 2 when Picard does not converge.");
  sca->callback([&] {
    action = [&] {
      const auto cfg = load_run_config(sca_cfg);
      const auto f0 = make_initial_data(sca_data, cfg.grid());
      const int nthreads = apply_threads(threads);
      const auto dir = prepare_dir(sca_out);
      const auto res = scatter_adaptive(f0, cfg.kernel(), cfg.solver, cfg.t_inf_max);
      write_trace_csv(dir / "traces.csv", res.run.trajectory);
      write_picard_csv(dir / "picard.csv", res.run.deltas);
      json s = base_summary("scatter", nthreads, cfg.seed);
      s["config"] = json::parse(cfg.to_json());
      s["data"] = sca_data;
      s["result"] = {{"converged", res.run.converged}, {"iterations", res.run.iterations},
                     {"t_inf", res.t_inf}, {"plateau", res.plateau},
                     {"last_quarter_increment", res.last_quarter_increment}};
      if (res.run.converged) {
        std::ostringstream d;
        d << "t,defect\n";
        for (std::size_t k = 0; k < res.defect.times.size(); ++k) {
          d << fmt(res.defect.times[k]) << ',' << fmt(res.defect.values[k]) << '\n';
        }
        write_text(dir / "defect.csv", d.str());
        write_snapshot(dir / "fplus.csv", res.f_plus, res.t_inf);
        s["result"]["fplus_norm_a"] = lebesgue_norm_a(res.f_plus, cfg.solver.inv_a);
      }
      write_text(dir / "summary.json", s.dump(2) + "\n");
      if (!res.run.converged) throw NotConverged("Picard iteration did not converge within max_iters");
      return ok;
    };
  });

  // wave
  auto* wav = app.add_subcommand("wave", "Wave operator: initial datum scattering to f+");
  std::string wav_cfg, wav_fplus, wav_out;
  wav->add_option("--config", wav_cfg, "INI run configuration (T is the truncation T_inf)")->required();
  wav->add_option("--fplus", wav_fplus, "Snapshot of f+")->required();
  wav->add_option("--out", wav_out, "Output directory")->required();
  wav->footer(std::string("Writes:\n  f0.csv      snapshot of the recovered initial datum\n  ") +
              kPicardSchema + "  " + kSummarySchema + "Exit 2 when the backward iteration does not converge.");
  wav->callback([&] {
    action = [&] {
      const auto cfg = load_run_config(wav_cfg);
      auto snap = read_snapshot(wav_fplus);
      if (!(snap.f.grid() == cfg.grid())) {
        throw std::invalid_argument("snapshot " + wav_fplus +
                                    ": grid metadata inconsistent with the configured grid");
      }
      const int nthreads = apply_threads(threads);
      const auto dir = prepare_dir(wav_out);
      const auto res = wave_operator(snap.f, cfg.kernel(), cfg.solver);
      write_snapshot(dir / "f0.csv", res.f0, 0.0);
      write_picard_csv(dir / "picard.csv", res.deltas);
      json s = base_summary("wave", nthreads, cfg.seed);
      s["config"] = json::parse(cfg.to_json());
      s["fplus"] = wav_fplus;
      s["result"] = {{"converged", res.converged}, {"iterations", res.iterations},
                     {"deltas", res.deltas},
                     {"f0_norm_a", lebesgue_norm_a(res.f0, cfg.solver.inv_a)}};
      write_text(dir / "summary.json", s.dump(2) + "\n");
      if (!res.converged) throw NotConverged("backward iteration did not converge within max_iters");
      return ok;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return invalid;
  }

  try {
    apply_threads(threads);
    return action ? action() : invalid;
  } catch (const NotConverged& e) {
    err << "not converged: " << e.what() << '\n';
    return not_converged;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return invalid;
  }
}

int run(int argc, const char* const* argv) { return run(argc, argv, std::cout, std::cerr); }

}  // namespace boltzlab::cli
