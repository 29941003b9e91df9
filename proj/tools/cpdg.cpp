// Command-line front end: `cpdg run` and `cpdg converge`.
#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "cpdg/driver.hpp"

namespace {

void print_result(const cpdg::RunResult& r) {
  std::printf("steps %d  t %.6e  dt %.6e  cfl %.3f  %s\n", r.steps, r.t, r.dt, r.cfl,
              r.integrator.c_str());
  std::printf("E_h %.10e -> %.10e   E*_h %.10e -> %.10e\n", r.energy_initial.e_h,
              r.energy_final.e_h, r.energy_initial.e_star, r.energy_final.e_star);
  std::printf("compat drift (rel) %.3e   div (rel) %.3e\n", r.max_drift_rel, r.max_div_rel);
  if (r.errors) {
    std::printf("D  L1 %.6e  L2 %.6e\nBz L1 %.6e  L2 %.6e\n", r.errors->d_l1, r.errors->d_l2,
                r.errors->bz_l1, r.errors->bz_l2);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constraint-preserving FR/DG solver for 2-D TE Maxwell"};
  app.require_subcommand(1);

  cpdg::RunConfig rc;
  std::string config_path;
  std::optional<int> nx, ny;
  std::optional<double> cfl, t_final;
  std::optional<std::string> integrator;
  bool quiet = false;

  auto* run = app.add_subcommand("run", "Advance one problem and write diagnostics");
  run->add_option("--config", config_path, "key = value file; flags given on the command line win");
  run->add_option("--problem", rc.problem, "planewave, gaussian_pulse, refraction, tir");
  run->add_option("--k", rc.k, "polynomial degree (0..4)");
  run->add_option("--nx", nx, "cells in x");
  run->add_option("--ny", ny, "cells in y");
  run->add_option("--cfl", cfl, "CFL number (default depends on k)");
  run->add_option("--integrator", integrator, "ssprk1, ssprk2, ssprk3, ssprk54, rk4");
  run->add_option("--t-final", t_final, "final time in seconds");
  run->add_option("--out", rc.output_dir, "output directory");
  run->add_option("--snapshot-every", rc.snapshot_every, "steps between snapshots (0: none)");
  run->add_option("--energy-every", rc.energy_every, "steps between energy.csv rows");
  run->add_option("--threads", rc.threads, "worker threads (default: available cores)");
  run->add_flag("--quiet", quiet, "no progress log");

  cpdg::ConvergenceConfig cc;
  auto* conv = app.add_subcommand("converge", "Error table over a sequence of meshes");
  conv->add_option("--problem", cc.problem, "problem name");
  conv->add_option("--k", cc.orders, "degrees, e.g. --k 1 2 3")->expected(1, -1);
  conv->add_option("--meshes", cc.meshes, "cells per side, e.g. --meshes 16 32 64")
      ->expected(1, -1);
  conv->add_option("--cfl", cc.cfl, "CFL number");
  conv->add_option("--integrator", cc.integrator, "time integrator");
  conv->add_option("--t-final", cc.t_final, "final time in seconds");
  conv->add_option("--out", cc.output_dir, "output directory");
  conv->add_option("--threads", cc.threads, "worker threads (default: available cores)");
  conv->add_flag("--quiet", quiet, "no progress log");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      cpdg::RunConfig cfg = rc;
      if (!config_path.empty()) {
        cfg = cpdg::load_config_file(config_path);
        // Command-line values override the file.
        for (const auto* opt : run->get_options()) {
          if (opt->count() == 0) continue;
          const std::string n = opt->get_name();
          if (n == "--problem") cfg.problem = rc.problem;
          else if (n == "--k") cfg.k = rc.k;
          else if (n == "--out") cfg.output_dir = rc.output_dir;
          else if (n == "--snapshot-every") cfg.snapshot_every = rc.snapshot_every;
          else if (n == "--energy-every") cfg.energy_every = rc.energy_every;
          else if (n == "--threads") cfg.threads = rc.threads;
        }
      }
      if (nx) cfg.nx = nx;
      if (ny) cfg.ny = ny;
      if (cfl) cfg.cfl = cfl;
      if (integrator) cfg.integrator = integrator;
      if (t_final) cfg.t_final = t_final;
      const cpdg::RunResult r = cpdg::run(cfg, quiet ? nullptr : &std::cerr);
      print_result(r);
    } else if (conv->parsed()) {
      const auto rows = cpdg::converge(cc, quiet ? nullptr : &std::cerr);
      std::printf("%2s %6s %6s %12s %7s %12s %7s %12s %7s %12s %7s\n", "k", "nx", "ny", "D_L1",
                  "ord", "D_L2", "ord", "Bz_L1", "ord", "Bz_L2", "ord");
      for (const auto& r : rows) {
        const double e[4] = {r.err.d_l1, r.err.d_l2, r.err.bz_l1, r.err.bz_l2};
        std::printf("%2d %6d %6d", r.k, r.nx, r.ny);
        for (int c = 0; c < 4; ++c) {
          if (r.order[c]) std::printf(" %12.4e %7.3f", e[c], *r.order[c]);
          else std::printf(" %12.4e %7s", e[c], "-");
        }
        std::printf("\n");
      }
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
