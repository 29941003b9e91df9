#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cpdg/diagnostics.hpp"
#include "cpdg/parallel.hpp"
#include "cpdg/problems.hpp"
#include "cpdg/solver.hpp"
#include "cpdg/timestepping.hpp"

namespace cpdg {

inline constexpr int kSchemaVersion = 1;

struct RunConfig {
  std::string problem = "planewave";
  int k = 2;
  std::optional<int> nx;
  std::optional<int> ny;
  std::optional<double> cfl;
  std::optional<std::string> integrator;
  std::optional<double> t_final;
  std::string output_dir;    // empty: write nothing
  int snapshot_every = 0;    // steps between field snapshots; 0 disables them
  int energy_every = 0;      // steps between energy.csv rows; 0 picks ~500 rows
  int threads = default_threads();

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

// Parses "key = value" lines ('#' starts a comment) into a config. Keys match
// the long CLI flag names with '-' or '_' (problem, k, nx, ny, cfl, integrator,
// t-final, out, snapshot-every, energy-every, threads).
RunConfig parse_config_text(const std::string& text, RunConfig base = {});
RunConfig load_config_file(const std::string& path, RunConfig base = {});

// One problem advanced on one mesh with a fixed uniform step.
class Simulation {
 public:
  Simulation(ProblemSpec problem, int nx, int ny, int k, std::optional<double> cfl = {},
             std::optional<Integrator> integrator = {}, int threads = 1);

  const ProblemSpec& problem() const { return problem_; }
  const CartesianMesh& mesh() const { return mesh_; }
  Scheme& scheme() { return scheme_; }
  const SimState& state() const { return state_; }
  SimState& state() { return state_; }
  int k() const { return k_; }
  double cfl() const { return cfl_; }
  Integrator integrator() const { return stepper_.scheme(); }
  double cfl_dt() const { return cfl_dt_; }
  int steps_taken() const { return steps_; }

  // Number of uniform steps to reach t_end from the current time and the
  // matching step size (never larger than the CFL step).
  std::pair<int, double> plan(double t_end) const;

  // One step of size dt. Throws NonFiniteError naming the step on blow-up.
  void step(double dt);

  void rhs(double t, std::span<const double> u, std::span<double> dudt);

 private:
  ProblemSpec problem_;
  int k_;
  CartesianMesh mesh_;
  Scheme scheme_;
  SimState state_;
  TimeStepper stepper_;
  double cfl_;
  double cfl_dt_;
  int steps_ = 0;
};

struct RunResult {
  int steps = 0;
  double t = 0.0;
  double dt = 0.0;
  double cfl = 0.0;
  std::string integrator;
  EnergyReport energy_initial;
  EnergyReport energy_final;
  double max_drift_rel = 0.0;  // worst compatibility drift over all monitored steps
  double max_div_rel = 0.0;    // worst sampled divergence over all monitored steps
  double max_drift_per_step = 0.0;
  std::optional<ErrorReport> errors;
};

// Runs a configured simulation. When output_dir is set, writes energy.csv,
// summary.json and snapshot_NNNNNN.txt files there.
RunResult run(const RunConfig& config, std::ostream* log = nullptr);

struct ConvergenceConfig {
  std::string problem = "planewave";
  std::vector<int> orders{2};
  std::vector<int> meshes{16, 32, 64, 128};
  std::optional<double> cfl;
  std::optional<std::string> integrator;
  std::optional<double> t_final;
  std::string output_dir;
  int threads = default_threads();
};

struct ConvergenceRow {
  int k = 0;
  int nx = 0;
  int ny = 0;
  ErrorReport err;
  // Orders against the previous row of the same k (D_L1, D_L2, Bz_L1, Bz_L2).
  std::array<std::optional<double>, 4> order{};
};

// Runs every (k, mesh) pair. Exact-solution problems are compared with the
// exact fields; otherwise the finest mesh of each k is the reference and is
// not itself reported. Writes convergence.csv when output_dir is set.
std::vector<ConvergenceRow> converge(const ConvergenceConfig& config, std::ostream* log = nullptr);

// Writers shared with the CLI and tests.
void write_snapshot(const std::string& path, const CartesianMesh& mesh, const SimState& state);
void write_convergence_csv(const std::string& path, const std::vector<ConvergenceRow>& rows);

}  // namespace cpdg
