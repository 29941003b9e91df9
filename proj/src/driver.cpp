#include "cpdg/driver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace cpdg {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int parse_int(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  int out = 0;
  try {
    out = std::stoi(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != v.size() || v.empty()) throw std::invalid_argument(key + ": expected an integer, got '" + v + "'");
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != v.size() || v.empty()) throw std::invalid_argument(key + ": expected a number, got '" + v + "'");
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

}  // namespace

void RunConfig::validate() const {
  problem_by_name(problem);
  check_order(k);
  if (nx && *nx < 1) throw std::invalid_argument("nx must be positive");
  if (ny && *ny < 1) throw std::invalid_argument("ny must be positive");
  if (cfl && !(*cfl > 0.0)) throw std::invalid_argument("cfl must be positive");
  if (integrator) parse_integrator(*integrator);
  if (t_final && !(*t_final >= 0.0)) throw std::invalid_argument("t-final must be non-negative");
  if (snapshot_every < 0) throw std::invalid_argument("snapshot-every must be non-negative");
  if (energy_every < 0) throw std::invalid_argument("energy-every must be non-negative");
  if (threads < 1) throw std::invalid_argument("threads must be positive");
}

RunConfig parse_config_text(const std::string& text, RunConfig cfg) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    std::replace(key.begin(), key.end(), '_', '-');
    if (key == "problem") cfg.problem = val;
    else if (key == "k") cfg.k = parse_int(key, val);
    else if (key == "nx") cfg.nx = parse_int(key, val);
    else if (key == "ny") cfg.ny = parse_int(key, val);
    else if (key == "cfl") cfg.cfl = parse_double(key, val);
    else if (key == "integrator") cfg.integrator = val;
    else if (key == "t-final") cfg.t_final = parse_double(key, val);
    else if (key == "out") cfg.output_dir = val;
    else if (key == "snapshot-every") cfg.snapshot_every = parse_int(key, val);
    else if (key == "energy-every") cfg.energy_every = parse_int(key, val);
    else if (key == "threads") cfg.threads = parse_int(key, val);
    else throw std::invalid_argument("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  return cfg;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str(), std::move(base));
}

Simulation::Simulation(ProblemSpec problem, int nx, int ny, int k, std::optional<double> cfl,
                       std::optional<Integrator> integrator, int threads)
    : problem_(std::move(problem)),
      k_(k),
      mesh_(problem_.make_mesh(nx, ny)),
      scheme_(mesh_, problem_.material, k, problem_.ghost(), threads),
      state_(project_initial(problem_, mesh_, k)),
      stepper_(integrator.value_or(default_integrator(k)), state_.u.size()),
      cfl_(cfl.value_or(default_cfl(k))),
      cfl_dt_(compute_dt(mesh_, problem_.material, cfl_)) {}

std::pair<int, double> Simulation::plan(double t_end) const {
  const double span = t_end - state_.t;
  if (!(span > 0.0)) return {0, 0.0};
  const int n = static_cast<int>(std::ceil(span / cfl_dt_ * (1.0 - 1e-12)));
  const int steps = std::max(1, n);
  return {steps, span / steps};
}

void Simulation::rhs(double t, std::span<const double> u, std::span<double> dudt) {
  scheme_.compute_rhs(t, u, dudt);
}

void Simulation::step(double dt) {
  try {
    stepper_.step(state_.t, dt, state_.u,
                  [this](double t, std::span<const double> u, std::span<double> du) {
                    scheme_.compute_rhs(t, u, du);
                  });
  } catch (const NonFiniteError& e) {
    throw NonFiniteError("blow-up at step " + std::to_string(steps_ + 1) + " (t = " +
                         fmt(state_.t) + "): " + e.what());
  }
  state_.t += dt;
  ++steps_;
}

void write_snapshot(const std::string& path, const CartesianMesh& mesh, const SimState& state) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << "# schema-version: " << kSchemaVersion << "\n";
  f << "# nx: " << mesh.nx() << "\n";
  f << "# ny: " << mesh.ny() << "\n";
  f << "# bounds: " << fmt(mesh.x0()) << " " << fmt(mesh.x1()) << " " << fmt(mesh.y0()) << " "
    << fmt(mesh.y1()) << "\n";
  f << "# t: " << fmt(state.t) << "\n";
  f << "x y Dx Dy Bz\n";
  for (int j = 0; j < mesh.ny(); ++j) {
    for (int i = 0; i < mesh.nx(); ++i) {
      const Point p = mesh.cell_center(i, j);
      const BdfmField fld = cell_field(mesh, state.layout, state.u, i, j);
      const Vec2 d = eval_D(fld, 0.0, 0.0);
      const double bz = cell_bz(state.layout, state.u, mesh.cell_id(i, j), 0.0, 0.0);
      f << fmt(p.x) << ' ' << fmt(p.y) << ' ' << fmt(d.x) << ' ' << fmt(d.y) << ' ' << fmt(bz)
        << '\n';
    }
  }
}

RunResult run(const RunConfig& config, std::ostream* log) {
  config.validate();
  ProblemSpec problem = problem_by_name(config.problem);
  const int nx = config.nx.value_or(problem.nx);
  const int ny = config.ny.value_or(problem.ny);
  const double t_final = config.t_final.value_or(problem.t_final);
  std::optional<Integrator> integ;
  if (config.integrator) integ = parse_integrator(*config.integrator);

  Simulation sim(problem, nx, ny, config.k, config.cfl, integ, config.threads);
  const CartesianMesh& mesh = sim.mesh();
  const StateLayout& layout = sim.state().layout;
  const auto [steps, dt] = sim.plan(t_final);

  const bool write = !config.output_dir.empty();
  std::ofstream energy;
  if (write) {
    std::filesystem::create_directories(config.output_dir);
    energy.open(config.output_dir + "/energy.csv");
    if (!energy) throw std::runtime_error("cannot write energy.csv in " + config.output_dir);
    energy << "# schema-version: " << kSchemaVersion << "\n";
    energy << "t,E_h,E_star_h,compat_max,div_max\n";
  }
  auto snapshot = [&](int step) {
    if (!write || config.snapshot_every <= 0) return;
    char name[64];
    std::snprintf(name, sizeof(name), "/snapshot_%06d.txt", step);
    write_snapshot(config.output_dir + name, mesh, sim.state());
  };

  RunResult res;
  res.dt = dt;
  res.cfl = sim.cfl();
  res.integrator = to_string(sim.integrator());
  const std::vector<double> compat0 = compatibility_residuals(mesh, layout, sim.state().u);
  const int every = config.energy_every > 0 ? config.energy_every : std::max(1, steps / 500);

  // Relative constraint figures use the larger of the initial and current field
  // scale, so roundoff from early times is not inflated once a field decays.
  double scale0 = 0.0;
  auto monitor = [&](int step) {
    const EnergyReport e = total_energy(mesh, layout, sim.state().u, problem.material);
    const ConstraintReport c = constraint_monitor(mesh, layout, sim.state().u, compat0, scale0);
    if (step == 0) scale0 = c.face_scale;
    res.max_drift_rel = std::max(res.max_drift_rel, c.drift_rel);
    res.max_div_rel = std::max(res.max_div_rel, c.div_rel);
    if (step > 0) res.max_drift_per_step = std::max(res.max_drift_per_step, c.drift_rel / step);
    if (write) {
      energy << fmt(sim.state().t) << ',' << fmt(e.e_h) << ',' << fmt(e.e_star) << ','
             << fmt(c.compat_max) << ',' << fmt(c.div_max) << '\n';
    }
    return e;
  };

  if (log) {
    *log << "problem " << problem.name << " k=" << config.k << " mesh " << nx << "x" << ny
         << " integrator " << res.integrator << " cfl " << res.cfl << " dt " << dt << " steps "
         << steps << "\n";
  }
  res.energy_initial = monitor(0);
  res.energy_final = res.energy_initial;
  snapshot(0);
  for (int s = 1; s <= steps; ++s) {
    sim.step(dt);
    const bool last = s == steps;
    if (s % every == 0 || last) res.energy_final = monitor(s);
    if (config.snapshot_every > 0 && (s % config.snapshot_every == 0 || last)) snapshot(s);
    if (log && (s % std::max(1, steps / 10) == 0)) {
      *log << "  step " << s << "/" << steps << " t=" << sim.state().t << "\n";
    }
  }
  res.steps = steps;
  res.t = sim.state().t;

  if (problem.has_exact) {
    const double t = res.t;
    res.errors = error_norms(mesh, layout, sim.state().u,
                             [&](double x, double y) { return problem.fields(x, y, t); });
  }

  if (write) {
    nlohmann::ordered_json j;
    j["schema-version"] = kSchemaVersion;
    j["problem"] = problem.name;
    j["k"] = config.k;
    j["nx"] = nx;
    j["ny"] = ny;
    j["integrator"] = res.integrator;
    j["cfl"] = res.cfl;
    j["dt"] = res.dt;
    j["steps"] = res.steps;
    j["t_final"] = res.t;
    j["E_h_initial"] = res.energy_initial.e_h;
    j["E_h_final"] = res.energy_final.e_h;
    j["E_star_h_initial"] = res.energy_initial.e_star;
    j["E_star_h_final"] = res.energy_final.e_star;
    j["energy_drift_rel"] = res.energy_initial.e_h > 0.0
                                ? (res.energy_final.e_h - res.energy_initial.e_h) /
                                      res.energy_initial.e_h
                                : 0.0;
    j["compat_drift_rel_max"] = res.max_drift_rel;
    j["div_rel_max"] = res.max_div_rel;
    if (res.errors) {
      j["errors"] = {{"D_L1", res.errors->d_l1},
                     {"D_L2", res.errors->d_l2},
                     {"Bz_L1", res.errors->bz_l1},
                     {"Bz_L2", res.errors->bz_l2}};
    }
    std::ofstream f(config.output_dir + "/summary.json");
    f << j.dump(2) << "\n";
  }
  return res;
}

namespace {

ErrorReport run_to_errors(const ProblemSpec& problem, int nx, int ny, int k, double t_final,
                          const ConvergenceConfig& cfg, const PointField* reference,
                          std::vector<double>* final_state, std::ostream* log) {
  std::optional<Integrator> integ;
  if (cfg.integrator) integ = parse_integrator(*cfg.integrator);
  Simulation sim(problem, nx, ny, k, cfg.cfl, integ, cfg.threads);
  const auto [steps, dt] = sim.plan(t_final);
  for (int s = 0; s < steps; ++s) sim.step(dt);
  if (log) *log << "  k=" << k << " " << nx << "x" << ny << " steps " << steps << "\n";
  if (final_state) *final_state = sim.state().u;
  if (reference) return error_norms(sim.mesh(), sim.state().layout, sim.state().u, *reference);
  const double t = sim.state().t;
  return error_norms(sim.mesh(), sim.state().layout, sim.state().u,
                     [&](double x, double y) { return problem.fields(x, y, t); });
}

}  // namespace

std::vector<ConvergenceRow> converge(const ConvergenceConfig& cfg, std::ostream* log) {
  const ProblemSpec problem = problem_by_name(cfg.problem);
  if (cfg.meshes.empty()) throw std::invalid_argument("converge needs at least one mesh");
  for (int k : cfg.orders) check_order(k);
  const double t_final = cfg.t_final.value_or(problem.t_final);
  auto ny_for = [&](int nx) {
    return std::max(1, static_cast<int>(std::lround(static_cast<double>(nx) * problem.ny / problem.nx)));
  };

  std::vector<ConvergenceRow> rows;
  for (int k : cfg.orders) {
    std::vector<int> meshes = cfg.meshes;
    std::optional<PointField> reference;
    if (!problem.has_exact) {
      // Finest mesh of this order is the reference solution.
      std::sort(meshes.begin(), meshes.end());
      const int nref = meshes.back();
      meshes.pop_back();
      if (meshes.empty()) throw std::invalid_argument("self-referenced convergence needs two meshes");
      std::vector<double> u;
      run_to_errors(problem, nref, ny_for(nref), k, t_final, cfg, nullptr, &u, log);
      const CartesianMesh m = problem.make_mesh(nref, ny_for(nref));
      reference = make_sampler(m, StateLayout::make(m, k), u);
    }
    std::vector<ConvergenceRow> block;
    for (int nx : meshes) {
      ConvergenceRow r;
      r.k = k;
      r.nx = nx;
      r.ny = ny_for(nx);
      r.err = run_to_errors(problem, r.nx, r.ny, k, t_final, cfg,
                            reference ? &*reference : nullptr, nullptr, log);
      block.push_back(r);
    }
    for (std::size_t i = 1; i < block.size(); ++i) {
      const ErrorReport& a = block[i - 1].err;
      const ErrorReport& b = block[i].err;
      const double ratio = static_cast<double>(block[i].nx) / block[i - 1].nx;
      const std::array<std::pair<double, double>, 4> pairs = {
          {{a.d_l1, b.d_l1}, {a.d_l2, b.d_l2}, {a.bz_l1, b.bz_l1}, {a.bz_l2, b.bz_l2}}};
      for (std::size_t c = 0; c < 4; ++c) {
        if (pairs[c].first > 0.0 && pairs[c].second > 0.0 && ratio > 1.0) {
          block[i].order[c] = std::log(pairs[c].first / pairs[c].second) / std::log(ratio);
        }
      }
    }
    rows.insert(rows.end(), block.begin(), block.end());
  }
  if (!cfg.output_dir.empty()) {
    std::filesystem::create_directories(cfg.output_dir);
    write_convergence_csv(cfg.output_dir + "/convergence.csv", rows);
  }
  return rows;
}

void write_convergence_csv(const std::string& path, const std::vector<ConvergenceRow>& rows) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  // Order columns only make sense with at least two meshes of one order.
  bool with_orders = false;
  for (std::size_t i = 1; i < rows.size(); ++i) with_orders |= rows[i].k == rows[i - 1].k;
  f << "# schema-version: " << kSchemaVersion << "\n";
  if (with_orders) {
    f << "k,nx,ny,D_L1,D_L1_order,D_L2,D_L2_order,Bz_L1,Bz_L1_order,Bz_L2,Bz_L2_order\n";
  } else {
    f << "k,nx,ny,D_L1,D_L2,Bz_L1,Bz_L2\n";
  }
  for (const auto& r : rows) {
    const std::array<double, 4> e = {r.err.d_l1, r.err.d_l2, r.err.bz_l1, r.err.bz_l2};
    f << r.k << ',' << r.nx << ',' << r.ny;
    for (std::size_t c = 0; c < 4; ++c) {
      f << ',' << fmt(e[c]);
      if (with_orders) {
        f << ',';
        if (r.order[c]) {
          char buf[32];
          std::snprintf(buf, sizeof(buf), "%.4f", *r.order[c]);
          f << buf;
        }
      }
    }
    f << '\n';
  }
}

}  // namespace cpdg
