#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "cpdg/materials.hpp"
#include "cpdg/mesh.hpp"
#include "cpdg/riemann.hpp"
#include "cpdg/solver.hpp"

namespace cpdg {

// A test problem: domain, material, default mesh and final time, and the
// analytic initial (or exact) fields. D is generated from a stream function
// psi = K C_z through D = (d psi/dy, -d psi/dx), so it is solenoidal.
struct ProblemSpec {
  std::string name;
  double x0 = 0.0;
  double x1 = 1.0;
  double y0 = 0.0;
  double y1 = 1.0;
  int nx = 32;
  int ny = 32;
  bool periodic = true;
  MaterialSpec material = vacuum();
  double t_final = 0.0;
  bool has_exact = false;

  std::function<double(double x, double y, double t)> stream;
  std::function<TEState(double x, double y, double t)> fields;

  CartesianMesh make_mesh(int nx_cells, int ny_cells) const;
  CartesianMesh make_mesh() const { return make_mesh(nx, ny); }

  // Boundary ghost for non-periodic problems: the analytic incident field on
  // the x-/y- sides and a zero state on the x+/y+ sides. Empty when periodic.
  GhostState ghost() const;
};

// Vacuum plane wave Bz = cos(2 pi (x + y - sqrt(2) c t)) on [-1/2,1/2]^2.
ProblemSpec planewave();
// Gaussian-modulated pulse on [-7,7]^2 with the dielectric disk.
ProblemSpec gaussian_pulse();
// Windowed beam at 45 degrees onto the refraction slab.
ProblemSpec refraction_beam();
// Windowed beam at 45 degrees inside the n = 2 slab (total internal reflection).
ProblemSpec tir_beam();

// planewave, gaussian_pulse, refraction, tir.
ProblemSpec problem_by_name(const std::string& name);
std::vector<std::string> problem_names();

// Projects the problem's fields at time t onto the degrees of freedom:
// zeroth face modes from stream-function differences (so each cell's
// compatibility residual vanishes to rounding), higher face modes by 1-D L2
// projection, B_z by 2-D L2 projection and moments by tensor quadrature,
// all with k+3 Gauss-Legendre points per direction. A warning is written to
// `warn` if the relative compatibility residual exceeds 1e-10.
SimState project_initial(const ProblemSpec& problem, const CartesianMesh& mesh, int k,
                         double t = 0.0, std::ostream* warn = nullptr);

}  // namespace cpdg
