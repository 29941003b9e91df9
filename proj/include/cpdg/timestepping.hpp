#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cpdg/materials.hpp"
#include "cpdg/mesh.hpp"

namespace cpdg {

enum class Integrator { SSPRK1, SSPRK2, SSPRK3, SSPRK54, RK4 };

// Accepts ssprk1, ssprk2, ssprk3, ssprk54, rk4 (case-sensitive).
Integrator parse_integrator(const std::string& name);
std::string to_string(Integrator scheme);
int integrator_order(Integrator scheme);

// Default pairing: k = 0, 1, 2 -> SSP-RK1, 2, 3; k = 3, 4 -> SSPRK(5,4).
Integrator default_integrator(int k);
// Default CFL numbers {0.45, 0.21, 0.13, 0.17, 0.12} for k = 0..4: 80% of the
// plane-wave blow-up threshold with the default integrator.
double default_cfl(int k);

// Largest light speed over cell centres and vertices.
double max_light_speed(const CartesianMesh& mesh, const MaterialSpec& material);

// dt = cfl / max(c/dx, c/dy). Throws std::invalid_argument for cfl <= 0.
double compute_dt(const CartesianMesh& mesh, const MaterialSpec& material, double cfl);

using RhsFunction = std::function<void(double t, std::span<const double> u, std::span<double> dudt)>;

class NonFiniteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Explicit Runge-Kutta stepper with preallocated stage storage.
class TimeStepper {
 public:
  TimeStepper(Integrator scheme, std::size_t size);

  Integrator scheme() const { return scheme_; }

  // Advances u from t to t + dt in place. Throws NonFiniteError if any
  // entry of the new state is NaN or infinite.
  void step(double t, double dt, std::vector<double>& u, const RhsFunction& rhs);

 private:
  Integrator scheme_;
  std::vector<double> k0_, k1_, u1_, u2_, u3_, u4_;
};

}  // namespace cpdg
