#include "cpdg/timestepping.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "cpdg/basis.hpp"

namespace cpdg {

Integrator parse_integrator(const std::string& name) {
  if (name == "ssprk1") return Integrator::SSPRK1;
  if (name == "ssprk2") return Integrator::SSPRK2;
  if (name == "ssprk3") return Integrator::SSPRK3;
  if (name == "ssprk54") return Integrator::SSPRK54;
  if (name == "rk4") return Integrator::RK4;
  throw std::invalid_argument("unknown integrator '" + name +
                              "' (expected ssprk1, ssprk2, ssprk3, ssprk54 or rk4)");
}

std::string to_string(Integrator scheme) {
  switch (scheme) {
    case Integrator::SSPRK1: return "ssprk1";
    case Integrator::SSPRK2: return "ssprk2";
    case Integrator::SSPRK3: return "ssprk3";
    case Integrator::SSPRK54: return "ssprk54";
    case Integrator::RK4: return "rk4";
  }
  return "unknown";
}

int integrator_order(Integrator scheme) {
  switch (scheme) {
    case Integrator::SSPRK1: return 1;
    case Integrator::SSPRK2: return 2;
    case Integrator::SSPRK3: return 3;
    case Integrator::SSPRK54:
    case Integrator::RK4: return 4;
  }
  return 0;
}

Integrator default_integrator(int k) {
  check_order(k);
  static constexpr std::array<Integrator, 5> table = {
      Integrator::SSPRK1, Integrator::SSPRK2, Integrator::SSPRK3, Integrator::SSPRK54,
      Integrator::SSPRK54};
  return table[static_cast<std::size_t>(k)];
}

double default_cfl(int k) {
  check_order(k);
  static constexpr std::array<double, 5> table = {0.45, 0.21, 0.13, 0.17, 0.12};
  return table[static_cast<std::size_t>(k)];
}

double max_light_speed(const CartesianMesh& mesh, const MaterialSpec& material) {
  double cmax = 0.0;
  for (int j = 0; j < mesh.ny(); ++j) {
    for (int i = 0; i < mesh.nx(); ++i) {
      const Point p = mesh.cell_center(i, j);
      cmax = std::max(cmax, material.c(p.x, p.y));
    }
  }
  for (int j = 0; j <= mesh.ny(); ++j) {
    for (int i = 0; i <= mesh.nx(); ++i) {
      cmax = std::max(cmax, material.c(mesh.x_line(i), mesh.y_line(j)));
    }
  }
  return cmax;
}

double compute_dt(const CartesianMesh& mesh, const MaterialSpec& material, double cfl) {
  if (!(cfl > 0.0) || !std::isfinite(cfl)) throw std::invalid_argument("cfl must be positive");
  const double c = max_light_speed(mesh, material);
  return cfl / std::max(c / mesh.dx(), c / mesh.dy());
}

TimeStepper::TimeStepper(Integrator scheme, std::size_t size)
    : scheme_(scheme), k0_(size), k1_(size) {
  if (scheme != Integrator::SSPRK1) u1_.resize(size);
  if (scheme == Integrator::SSPRK54 || scheme == Integrator::RK4) {
    u2_.resize(size);
    u3_.resize(size);
  }
  if (scheme == Integrator::SSPRK54) u4_.resize(size);
}

namespace {

void check_finite(const std::vector<double>& u) {
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!std::isfinite(u[i])) {
      throw NonFiniteError("non-finite value in state entry " + std::to_string(i));
    }
  }
}

}  // namespace

void TimeStepper::step(double t, double dt, std::vector<double>& u, const RhsFunction& rhs) {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  if (k0_.size() != u.size()) throw std::invalid_argument("state size changed");
  const std::size_t n = u.size();
  auto& L = k0_;

  switch (scheme_) {
    case Integrator::SSPRK1: {
      rhs(t, u, L);
      for (std::size_t i = 0; i < n; ++i) u[i] += dt * L[i];
      break;
    }
    case Integrator::SSPRK2: {
      rhs(t, u, L);
      for (std::size_t i = 0; i < n; ++i) u1_[i] = u[i] + dt * L[i];
      rhs(t + dt, u1_, L);
      for (std::size_t i = 0; i < n; ++i) u[i] = 0.5 * u[i] + 0.5 * (u1_[i] + dt * L[i]);
      break;
    }
    case Integrator::SSPRK3: {
      rhs(t, u, L);
      for (std::size_t i = 0; i < n; ++i) u1_[i] = u[i] + dt * L[i];
      rhs(t + dt, u1_, L);
      for (std::size_t i = 0; i < n; ++i) {
        u1_[i] = 0.75 * u[i] + 0.25 * (u1_[i] + dt * L[i]);
      }
      rhs(t + 0.5 * dt, u1_, L);
      for (std::size_t i = 0; i < n; ++i) {
        u[i] = u[i] / 3.0 + 2.0 / 3.0 * (u1_[i] + dt * L[i]);
      }
      break;
    }
    case Integrator::SSPRK54: {
      // Spiteri-Ruuth SSPRK(5,4) in Shu-Osher form; stage times follow the
      // same convex combinations.
      rhs(t, u, L);
      const double c1 = 0.391752226571890;
      for (std::size_t i = 0; i < n; ++i) u1_[i] = u[i] + c1 * dt * L[i];
      rhs(t + c1 * dt, u1_, L);
      const double c2 = 0.555629506348765 * c1 + 0.368410593050371;
      for (std::size_t i = 0; i < n; ++i) {
        u2_[i] = 0.444370493651235 * u[i] + 0.555629506348765 * u1_[i] +
                 0.368410593050371 * dt * L[i];
      }
      rhs(t + c2 * dt, u2_, L);
      const double c3 = 0.379898148511597 * c2 + 0.251891774271694;
      for (std::size_t i = 0; i < n; ++i) {
        u3_[i] = 0.620101851488403 * u[i] + 0.379898148511597 * u2_[i] +
                 0.251891774271694 * dt * L[i];
      }
      rhs(t + c3 * dt, u3_, k1_);
      const double c4 = 0.821920045606868 * c3 + 0.544974750228521;
      for (std::size_t i = 0; i < n; ++i) {
        u4_[i] = 0.178079954393132 * u[i] + 0.821920045606868 * u3_[i] +
                 0.544974750228521 * dt * k1_[i];
      }
      rhs(t + c4 * dt, u4_, L);
      for (std::size_t i = 0; i < n; ++i) {
        u[i] = 0.517231671970585 * u2_[i] + 0.096059710526147 * u3_[i] +
               0.063692468666290 * dt * k1_[i] + 0.386708617503269 * u4_[i] +
               0.226007483236906 * dt * L[i];
      }
      break;
    }
    case Integrator::RK4: {
      // u2 accumulates the weighted slopes.
      rhs(t, u, L);
      for (std::size_t i = 0; i < n; ++i) {
        u2_[i] = L[i];
        u1_[i] = u[i] + 0.5 * dt * L[i];
      }
      rhs(t + 0.5 * dt, u1_, L);
      for (std::size_t i = 0; i < n; ++i) {
        u2_[i] += 2.0 * L[i];
        u1_[i] = u[i] + 0.5 * dt * L[i];
      }
      rhs(t + 0.5 * dt, u1_, L);
      for (std::size_t i = 0; i < n; ++i) {
        u2_[i] += 2.0 * L[i];
        u3_[i] = u[i] + dt * L[i];
      }
      rhs(t + dt, u3_, L);
      for (std::size_t i = 0; i < n; ++i) u[i] += dt / 6.0 * (u2_[i] + L[i]);
      break;
    }
  }
  check_finite(u);
}

}  // namespace cpdg
