#include "cpdg/riemann.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cpdg {

namespace {

void check_material(double eps, double mu) {
  if (!(eps > 0.0) || !(mu > 0.0)) throw std::invalid_argument("eps and mu must be positive");
}

}  // namespace

FaceFlux riemann_1d(const TEState& left, const TEState& right, double nx, double ny, double eps,
                    double mu) {
  check_material(eps, mu);
  const double c = 1.0 / std::sqrt(eps * mu);
  const double dt_l = left.Dy * nx - left.Dx * ny;
  const double dt_r = right.Dy * nx - right.Dx * ny;
  const double dn = 0.5 * ((left.Dx + right.Dx) * nx + (left.Dy + right.Dy) * ny);
  const double dt = 0.5 * (dt_l + dt_r) - 0.5 * eps * c * (right.Bz - left.Bz);
  const double bz = 0.5 * (left.Bz + right.Bz) - 0.5 * mu * c * (dt_r - dt_l);
  // D* = Dn n + Dt t with t = (-ny, nx).
  return {bz / mu, (dn * nx - dt * ny) / eps, (dn * ny + dt * nx) / eps};
}

double riemann_2d(const TEState& dl, const TEState& dr, const TEState& ul, const TEState& ur,
                  double eps, double mu, double dx, double dy, double h) {
  check_material(eps, mu);
  const double mc = mu / std::sqrt(eps * mu);
  const double dx_jump = 0.5 * (ur.Dx + ul.Dx) - 0.5 * (dr.Dx + dl.Dx);
  const double dy_jump = 0.5 * (ur.Dy + dr.Dy) - 0.5 * (ul.Dy + dl.Dy);
  const double bz = 0.25 * (dl.Bz + dr.Bz + ul.Bz + ur.Bz) + 0.5 * mc * h / dy * dx_jump -
                    0.5 * mc * h / dx * dy_jump;
  return bz / mu;
}

double riemann_2d(const TEState& dl, const TEState& dr, const TEState& ul, const TEState& ur,
                  double eps, double mu, double dx, double dy) {
  return riemann_2d(dl, dr, ul, ur, eps, mu, dx, dy, std::max(dx, dy));
}

}  // namespace cpdg
