#include "cpdg/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>

namespace cpdg {

ErrorReport error_norms(const CartesianMesh& mesh, const StateLayout& layout,
                        std::span<const double> u, const PointField& reference) {
  const QuadratureRule q = gauss_legendre(layout.k + 2);
  const double jac = mesh.dx() * mesh.dy();
  double d1 = 0.0, d2 = 0.0, b1 = 0.0, b2 = 0.0;
  for (int c = 0; c < layout.num_cells; ++c) {
    const CellIndex ci = mesh.cell_of(c);
    const BdfmField f = cell_field(mesh, layout, u, ci.i, ci.j);
    for (std::size_t p = 0; p < q.size(); ++p) {
      for (std::size_t r = 0; r < q.size(); ++r) {
        const double xi = q.nodes[p];
        const double eta = q.nodes[r];
        const double w = q.weights[p] * q.weights[r] * jac;
        const Point x = mesh.to_physical(ci.i, ci.j, xi, eta);
        const TEState ref = reference(x.x, x.y);
        const Vec2 d = eval_D(f, xi, eta);
        const double ex = d.x - ref.Dx;
        const double ey = d.y - ref.Dy;
        const double eb = cell_bz(layout, u, c, xi, eta) - ref.Bz;
        const double dd = ex * ex + ey * ey;
        d1 += w * std::sqrt(dd);
        d2 += w * dd;
        b1 += w * std::abs(eb);
        b2 += w * eb * eb;
      }
    }
  }
  const double area = mesh.area();
  return {d1 / area, std::sqrt(d2 / area), b1, std::sqrt(b2)};
}

EnergyReport total_energy(const CartesianMesh& mesh, const StateLayout& layout,
                          std::span<const double> u, const MaterialSpec& material) {
  const QuadratureRule q = gauss_legendre(layout.k + 2);
  const double jac = mesh.dx() * mesh.dy();
  EnergyReport e;
  for (int c = 0; c < layout.num_cells; ++c) {
    const CellIndex ci = mesh.cell_of(c);
    const BdfmField f = cell_field(mesh, layout, u, ci.i, ci.j);
    for (std::size_t p = 0; p < q.size(); ++p) {
      for (std::size_t r = 0; r < q.size(); ++r) {
        const double xi = q.nodes[p];
        const double eta = q.nodes[r];
        const Point x = mesh.to_physical(ci.i, ci.j, xi, eta);
        const MaterialPoint m = material.at(x.x, x.y);
        const Vec2 d = eval_D(f, xi, eta);
        const double b = cell_bz(layout, u, c, xi, eta);
        e.e_h += q.weights[p] * q.weights[r] * jac *
                 ((d.x * d.x + d.y * d.y) / (2.0 * m.eps) + b * b / (2.0 * m.mu));
      }
    }
    const Point xc = mesh.cell_center(ci.i, ci.j);
    const double a0 = u[layout.cell_offset(c)];
    e.e_star += a0 * a0 / (2.0 * material.mu(xc.x, xc.y)) * jac;
  }
  for (int f = 0; f < layout.num_vfaces; ++f) {
    const auto [i, j] = mesh.vface_lines(f);
    const double a0 = u[layout.vface_offset(f)];
    e.e_star += a0 * a0 / (2.0 * material.eps(mesh.x_line(i), mesh.y_line(j) + 0.5 * mesh.dy())) *
                jac;
  }
  for (int f = 0; f < layout.num_hfaces; ++f) {
    const auto [i, j] = mesh.hface_lines(f);
    const double b0 = u[layout.hface_offset(f)];
    e.e_star += b0 * b0 / (2.0 * material.eps(mesh.x_line(i) + 0.5 * mesh.dx(), mesh.y_line(j))) *
                jac;
  }
  return e;
}

std::vector<double> compatibility_residuals(const CartesianMesh& mesh, const StateLayout& layout,
                                            std::span<const double> u) {
  std::vector<double> r(static_cast<std::size_t>(layout.num_cells));
  for (int c = 0; c < layout.num_cells; ++c) {
    const CellIndex ci = mesh.cell_of(c);
    r[c] = cell_compatibility(mesh, layout, u, ci.i, ci.j);
  }
  return r;
}

ConstraintReport constraint_monitor(const CartesianMesh& mesh, const StateLayout& layout,
                                    std::span<const double> u, std::span<const double> initial,
                                    double reference_scale, int samples, std::uint64_t seed) {
  ConstraintReport rep;
  const std::size_t nface = layout.cell_offset(0);
  for (std::size_t i = 0; i < nface; ++i) rep.face_scale = std::max(rep.face_scale, std::abs(u[i]));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-0.5, 0.5);
  const bool with_drift = initial.size() == static_cast<std::size_t>(layout.num_cells);
  for (int c = 0; c < layout.num_cells; ++c) {
    const CellIndex ci = mesh.cell_of(c);
    const double r = cell_compatibility(mesh, layout, u, ci.i, ci.j);
    rep.compat_max = std::max(rep.compat_max, std::abs(r));
    rep.compat_l1 += std::abs(r);
    if (with_drift) rep.drift_max = std::max(rep.drift_max, std::abs(r - initial[c]));
    if (samples > 0) {
      const BdfmField f = cell_field(mesh, layout, u, ci.i, ci.j);
      for (int s = 0; s < samples; ++s) {
        const double xi = dist(rng);
        const double eta = dist(rng);
        rep.div_max = std::max(rep.div_max,
                               std::abs(divergence_residual(f, xi, eta, mesh.dx(), mesh.dy())));
      }
    }
  }
  const double scale = std::max(rep.face_scale, reference_scale);
  if (scale > 0.0) {
    const double cs = scale * (mesh.dx() + mesh.dy());
    const double ds = scale * (1.0 / mesh.dx() + 1.0 / mesh.dy());
    rep.compat_rel = rep.compat_max / cs;
    rep.drift_rel = rep.drift_max / cs;
    rep.div_rel = rep.div_max / ds;
  }
  return rep;
}

std::vector<std::optional<double>> convergence_order(std::span<const double> errors) {
  std::vector<std::optional<double>> out;
  for (std::size_t i = 1; i < errors.size(); ++i) {
    if (errors[i - 1] > 0.0 && errors[i] > 0.0) {
      out.emplace_back(std::log2(errors[i - 1] / errors[i]));
    } else {
      out.emplace_back(std::nullopt);
    }
  }
  return out;
}

TEState sample_state(const CartesianMesh& mesh, const StateLayout& layout,
                     std::span<const double> u, double x, double y) {
  const CellIndex ci = mesh.locate(x, y);
  const Point r = mesh.to_reference(ci.i, ci.j, x, y);
  const BdfmField f = cell_field(mesh, layout, u, ci.i, ci.j);
  const Vec2 d = eval_D(f, r.x, r.y);
  return {d.x, d.y, cell_bz(layout, u, mesh.cell_id(ci), r.x, r.y)};
}

PointField make_sampler(const CartesianMesh& mesh, const StateLayout& layout,
                        std::span<const double> u) {
  auto data = std::make_shared<std::vector<double>>(u.begin(), u.end());
  return [mesh, layout, data](double x, double y) {
    return sample_state(mesh, layout, *data, x, y);
  };
}

}  // namespace cpdg
