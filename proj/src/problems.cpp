#include "cpdg/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cpdg {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

// sin(s) times a window and its gradient, with s = 2 pi (x + y - sqrt2 c t) / lambda.
struct Scalar {
  double v;
  double dx;
  double dy;
};

}  // namespace

CartesianMesh ProblemSpec::make_mesh(int nx_cells, int ny_cells) const {
  return CartesianMesh(nx_cells, ny_cells, x0, x1, y0, y1, periodic, periodic);
}

GhostState ProblemSpec::ghost() const {
  if (periodic) return {};
  auto f = fields;
  return [f](double x, double y, double t, BoundarySide side) {
    if (side == BoundarySide::XMinus || side == BoundarySide::YMinus) return f(x, y, t);
    return TEState{};
  };
}

ProblemSpec planewave() {
  ProblemSpec p;
  p.name = "planewave";
  p.x0 = -0.5;
  p.x1 = 0.5;
  p.y0 = -0.5;
  p.y1 = 0.5;
  p.nx = p.ny = 32;
  p.material = vacuum();
  p.t_final = 3.5e-9;
  p.has_exact = true;
  const double c = vacuum_light_speed();
  const double k = c * kEps0;
  p.stream = [c, k](double x, double y, double t) {
    const double th = 2.0 * kPi * (x + y - kSqrt2 * c * t);
    return -k / (2.0 * kPi * kSqrt2) * std::sin(th);
  };
  p.fields = [c, k](double x, double y, double t) {
    const double cs = std::cos(2.0 * kPi * (x + y - kSqrt2 * c * t));
    return TEState{-k / kSqrt2 * cs, k / kSqrt2 * cs, cs};
  };
  return p;
}

ProblemSpec gaussian_pulse() {
  ProblemSpec p;
  p.name = "gaussian_pulse";
  p.x0 = -7.0;
  p.x1 = 7.0;
  p.y0 = -7.0;
  p.y1 = 7.0;
  p.nx = p.ny = 200;
  p.material = dielectric_disk();
  p.t_final = 23.3e-9;
  p.has_exact = false;

  const double lambda = 1.5;
  const double chi = 1.5;
  const double a = -2.5;
  const double b = 2.5;
  const double period = 14.0;
  const double k = vacuum_light_speed() * kEps0;

  // sin(2 pi (x + y)) times the Gaussian envelope summed over the nearest
  // periodic images, so the data is periodic on the domain.
  auto carrier = [=](double x, double y) {
    const double s = 2.0 * kPi * (x + y);
    double g = 0.0, gx = 0.0, gy = 0.0;
    for (int m = -1; m <= 1; ++m) {
      for (int n = -1; n <= 1; ++n) {
        const double rx = x + m * period - a;
        const double ry = y + n * period - b;
        const double e = std::exp(-(rx * rx + ry * ry) / (chi * chi));
        g += e;
        gx += -2.0 * rx / (chi * chi) * e;
        gy += -2.0 * ry / (chi * chi) * e;
      }
    }
    const double sn = std::sin(s);
    const double cs = 2.0 * kPi * std::cos(s);
    return Scalar{sn * g, cs * g + sn * gx, cs * g + sn * gy};
  };
  p.stream = [=](double x, double y, double) {
    return -k * lambda / (2.0 * kPi * kSqrt2) * carrier(x, y).v;
  };
  p.fields = [=](double x, double y, double) {
    const Scalar f = carrier(x, y);
    const double ca = lambda / (2.0 * kPi);
    const double cc = k * lambda / (2.0 * kPi * kSqrt2);
    return TEState{-cc * f.dy, cc * f.dx, ca * f.dx};
  };
  return p;
}

namespace {

ProblemSpec beam(const std::string& name, double lambda, double x0, double x1, double y0,
                 double y1, int nx, int ny, double t_final, MaterialSpec material) {
  ProblemSpec p;
  p.name = name;
  p.x0 = x0;
  p.x1 = x1;
  p.y0 = y0;
  p.y1 = y1;
  p.nx = nx;
  p.ny = ny;
  p.periodic = false;
  p.t_final = t_final;
  p.has_exact = false;

  const double d = 2.5 * lambda;
  const double delta = 0.5 * lambda;
  const double a = -3.0 * lambda;
  const double b = -3.0 * lambda;
  // Launch-point material sets the phase speed and the D scaling.
  const MaterialPoint launch = material.at(a, b);
  const double c = launch.c();
  const double k = c * launch.eps;
  p.material = std::move(material);

  auto carrier = [=](double x, double y, double t) {
    const double s = 2.0 * kPi * (x + y - kSqrt2 * c * t) / lambda;
    const double w1a = std::tanh(((x - a) + (y - b) - kSqrt2 * c * t) / (0.1 * lambda));
    const double w1 = 1.0 - w1a;
    const double w1d = -(1.0 - w1a * w1a) / (0.1 * lambda);
    const double diff = y - x;
    const double sgn = diff > 0.0 ? 1.0 : (diff < 0.0 ? -1.0 : 0.0);
    const double w2a = std::tanh((std::abs(diff) - kSqrt2 * d) / (kSqrt2 * delta));
    const double w2 = 1.0 - w2a;
    const double w2d = (1.0 - w2a * w2a) * sgn / (kSqrt2 * delta);  // d/dx; d/dy = -w2d
    const double sn = std::sin(s);
    const double cs = 2.0 * kPi / lambda * std::cos(s);
    return Scalar{sn * w1 * w2, cs * w1 * w2 + sn * (w1d * w2 + w1 * w2d),
                  cs * w1 * w2 + sn * (w1d * w2 - w1 * w2d)};
  };
  p.stream = [=](double x, double y, double t) {
    return -k * lambda / (8.0 * kPi * kSqrt2) * carrier(x, y, t).v;
  };
  p.fields = [=](double x, double y, double t) {
    const Scalar f = carrier(x, y, t);
    const double ca = lambda / (8.0 * kPi);
    const double cc = k * lambda / (8.0 * kPi * kSqrt2);
    return TEState{-cc * f.dy, cc * f.dx, ca * f.dx};
  };
  return p;
}

}  // namespace

ProblemSpec refraction_beam() {
  return beam("refraction", 0.5e-6, -5.0e-6, 8.0e-6, -2.5e-6, 7.0e-6, 650, 475, 4.0e-14,
              refraction_slab());
}

ProblemSpec tir_beam() {
  return beam("tir", 0.3e-6, -6.0e-6, 1.0e-6, -2.5e-6, 6.0e-6, 350, 425, 5.0e-14, tir_slab());
}

ProblemSpec problem_by_name(const std::string& name) {
  if (name == "planewave") return planewave();
  if (name == "gaussian_pulse") return gaussian_pulse();
  if (name == "refraction") return refraction_beam();
  if (name == "tir") return tir_beam();
  throw std::invalid_argument("unknown problem '" + name +
                              "' (expected planewave, gaussian_pulse, refraction or tir)");
}

std::vector<std::string> problem_names() {
  return {"planewave", "gaussian_pulse", "refraction", "tir"};
}

SimState project_initial(const ProblemSpec& problem, const CartesianMesh& mesh, int k, double t,
                         std::ostream* warn) {
  const StateLayout layout = StateLayout::make(mesh, k);
  SimState s(layout);
  s.t = t;
  const QuadratureRule q = gauss_legendre(k + 3);
  const double dx = mesh.dx();
  const double dy = mesh.dy();
  auto& u = s.u;

  for (int f = 0; f < layout.num_vfaces; ++f) {
    const auto [i, j] = mesh.vface_lines(f);
    const double x = mesh.x_line(i);
    const double yb = mesh.y_line(j);
    const std::size_t off = layout.vface_offset(f);
    u[off] = (problem.stream(x, yb + dy, t) - problem.stream(x, yb, t)) / dy;
    for (int m = 1; m <= k; ++m) {
      double acc = 0.0;
      for (std::size_t p = 0; p < q.size(); ++p) {
        const double eta = q.nodes[p];
        acc += q.weights[p] * problem.fields(x, yb + (0.5 + eta) * dy, t).Dx * phi(m, eta);
      }
      u[off + m] = acc / phi_norm2(m);
    }
  }
  for (int f = 0; f < layout.num_hfaces; ++f) {
    const auto [i, j] = mesh.hface_lines(f);
    const double xl = mesh.x_line(i);
    const double y = mesh.y_line(j);
    const std::size_t off = layout.hface_offset(f);
    u[off] = -(problem.stream(xl + dx, y, t) - problem.stream(xl, y, t)) / dx;
    for (int m = 1; m <= k; ++m) {
      double acc = 0.0;
      for (std::size_t p = 0; p < q.size(); ++p) {
        const double xi = q.nodes[p];
        acc += q.weights[p] * problem.fields(xl + (0.5 + xi) * dx, y, t).Dy * phi(m, xi);
      }
      u[off + m] = acc / phi_norm2(m);
    }
  }
  const std::size_t nq = q.size();
  std::vector<TEState> vals(nq * nq);
  for (int c = 0; c < layout.num_cells; ++c) {
    const CellIndex ci = mesh.cell_of(c);
    const std::size_t off = layout.cell_offset(c);
    for (std::size_t p = 0; p < nq; ++p) {
      for (std::size_t r = 0; r < nq; ++r) {
        const Point x = mesh.to_physical(ci.i, ci.j, q.nodes[p], q.nodes[r]);
        vals[p * nq + r] = problem.fields(x.x, x.y, t);
      }
    }
    for (int m = 0; m < layout.cell_modes; ++m) {
      double acc = 0.0;
      for (std::size_t p = 0; p < nq; ++p) {
        for (std::size_t r = 0; r < nq; ++r) {
          acc += q.weights[p] * q.weights[r] * vals[p * nq + r].Bz *
                 basis2d(m, q.nodes[p], q.nodes[r]);
        }
      }
      u[off + m] = acc / basis2d_norm2(m);
    }
    if (layout.cell_moments > 0) {
      // Same (k+3)-point rule, so the stored samples can be looked up by node.
      const CellMoments mom = moments_from_function(
          [&](double xi, double eta) {
            const auto p = std::lower_bound(q.nodes.begin(), q.nodes.end(), xi) - q.nodes.begin();
            const auto r = std::lower_bound(q.nodes.begin(), q.nodes.end(), eta) - q.nodes.begin();
            TEState f;
            if (static_cast<std::size_t>(p) < nq && static_cast<std::size_t>(r) < nq &&
                q.nodes[p] == xi && q.nodes[r] == eta) {
              f = vals[p * nq + r];
            } else {
              const Point x = mesh.to_physical(ci.i, ci.j, xi, eta);
              f = problem.fields(x.x, x.y, t);
            }
            return Vec2{f.Dx, f.Dy};
          },
          k, k + 3);
      for (int w = 0; w < layout.cell_moments; ++w) u[off + layout.cell_modes + w] = mom.w[w];
    }
  }

  if (warn != nullptr) {
    double scale = 0.0;
    const std::size_t nface = layout.cell_offset(0);
    for (std::size_t i = 0; i < nface; ++i) scale = std::max(scale, std::abs(u[i]));
    double worst = 0.0;
    for (int c = 0; c < layout.num_cells; ++c) {
      const CellIndex ci = mesh.cell_of(c);
      worst = std::max(worst, std::abs(cell_compatibility(mesh, layout, u, ci.i, ci.j)));
    }
    if (scale > 0.0 && worst > 1e-10 * scale * (dx + dy)) {
      *warn << "warning: projected compatibility residual " << worst / (scale * (dx + dy))
            << " (relative) exceeds 1e-10\n";
    }
  }
  return s;
}

}  // namespace cpdg
