#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "cpdg/diagnostics.hpp"
#include "cpdg/problems.hpp"

using namespace cpdg;

namespace {

// Central-difference divergence of D and the stream-function mismatch
// (Dx - dpsi/dy, Dy + dpsi/dx), relative to the local field size.
struct Checks {
  double div;
  double stream;
};

Checks analytic_checks(const ProblemSpec& p, double x, double y, double t, double h) {
  const TEState xp = p.fields(x + h, y, t), xm = p.fields(x - h, y, t);
  const TEState yp = p.fields(x, y + h, t), ym = p.fields(x, y - h, t);
  const TEState c = p.fields(x, y, t);
  const double div = (xp.Dx - xm.Dx + yp.Dy - ym.Dy) / (2 * h);
  const double sy = (p.stream(x, y + h, t) - p.stream(x, y - h, t)) / (2 * h);
  const double sx = (p.stream(x + h, y, t) - p.stream(x - h, y, t)) / (2 * h);
  return {div, std::max(std::abs(c.Dx - sy), std::abs(c.Dy + sx))};
}

void check_fields(const ProblemSpec& p, double scale_d, double length, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(p.x0, p.x1), uy(p.y0, p.y1);
  const double h = 1e-4 * length;
  for (int s = 0; s < n; ++s) {
    const double x = ux(rng), y = uy(rng);
    const Checks c = analytic_checks(p, x, y, 0.0, h);
    CHECK(std::abs(c.div) < 1e-6 * scale_d / length);
    CHECK(c.stream < 1e-6 * scale_d);
  }
}

}  // namespace

TEST_CASE("plane wave") {
  const ProblemSpec p = planewave();
  const double k = vacuum_light_speed() * kEps0;
  CHECK(p.fields(0, 0, 0).Bz == doctest::Approx(1.0));
  CHECK(p.fields(0, 0, 0).Dx == doctest::Approx(-k / std::sqrt(2.0)));
  check_fields(p, k, 1.0, 20, 1);
  // Pure translation along (1,1)/sqrt2 at speed c.
  const double c = vacuum_light_speed();
  const double t = 1.234e-9;
  const double s = c * t / std::sqrt(2.0);
  for (double x : {-0.3, 0.1}) {
    const TEState a = p.fields(x, 0.2, t), b = p.fields(x - s, 0.2 - s, 0.0);
    CHECK(a.Bz == doctest::Approx(b.Bz).epsilon(1e-9).scale(1.0));
    CHECK(a.Dy == doctest::Approx(b.Dy).epsilon(1e-9).scale(k));
  }
  CHECK(p.has_exact);
  CHECK(p.periodic);
}

TEST_CASE("Gaussian pulse") {
  const ProblemSpec p = gaussian_pulse();
  const double k = vacuum_light_speed() * kEps0;
  check_fields(p, k, 1.0, 20, 2);
  // B_z = lambda * envelope at the centre, where the carrier phase is zero.
  CHECK(p.fields(-2.5, 2.5, 0.0).Bz == doctest::Approx(1.5).epsilon(1e-12));
  // Periodic across the domain edges.
  const TEState l = p.fields(-7.0, 1.3, 0.0), r = p.fields(7.0, 1.3, 0.0);
  CHECK(l.Bz == doctest::Approx(r.Bz).epsilon(1e-8).scale(1e-8));
  CHECK(p.material.name() == "disk");
  CHECK_FALSE(p.has_exact);
}

TEST_CASE("Gaussian pulse initial energy baseline") {
  const ProblemSpec p = gaussian_pulse();
  const CartesianMesh mesh = p.make_mesh();
  CHECK(mesh.nx() == 200);
  const SimState s = project_initial(p, mesh, 4);
  const EnergyReport e = total_energy(mesh, s.layout, s.u, p.material);
  // Energy of the exact data by 8-point Gauss-Legendre on every cell.
  const QuadratureRule g = gauss_legendre(8);
  double exact = 0.0;
  for (int j = 0; j < mesh.ny(); ++j) {
    for (int i = 0; i < mesh.nx(); ++i) {
      const double cx = p.x0 + (i + 0.5) * mesh.dx(), cy = p.y0 + (j + 0.5) * mesh.dy();
      for (std::size_t a = 0; a < g.size(); ++a) {
        for (std::size_t b = 0; b < g.size(); ++b) {
          const double x = cx + g.nodes[a] * mesh.dx(), y = cy + g.nodes[b] * mesh.dy();
          const TEState f = p.fields(x, y, 0.0);
          const double w = g.weights[a] * g.weights[b] * mesh.dx() * mesh.dy();
          exact += w * ((f.Dx * f.Dx + f.Dy * f.Dy) / (2.0 * p.material.eps(x, y)) +
                        f.Bz * f.Bz / (2.0 * p.material.mu(x, y)));
        }
      }
    }
  }
  CHECK(e.e_h == doctest::Approx(exact).epsilon(1e-5));
}

TEST_CASE("refraction beam") {
  const ProblemSpec p = refraction_beam();
  const double lambda = 0.5e-6;
  const double kd = vacuum_light_speed() * kEps0;
  CHECK(p.material.eps(-3 * lambda, -3 * lambda) == doctest::Approx(kEps0).epsilon(1e-10));
  check_fields(p, kd, lambda, 20, 3);
  // Far from the beam axis (y = x) the window has saturated.
  const TEState far = p.fields(0.0, 5e-6, 0.0);
  CHECK(std::abs(far.Bz) < 1e-6);
  CHECK(std::abs(far.Dx) < 1e-6 * kd);
  CHECK_FALSE(p.periodic);
  const CartesianMesh m = p.make_mesh();
  CHECK(m.dx() == doctest::Approx(2e-8));
}

TEST_CASE("TIR beam") {
  const ProblemSpec p = tir_beam();
  const double lambda = 0.3e-6;
  const double a = -3 * lambda;
  // Launch point sits in the dense medium: c = c0/2, eps = 4 eps0.
  const MaterialPoint launch = p.material.at(a, a);
  const double kd = launch.c() * launch.eps;
  CHECK(kd == doctest::Approx(2.0 * vacuum_light_speed() * kEps0).epsilon(1e-8));
  // Window values at the launch point: w1 = 1, w2 = 1 + tanh(d / delta).
  CHECK(p.fields(a, a, 0.0).Bz == doctest::Approx((1.0 + std::tanh(5.0)) / 4.0).epsilon(1e-10));
  check_fields(p, kd, lambda, 20, 4);
  // Ghost states: incident data on the inflow sides, zero elsewhere.
  const GhostState g = p.ghost();
  const TEState in = g(a, a, 0.0, BoundarySide::XMinus);
  CHECK(in.Bz == doctest::Approx(p.fields(a, a, 0.0).Bz));
  const TEState out = g(a, a, 0.0, BoundarySide::XPlus);
  CHECK(out.Bz == 0.0);
}

TEST_CASE("problem registry") {
  for (const auto& n : problem_names()) CHECK(problem_by_name(n).name == n);
  CHECK_THROWS_AS(problem_by_name("dipole"), std::invalid_argument);
}

TEST_CASE("projection of a constant field") {
  ProblemSpec p = planewave();
  p.stream = [](double x, double y, double) { return 2.0 * y + 3.0 * x; };
  p.fields = [](double, double, double) { return TEState{2.0, -3.0, 0.5}; };
  p.periodic = false;
  for (int k = 0; k <= 4; ++k) {
    const CartesianMesh mesh = p.make_mesh(3, 3);
    const SimState s = project_initial(p, mesh, k);
    const StateLayout& l = s.layout;
    for (int f = 0; f < l.num_vfaces; ++f) {
      CHECK(s.u[l.vface_offset(f)] == doctest::Approx(2.0));
      for (int m = 1; m <= k; ++m) CHECK(std::abs(s.u[l.vface_offset(f) + m]) < 1e-12);
    }
    for (int f = 0; f < l.num_hfaces; ++f) CHECK(s.u[l.hface_offset(f)] == doctest::Approx(-3.0));
    for (int c = 0; c < l.num_cells; ++c) {
      CHECK(s.u[l.cell_offset(c)] == doctest::Approx(0.5));
      for (int m = 1; m < l.cell_dofs(); ++m) CHECK(std::abs(s.u[l.cell_offset(c) + m]) < 1e-12);
    }
  }
}

TEST_CASE("projection reproduces representable polynomial fields") {
  for (int k = 0; k <= 4; ++k) {
    ProblemSpec p = planewave();
    p.periodic = false;
    // psi of degree k+1 and B_z of degree k.
    p.stream = [k](double x, double y, double) {
      return std::pow(x + 0.3, k + 1) - 0.7 * std::pow(y, k + 1) + x * std::pow(y - 0.1, k);
    };
    p.fields = [k](double x, double y, double) {
      const double dpy = -0.7 * (k + 1) * std::pow(y, k) + (k > 0 ? x * k * std::pow(y - 0.1, k - 1) : 0.0);
      const double dpx = (k + 1) * std::pow(x + 0.3, k) + std::pow(y - 0.1, k);
      return TEState{dpy, -dpx, std::pow(x - y, k) + 1.0};
    };
    const CartesianMesh mesh = p.make_mesh(3, 2);
    const SimState s = project_initial(p, mesh, k);
    const ErrorReport e =
        error_norms(mesh, s.layout, s.u, [&](double x, double y) { return p.fields(x, y, 0.0); });
    INFO("k=" << k);
    CHECK(e.d_l2 < 1e-12);
    CHECK(e.bz_l2 < 1e-12);
  }
}

TEST_CASE("plane-wave projection converges at order k+1") {
  const ProblemSpec p = planewave();
  std::vector<double> eb, ed;
  for (int n : {8, 16}) {
    const CartesianMesh mesh = p.make_mesh(n, n);
    const SimState s = project_initial(p, mesh, 4);
    const ErrorReport e =
        error_norms(mesh, s.layout, s.u, [&](double x, double y) { return p.fields(x, y, 0.0); });
    eb.push_back(e.bz_l2);
    ed.push_back(e.d_l2);
  }
  CHECK(std::log2(eb[0] / eb[1]) == doctest::Approx(5.0).epsilon(0.08));
  CHECK(std::log2(ed[0] / ed[1]) == doctest::Approx(5.0).epsilon(0.08));
}

TEST_CASE("projection warns when compatibility fails") {
  ProblemSpec p = planewave();
  p.stream = [](double x, double y, double) { return x * x * y; };
  p.fields = [](double x, double y, double) { return TEState{x * x, -2.0 * x * y, 0.0}; };
  p.periodic = false;
  std::ostringstream ok;
  project_initial(p, p.make_mesh(4, 4), 1, 0.0, &ok);
  CHECK(ok.str().empty());
  // The same stream is not periodic in x, so on a periodic mesh the wrapped
  // faces disagree with their cells.
  p.periodic = true;
  std::ostringstream bad;
  project_initial(p, p.make_mesh(4, 4), 1, 0.0, &bad);
  CHECK(bad.str().find("warning") != std::string::npos);
}
