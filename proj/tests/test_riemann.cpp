#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "cpdg/materials.hpp"
#include "cpdg/riemann.hpp"
#include "oracles.hpp"

using namespace cpdg;

TEST_CASE("1-D solver with equal states is consistent") {
  const TEState s{0.0, 0.3, 0.7};
  const FaceFlux f = riemann_1d(s, s, 1.0, 0.0, 1.0, 1.0);
  CHECK(f.hz == doctest::Approx(0.7));
  CHECK(f.ey == doctest::Approx(0.3));
  CHECK(f.ex == doctest::Approx(0.0));
}

TEST_CASE("1-D solver on a B_z jump") {
  const FaceFlux f = riemann_1d({0, 0, 1}, {0, 0, 0}, 1.0, 0.0, 1.0, 1.0);
  CHECK(f.hz == doctest::Approx(0.5));
  CHECK(f.ey == doctest::Approx(0.5));
}

TEST_CASE("1-D solver matches the characteristic upwind flux") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> pos(0.2, 5.0);
  for (int t = 0; t < 200; ++t) {
    const TEState L{u(rng), u(rng), u(rng)}, R{u(rng), u(rng), u(rng)};
    const double th = std::numbers::pi * u(rng);
    const double nx = std::cos(th), ny = std::sin(th);
    const double eps = pos(rng), mu = pos(rng);
    const FaceFlux f = riemann_1d(L, R, nx, ny, eps, mu);
    const Eigen::Vector3d ref = oracle::upwind_flux(L, R, nx, ny, eps, mu);
    CHECK(-ny * f.hz == doctest::Approx(ref(0)).epsilon(1e-13).scale(1.0));
    CHECK(nx * f.hz == doctest::Approx(ref(1)).epsilon(1e-13).scale(1.0));
    CHECK(nx * f.ey - ny * f.ex == doctest::Approx(ref(2)).epsilon(1e-13).scale(1.0));
    // Normal component is the plain average.
    const double dn = 0.5 * ((L.Dx + R.Dx) * nx + (L.Dy + R.Dy) * ny);
    CHECK(eps * (f.ex * nx + f.ey * ny) == doctest::Approx(dn).epsilon(1e-13).scale(1.0));
  }
}

TEST_CASE("1-D solver in SI units matches the oracle") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double eps = 2.25 * kEps0, mu = kMu0;
  const double dscale = vacuum_light_speed() * kEps0;
  for (int t = 0; t < 50; ++t) {
    const TEState L{dscale * u(rng), dscale * u(rng), u(rng)};
    const TEState R{dscale * u(rng), dscale * u(rng), u(rng)};
    const FaceFlux f = riemann_1d(L, R, 0.0, 1.0, eps, mu);
    const Eigen::Vector3d ref = oracle::upwind_flux(L, R, 0.0, 1.0, eps, mu);
    CHECK(-f.hz == doctest::Approx(ref(0)).epsilon(1e-12));
    CHECK(-f.ex == doctest::Approx(ref(2)).epsilon(1e-12));
  }
}

TEST_CASE("2-D vertex solver") {
  const TEState b2{0, 0, 2};
  CHECK(riemann_2d(b2, b2, b2, b2, 1.0, 1.0, 0.1, 0.1) == doctest::Approx(2.0));

  const TEState down{0, 0, 0}, up{1, 0, 0};
  CHECK(riemann_2d(down, down, up, up, 1.0, 1.0, 0.1, 0.1) == doctest::Approx(0.5));

  // D_y jump from left to right enters with the opposite sign.
  const TEState left{0, 0, 0}, right{0, 1, 0};
  CHECK(riemann_2d(left, right, left, right, 1.0, 1.0, 0.1, 0.1) == doctest::Approx(-0.5));

  // mu scales H = B/mu.
  CHECK(riemann_2d(b2, b2, b2, b2, 1.0, 4.0, 0.1, 0.1) == doctest::Approx(0.5));
  CHECK_THROWS_AS(riemann_2d(b2, b2, b2, b2, 0.0, 1.0, 0.1, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(riemann_1d(b2, b2, 1.0, 0.0, 1.0, -1.0), std::invalid_argument);
}

TEST_CASE("2-D solver reduces to the 1-D solver") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> pos(0.2, 5.0);
  for (int t = 0; t < 200; ++t) {
    const double eps = pos(rng), mu = pos(rng), h = pos(rng);
    const TEState D{u(rng), u(rng), u(rng)}, U{u(rng), u(rng), u(rng)};
    const TEState Lf{u(rng), u(rng), u(rng)}, Rt{u(rng), u(rng), u(rng)};
    // Rows equal: vertical jump only.
    const double v = riemann_2d(D, D, U, U, eps, mu, h, h);
    CHECK(v == doctest::Approx(riemann_1d(D, U, 0.0, 1.0, eps, mu).hz).epsilon(1e-13).scale(1.0));
    // Columns equal: horizontal jump only.
    const double w = riemann_2d(Lf, Rt, Lf, Rt, eps, mu, h, h);
    CHECK(w == doctest::Approx(riemann_1d(Lf, Rt, 1.0, 0.0, eps, mu).hz).epsilon(1e-13).scale(1.0));
    // Anisotropic cells with h equal to the spacing normal to the jump.
    const double a = riemann_2d(D, D, U, U, eps, mu, 2.0 * h, h, h);
    CHECK(a == doctest::Approx(riemann_1d(D, U, 0.0, 1.0, eps, mu).hz).epsilon(1e-13).scale(1.0));
  }
}
