#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "cpdg/reconstruction.hpp"
#include "oracles.hpp"

using namespace cpdg;

namespace {

double max_abs(const CoeffTable& t) {
  double m = 0.0;
  for (const auto& row : t) for (double v : row) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

TEST_CASE("constant field is reproduced at k=3") {
  FaceModes f;
  f.am[0] = f.ap[0] = 1.0;
  const BdfmField F = reconstruct(3, f, CellMoments{}, 0.5, 0.5);
  for (int i = 0; i < kCoeffDim; ++i) {
    for (int j = 0; j < kCoeffDim; ++j) {
      CHECK(F.a[i][j] == doctest::Approx(i == 0 && j == 0 ? 1.0 : 0.0));
      CHECK(F.b[i][j] == 0.0);
    }
  }
  const Vec2 d = eval_D(F, 0.1, -0.3);
  CHECK(d.x == doctest::Approx(1.0));
  CHECK(d.y == doctest::Approx(0.0));
}

TEST_CASE("phi_1(eta) shear field at k=3") {
  FaceModes f;
  f.am[1] = f.ap[1] = 1.0;
  CellMoments m;
  m.w[0] = -1.0;
  const BdfmField F = reconstruct(3, f, m, 1.0, 1.0);
  CHECK(F.a[0][1] == doctest::Approx(1.0));
  CHECK(std::abs(F.b[1][0]) < 1e-14);
  CHECK(std::abs(F.a[2][1]) < 1e-14);
  CHECK(std::abs(F.b[1][2]) < 1e-14);
  const Vec2 d = eval_D(F, 0.3, 0.2);
  CHECK(d.x == doctest::Approx(0.2));
  CHECK(std::abs(d.y) < 1e-14);
}

TEST_CASE("stream-function oracle recovers every coefficient") {
  std::mt19937_64 rng(2024);
  for (int k = 0; k <= kMaxOrder; ++k) {
    for (double ar : {0.1, 1.0, 10.0}) {
      double worst = 0.0;
      for (int t = 0; t < 100; ++t) {
        const oracle::StreamField s = oracle::StreamField::random(k, ar * 0.01, 0.01, rng);
        const FaceModes f = s.faces();
        const CellMoments mom = moments_from_function(
            [&](double x, double y) { return s.D(x, y); }, k, 8);
        const BdfmField F = reconstruct(k, f, mom, s.dx, s.dy);
        CoeffTable a, b;
        s.coefficients(a, b);
        const double sa = max_abs(a), sb = max_abs(b);
        for (int i = 0; i < kCoeffDim; ++i) {
          for (int j = 0; j < kCoeffDim; ++j) {
            worst = std::max(worst, std::abs(F.a[i][j] - a[i][j]) / sa);
            worst = std::max(worst, std::abs(F.b[i][j] - b[i][j]) / sb);
            if (!a_active(k, i, j)) CHECK(F.a[i][j] == 0.0);
            if (!b_active(k, i, j)) CHECK(F.b[i][j] == 0.0);
          }
        }
        // Pointwise values and divergence at random points.
        std::uniform_real_distribution<double> u(-0.5, 0.5);
        for (int p = 0; p < 5; ++p) {
          const double x = u(rng), y = u(rng);
          const Vec2 d = eval_D(F, x, y), e = s.D(x, y);
          CHECK(d.x == doctest::Approx(e.x).epsilon(1e-10).scale(sa));
          CHECK(d.y == doctest::Approx(e.y).epsilon(1e-10).scale(sb));
          CHECK(std::abs(divergence_residual(F, x, y, s.dx, s.dy)) <
                1e-12 * (sa / s.dx + sb / s.dy));
        }
        CHECK(std::abs(compatibility_residual(f, s.dx, s.dy)) <
              1e-12 * face_scale(f) * (s.dx + s.dy));
      }
      INFO("k=" << k << " aspect " << ar);
      CHECK(worst < 1e-12);
    }
  }
}

TEST_CASE("reconstruction matches the face traces") {
  std::mt19937_64 rng(5);
  for (int k = 0; k <= kMaxOrder; ++k) {
    const oracle::StreamField s = oracle::StreamField::random(k, 0.3, 0.7, rng);
    const FaceModes f = s.faces();
    const BdfmField F = reconstruct(
        k, f, moments_from_function([&](double x, double y) { return s.D(x, y); }, k, 8), s.dx,
        s.dy);
    for (double e : {-0.4, 0.2}) {
      double am = 0.0, ap = 0.0, bm = 0.0, bp = 0.0;
      for (int j = 0; j <= k; ++j) {
        am += f.am[j] * phi(j, e);
        ap += f.ap[j] * phi(j, e);
        bm += f.bm[j] * phi(j, e);
        bp += f.bp[j] * phi(j, e);
      }
      CHECK(eval_D(F, -0.5, e).x == doctest::Approx(am));
      CHECK(eval_D(F, 0.5, e).x == doctest::Approx(ap));
      CHECK(eval_D(F, e, -0.5).y == doctest::Approx(bm));
      CHECK(eval_D(F, e, 0.5).y == doctest::Approx(bp));
    }
  }
}

TEST_CASE("divergence of a hand-built field") {
  BdfmField F;
  F.k = 1;
  F.a[1][0] = 1.0;
  CHECK(divergence_residual(F, 0.1, 0.2, 0.25, 2.0) == doctest::Approx(4.0));
  CHECK(divergence_residual(BdfmField{}, 0.3, -0.1, 1.0, 1.0) == 0.0);
}

TEST_CASE("moments of simple fields") {
  const CellMoments m = moments_from_function([](double, double y) { return Vec2{y, 0.0}; }, 3);
  CHECK(m.w[0] == doctest::Approx(-1.0));
  const CellMoments c = moments_from_function([](double, double) { return Vec2{2.0, -3.0}; }, 4);
  for (double w : c.w) CHECK(std::abs(w) < 1e-14);
  // k <= 2 carries none.
  const CellMoments z = moments_from_function([](double, double y) { return Vec2{y, 0.0}; }, 2);
  for (double w : z.w) CHECK(w == 0.0);
}

TEST_CASE("moment round trip through the reconstruction") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k : {3, 4}) {
    for (int t = 0; t < 20; ++t) {
      FaceModes f;
      for (int j = 0; j <= k; ++j) {
        f.am[j] = u(rng);
        f.ap[j] = u(rng);
        f.bm[j] = u(rng);
        f.bp[j] = u(rng);
      }
      CellMoments m;
      for (int w = 0; w < num_moments(k); ++w) m.w[w] = u(rng);
      const BdfmField F = reconstruct(k, f, m, 0.4, 0.9);
      const CellMoments back =
          moments_from_function([&](double x, double y) { return eval_D(F, x, y); }, k, 8);
      for (int w = 0; w < num_moments(k); ++w) CHECK(back.w[w] == doctest::Approx(m.w[w]).scale(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("compatibility residual") {
  FaceModes f;
  f.am[0] = f.ap[0] = 1.0;
  CHECK(compatibility_residual(f, 1.0, 1.0) == 0.0);
  FaceModes g;
  g.ap[0] = 1.0;
  CHECK(compatibility_residual(g, 3.0, 1.0) == doctest::Approx(1.0));
  g.bp[0] = 2.0;
  CHECK(compatibility_residual(g, 3.0, 1.0) == doctest::Approx(7.0));
  CHECK(face_scale(g) == 2.0);
}

TEST_CASE("active coefficient pattern") {
  for (int k = 0; k <= kMaxOrder; ++k) {
    int na = 0;
    for (int i = 0; i < kCoeffDim; ++i) {
      for (int j = 0; j < kCoeffDim; ++j) {
        na += a_active(k, i, j);
        CHECK(a_active(k, i, j) == b_active(k, j, i));
      }
    }
    CHECK(na == (k + 1) * (k + 2) / 2 + (k == 0 ? 1 : 2));
    CHECK(a_active(k, k + 1, 0));
    CHECK(a_active(k, 1, k));
  }
}

TEST_CASE("reconstruction input validation") {
  FaceModes f;
  CHECK_THROWS_AS(reconstruct(5, f, CellMoments{}, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(reconstruct(1, f, CellMoments{}, 0.0, 1.0), std::invalid_argument);
  const std::vector<double> one{0.0};
  CHECK_THROWS_AS(reconstruct(4, f, std::span<const double>(one), 1.0, 1.0), std::invalid_argument);
  CHECK_NOTHROW(reconstruct(3, f, std::span<const double>(one), 1.0, 1.0));
}
