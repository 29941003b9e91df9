#include "cpdg/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cpdg {

bool a_active(int k, int i, int j) {
  if (i < 0 || j < 0 || i > kMaxPhiDegree || j > kMaxPhiDegree) return false;
  if (i + j <= k) return true;
  return (i == k + 1 && j == 0) || (i == 1 && j == k);
}

bool b_active(int k, int i, int j) { return a_active(k, j, i); }

BdfmField reconstruct(int k, const FaceModes& f, std::span<const double> moments, double dx,
                      double dy) {
  check_order(k);
  if (static_cast<int>(moments.size()) < num_moments(k)) {
    throw std::invalid_argument("order k=" + std::to_string(k) + " needs " +
                                std::to_string(num_moments(k)) + " cell moments");
  }
  if (!(dx > 0.0) || !(dy > 0.0)) throw std::invalid_argument("cell sizes must be positive");

  // Face modes above k are zero, so the k=4 formulas cover every order.
  ModeArray da{}, sa{}, db{}, sb{};
  for (int j = 0; j < kCoeffDim; ++j) {
    const bool used = j <= k;
    da[j] = used ? f.ap[j] - f.am[j] : 0.0;
    sa[j] = used ? 0.5 * (f.ap[j] + f.am[j]) : 0.0;
    db[j] = used ? f.bp[j] - f.bm[j] : 0.0;
    sb[j] = used ? 0.5 * (f.bp[j] + f.bm[j]) : 0.0;
  }
  const double r = dx / dy;
  const double rp = dy / dx;

  BdfmField out;
  out.k = k;
  auto& a = out.a;
  auto& b = out.b;

  a[0][0] = sa[0] + db[1] * r / 12.0;
  a[1][0] = da[0] + db[2] * r / 30.0;
  a[2][0] = -0.5 * db[1] * r + 3.0 / 140.0 * db[3] * r;
  a[3][0] = -db[2] * r / 3.0 + db[4] * r / 63.0;
  a[4][0] = -0.25 * db[3] * r;
  a[5][0] = -0.2 * db[4] * r;
  a[0][3] = sa[3];
  a[0][4] = sa[4];
  a[1][2] = da[2];
  a[1][3] = da[3];
  a[1][4] = da[4];

  b[0][0] = sb[0] + da[1] * rp / 12.0;
  b[0][1] = db[0] + da[2] * rp / 30.0;
  b[0][2] = -0.5 * da[1] * rp + 3.0 / 140.0 * da[3] * rp;
  b[0][3] = -da[2] * rp / 3.0 + da[4] * rp / 63.0;
  b[0][4] = -0.25 * da[3] * rp;
  b[0][5] = -0.2 * da[4] * rp;
  b[3][0] = sb[3];
  b[4][0] = sb[4];
  b[2][1] = db[2];
  b[3][1] = db[3];
  b[4][1] = db[4];

  const double r1 = sa[1];
  const double r2 = sb[1];
  const double r3 = da[1];
  const double r4 = sb[2];
  const double r5 = sa[2];
  const double r6 = db[1];

  if (k <= 2) {
    a[0][1] = r1;
    b[1][0] = r2;
  } else {
    const double w1 = moments[0];
    a[0][1] = (r1 * rp + r2 - w1) / (1.0 + rp);
    b[1][0] = w1 + a[0][1];
    a[2][1] = 6.0 * (r1 - a[0][1]);
    b[1][2] = 6.0 * (r2 - b[1][0]);
  }

  if (k <= 3) {
    a[1][1] = r3;
    a[0][2] = r5;
    b[2][0] = r4;
    b[1][1] = r6;
  } else {
    const double w2 = moments[1];
    const double w3 = moments[2];
    a[1][1] = (5.0 * r3 * rp + 2.0 * r4 - 2.0 * w2) / (2.0 + 5.0 * rp);
    a[3][1] = 10.0 * (r3 - a[1][1]);
    b[2][0] = w2 + a[1][1];
    b[2][2] = 6.0 * (r4 - b[2][0]);
    a[0][2] = (2.0 * r5 * rp + 5.0 * r6 - 5.0 * w3) / (5.0 + 2.0 * rp);
    a[2][2] = 6.0 * (r5 - a[0][2]);
    b[1][1] = w3 + a[0][2];
    b[1][3] = 10.0 * (r6 - b[1][1]);
  }
  return out;
}

BdfmField reconstruct(int k, const FaceModes& faces, const CellMoments& moments, double dx,
                      double dy) {
  return reconstruct(k, faces, std::span<const double>(moments.w), dx, dy);
}

namespace {

std::array<double, kCoeffDim> phi_all(double x) {
  std::array<double, kCoeffDim> v{};
  for (int j = 0; j < kCoeffDim; ++j) v[j] = phi(j, x);
  return v;
}

std::array<double, kCoeffDim> dphi_all(double x) {
  std::array<double, kCoeffDim> v{};
  for (int j = 0; j < kCoeffDim; ++j) v[j] = phi_deriv(j, x);
  return v;
}

}  // namespace

Vec2 eval_D(const BdfmField& field, double xi, double eta) {
  const auto px = phi_all(xi);
  const auto py = phi_all(eta);
  Vec2 d{0.0, 0.0};
  for (int i = 0; i < kCoeffDim; ++i) {
    for (int j = 0; j < kCoeffDim; ++j) {
      d.x += field.a[i][j] * px[i] * py[j];
      d.y += field.b[i][j] * px[i] * py[j];
    }
  }
  return d;
}

double divergence_residual(const BdfmField& field, double xi, double eta, double dx, double dy) {
  const auto px = phi_all(xi);
  const auto py = phi_all(eta);
  const auto dpx = dphi_all(xi);
  const auto dpy = dphi_all(eta);
  double ddx = 0.0;
  double ddy = 0.0;
  for (int i = 0; i < kCoeffDim; ++i) {
    for (int j = 0; j < kCoeffDim; ++j) {
      ddx += field.a[i][j] * dpx[i] * py[j];
      ddy += field.b[i][j] * px[i] * dpy[j];
    }
  }
  return ddx / dx + ddy / dy;
}

CellMoments moments_from_function(const ReferenceField& D, int k, int points) {
  check_order(k);
  CellMoments m;
  if (num_moments(k) == 0) return m;
  const QuadratureRule q = gauss_legendre(points > 0 ? points : k + 2);
  for (std::size_t p = 0; p < q.size(); ++p) {
    for (std::size_t s = 0; s < q.size(); ++s) {
      const double xi = q.nodes[p];
      const double eta = q.nodes[s];
      const double w = q.weights[p] * q.weights[s];
      const Vec2 d = D(xi, eta);
      m.w[0] += w * 12.0 * (d.y * xi - d.x * eta);
      if (k == 4) {
        m.w[1] += w * (180.0 * d.y * phi(2, xi) - 144.0 * d.x * xi * eta);
        m.w[2] += w * (144.0 * d.y * xi * eta - 180.0 * d.x * phi(2, eta));
      }
    }
  }
  return m;
}

double compatibility_residual(const FaceModes& faces, double dx, double dy) {
  return (faces.ap[0] - faces.am[0]) * dy + (faces.bp[0] - faces.bm[0]) * dx;
}

double face_scale(const FaceModes& faces) {
  double s = 0.0;
  for (int j = 0; j < kCoeffDim; ++j) {
    s = std::max({s, std::abs(faces.am[j]), std::abs(faces.ap[j]), std::abs(faces.bm[j]),
                  std::abs(faces.bp[j])});
  }
  return s;
}

}  // namespace cpdg
