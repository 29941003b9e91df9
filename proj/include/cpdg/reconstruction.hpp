#pragma once

#include <array>
#include <functional>
#include <span>

#include "cpdg/basis.hpp"

namespace cpdg {

inline constexpr int kCoeffDim = kMaxPhiDegree + 1;
using CoeffTable = std::array<std::array<double, kCoeffDim>, kCoeffDim>;
using ModeArray = std::array<double, kCoeffDim>;

// Normal-D modes on the four faces of one cell. am/ap are the left/right
// vertical faces (coefficients of phi_j(eta)), bm/bp the bottom/top
// horizontal faces (coefficients of phi_j(xi)). Entries above k are zero.
struct FaceModes {
  ModeArray am{};
  ModeArray ap{};
  ModeArray bm{};
  ModeArray bp{};
};

// Cell moments needed for k >= 3: w[0] = omega_1, w[1] = omega_2, w[2] = omega_3.
struct CellMoments {
  std::array<double, 3> w{};
};

// Number of moments carried per cell: 0 for k <= 2, 1 for k = 3, 3 for k = 4.
constexpr int num_moments(int k) { return k < 3 ? 0 : (k == 3 ? 1 : 3); }

// D_x = sum a[i][j] phi_i(xi) phi_j(eta), D_y = sum b[i][j] phi_i(xi) phi_j(eta).
struct BdfmField {
  int k = 0;
  CoeffTable a{};
  CoeffTable b{};
};

struct Vec2 {
  double x;
  double y;
};

// Coefficients that may be nonzero at order k: total degree <= k, plus the
// degree k+1 terms a_{k+1,0}, a_{1,k} (and b_{0,k+1}, b_{k,1}).
bool a_active(int k, int i, int j);
bool b_active(int k, int i, int j);

// Divergence-free reconstruction from face modes (and moments when k >= 3).
// For k <= 2 `moments` is ignored. Throws std::invalid_argument for an
// unsupported k or too few moments.
BdfmField reconstruct(int k, const FaceModes& faces, std::span<const double> moments, double dx,
                      double dy);
BdfmField reconstruct(int k, const FaceModes& faces, const CellMoments& moments, double dx,
                      double dy);

Vec2 eval_D(const BdfmField& field, double xi, double eta);

// (1/dx) dDx/dxi + (1/dy) dDy/deta at a reference point.
double divergence_residual(const BdfmField& field, double xi, double eta, double dx, double dy);

using ReferenceField = std::function<Vec2(double xi, double eta)>;

// Moments of a field on the reference cell by tensor Gauss-Legendre
// quadrature with `points` nodes per axis (default k+2):
//   omega_1 = 12 II (Dy xi - Dx eta)
//   omega_2 = II (180 Dy phi_2(xi) - 144 Dx xi eta)
//   omega_3 = II (144 Dy xi eta - 180 Dx phi_2(eta))
// Entries not carried at order k are left zero.
CellMoments moments_from_function(const ReferenceField& D, int k, int points = 0);

// (a0+ - a0-) dy + (b0+ - b0-) dx.
double compatibility_residual(const FaceModes& faces, double dx, double dy);

// Largest absolute zeroth/higher face mode; used to scale residual checks.
double face_scale(const FaceModes& faces);

}  // namespace cpdg
