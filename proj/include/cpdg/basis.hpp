#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace cpdg {

inline constexpr int kMaxOrder = 4;      // highest supported polynomial degree k
inline constexpr int kMaxPhiDegree = 5;  // the k=4 BDFM space uses phi_5

// Orthogonal polynomials on the reference interval [-1/2, 1/2]:
//   phi_0 = 1, phi_1 = x, phi_2 = x^2 - 1/12, phi_3 = x^3 - 3x/20,
//   phi_4 = x^4 - 3x^2/14 + 3/560, phi_5 = x^5 - 5x^3/18 + 5x/336.
// Throws std::invalid_argument("unsupported degree ...") for j outside [0, 5].
double phi(int j, double xi);
double phi_deriv(int j, double xi);

// Exact value of the integral of phi_j^2 over [-1/2, 1/2].
double phi_norm2(int j);

// Legendre polynomial L_n on [-1, 1] and its derivative (three-term recurrence).
double legendre(int n, double x);
double legendre_deriv(int n, double x);

struct QuadratureRule {
  std::vector<double> nodes;    // in [-1/2, 1/2], ascending
  std::vector<double> weights;  // sum to 1

  std::size_t size() const { return nodes.size(); }
};

// n-point Gauss-Legendre rule mapped to [-1/2, 1/2]; 1 <= n <= 10.
QuadratureRule gauss_legendre(int n);

enum class Side { Left, Right };

struct ValueAndDerivative {
  double value;
  double derivative;
};

// Radau correction functions of degree k+1 on [-1/2, 1/2]:
//   g_left(x)  = (-1)^k / 2 [L_k(2x) - L_{k+1}(2x)],  g_left(-1/2) = 1, g_left(1/2) = 0
//   g_right(x) = 1/2 [L_k(2x) + L_{k+1}(2x)],         g_right(1/2) = 1, g_right(-1/2) = 0
// The derivative is with respect to x (the scaled coordinate).
ValueAndDerivative radau_correction(int k, Side side, double xi);

// Lagrange cardinal polynomial l_j through `nodes`. Throws on duplicate nodes.
double lagrange_eval(std::span<const double> nodes, int j, double xi);
double lagrange_deriv(std::span<const double> nodes, int j, double xi);

// Number of 2-D modes of total degree <= k: (k+1)(k+2)/2.
constexpr int num_modes_2d(int k) { return (k + 1) * (k + 2) / 2; }

// Degrees (p, q) of the i-th 2-D mode Phi_i = phi_p(xi) phi_q(eta). Modes are
// grouped by total degree d, and within a group p runs from d down to 0.
std::pair<int, int> mode_degrees(int i);

// Phi_i(xi, eta); throws std::out_of_range for i outside [0, N(kMaxOrder)).
double basis2d(int i, double xi, double eta);
double basis2d_dxi(int i, double xi, double eta);
double basis2d_deta(int i, double xi, double eta);
double basis2d_norm2(int i);

// V_ij = phi_j(eta_i) at the (k+1) Gauss-Legendre nodes, and its inverse.
struct VandermondeMatrix {
  int k = 0;
  Eigen::MatrixXd V;
  Eigen::MatrixXd Vinv;
};

VandermondeMatrix vandermonde(int k);

void check_order(int k);

}  // namespace cpdg
