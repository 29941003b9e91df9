#include "cpdg/basis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cpdg {

namespace {

void check_phi_degree(int j) {
  if (j < 0 || j > kMaxPhiDegree) {
    throw std::invalid_argument("unsupported degree " + std::to_string(j) +
                                " (orthogonal basis is defined for 0..5)");
  }
}

// Standard Gauss-Legendre nodes/weights on [-1, 1], n = 1..10.
struct StandardRule {
  std::vector<double> x;
  std::vector<double> w;
};

const std::array<StandardRule, 10>& standard_rules() {
  static const std::array<StandardRule, 10> rules = {{
      {{0.0}, {2.0}},
      {{-5.77350269189625764509e-1, 5.77350269189625764509e-1}, {1.0, 1.0}},
      {{-7.74596669241483377036e-1, 0.0, 7.74596669241483377036e-1},
       {5.55555555555555555556e-1, 8.88888888888888888889e-1, 5.55555555555555555556e-1}},
      {{-8.61136311594052575224e-1, -3.39981043584856264803e-1, 3.39981043584856264803e-1,
        8.61136311594052575224e-1},
       {3.47854845137453857373e-1, 6.52145154862546142627e-1, 6.52145154862546142627e-1,
        3.47854845137453857373e-1}},
      {{-9.06179845938663992798e-1, -5.38469310105683091036e-1, 0.0, 5.38469310105683091036e-1,
        9.06179845938663992798e-1},
       {2.36926885056189087514e-1, 4.78628670499366468041e-1, 5.68888888888888888889e-1,
        4.78628670499366468041e-1, 2.36926885056189087514e-1}},
      {{-9.32469514203152027812e-1, -6.61209386466264513661e-1, -2.38619186083196908631e-1,
        2.38619186083196908631e-1, 6.61209386466264513661e-1, 9.32469514203152027812e-1},
       {1.7132449237917034504e-1, 3.6076157304813860757e-1, 4.6791393457269104739e-1,
        4.6791393457269104739e-1, 3.6076157304813860757e-1, 1.7132449237917034504e-1}},
      {{-9.49107912342758524526e-1, -7.41531185599394439864e-1, -4.05845151377397166907e-1, 0.0,
        4.05845151377397166907e-1, 7.41531185599394439864e-1, 9.49107912342758524526e-1},
       {1.29484966168869693271e-1, 2.79705391489276667901e-1, 3.8183005050511894495e-1,
        4.17959183673469387755e-1, 3.8183005050511894495e-1, 2.79705391489276667901e-1,
        1.29484966168869693271e-1}},
      {{-9.60289856497536231684e-1, -7.96666477413626739592e-1, -5.25532409916328985818e-1,
        -1.83434642495649804939e-1, 1.83434642495649804939e-1, 5.25532409916328985818e-1,
        7.96666477413626739592e-1, 9.60289856497536231684e-1},
       {1.01228536290376259153e-1, 2.22381034453374470544e-1, 3.13706645877887287338e-1,
        3.62683783378361982965e-1, 3.62683783378361982965e-1, 3.13706645877887287338e-1,
        2.22381034453374470544e-1, 1.01228536290376259153e-1}},
      {{-9.68160239507626089836e-1, -8.36031107326635794299e-1, -6.13371432700590397309e-1,
        -3.24253423403808929039e-1, 0.0, 3.24253423403808929039e-1, 6.13371432700590397309e-1,
        8.36031107326635794299e-1, 9.68160239507626089836e-1},
       {8.12743883615744119719e-2, 1.80648160694857404058e-1, 2.60610696402935462319e-1,
        3.12347077040002840069e-1, 3.30239355001259763165e-1, 3.12347077040002840069e-1,
        2.60610696402935462319e-1, 1.80648160694857404058e-1, 8.12743883615744119719e-2}},
      {{-9.73906528517171720078e-1, -8.65063366688984510732e-1, -6.79409568299024406234e-1,
        -4.33395394129247190799e-1, -1.48874338981631210885e-1, 1.48874338981631210885e-1,
        4.33395394129247190799e-1, 6.79409568299024406234e-1, 8.65063366688984510732e-1,
        9.73906528517171720078e-1},
       {6.66713443086881375936e-2, 1.49451349150580593146e-1, 2.19086362515982043996e-1,
        2.69266719309996355091e-1, 2.95524224714752870174e-1, 2.95524224714752870174e-1,
        2.69266719309996355091e-1, 2.19086362515982043996e-1, 1.49451349150580593146e-1,
        6.66713443086881375936e-2}},
  }};
  return rules;
}

}  // namespace

void check_order(int k) {
  if (k < 0 || k > kMaxOrder) {
    throw std::invalid_argument("unsupported degree k=" + std::to_string(k) +
                                " (supported: 0..4)");
  }
}

double phi(int j, double x) {
  check_phi_degree(j);
  const double x2 = x * x;
  switch (j) {
    case 0: return 1.0;
    case 1: return x;
    case 2: return x2 - 1.0 / 12.0;
    case 3: return x * (x2 - 3.0 / 20.0);
    case 4: return x2 * (x2 - 3.0 / 14.0) + 3.0 / 560.0;
    default: return x * (x2 * (x2 - 5.0 / 18.0) + 5.0 / 336.0);
  }
}

double phi_deriv(int j, double x) {
  check_phi_degree(j);
  const double x2 = x * x;
  switch (j) {
    case 0: return 0.0;
    case 1: return 1.0;
    case 2: return 2.0 * x;
    case 3: return 3.0 * x2 - 3.0 / 20.0;
    case 4: return x * (4.0 * x2 - 3.0 / 7.0);
    default: return x2 * (5.0 * x2 - 5.0 / 6.0) + 5.0 / 336.0;
  }
}

double phi_norm2(int j) {
  check_phi_degree(j);
  static constexpr std::array<double, 6> norms = {1.0,          1.0 / 12.0,    1.0 / 180.0,
                                                  1.0 / 2800.0, 1.0 / 44100.0, 1.0 / 698544.0};
  return norms[static_cast<std::size_t>(j)];
}

double legendre(int n, double x) {
  if (n < 0) throw std::invalid_argument("negative Legendre degree");
  if (n == 0) return 1.0;
  double p0 = 1.0;
  double p1 = x;
  for (int m = 1; m < n; ++m) {
    const double p2 = ((2.0 * m + 1.0) * x * p1 - m * p0) / (m + 1.0);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

double legendre_deriv(int n, double x) {
  if (n < 0) throw std::invalid_argument("negative Legendre degree");
  // L'_{m+1} = L'_{m-1} + (2m+1) L_m avoids the endpoint singularity of the
  // (x^2-1) closed form.
  if (n == 0) return 0.0;
  double d_prev = 0.0;  // L'_0
  double d_curr = 1.0;  // L'_1
  for (int m = 1; m < n; ++m) {
    const double d_next = d_prev + (2.0 * m + 1.0) * legendre(m, x);
    d_prev = d_curr;
    d_curr = d_next;
  }
  return d_curr;
}

QuadratureRule gauss_legendre(int n) {
  if (n < 1 || n > 10) {
    throw std::invalid_argument("Gauss-Legendre point count must be in 1..10, got " +
                                std::to_string(n));
  }
  const auto& rule = standard_rules()[static_cast<std::size_t>(n - 1)];
  QuadratureRule out;
  out.nodes.reserve(static_cast<std::size_t>(n));
  out.weights.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out.nodes.push_back(0.5 * rule.x[static_cast<std::size_t>(i)]);
    out.weights.push_back(0.5 * rule.w[static_cast<std::size_t>(i)]);
  }
  return out;
}

ValueAndDerivative radau_correction(int k, Side side, double xi) {
  check_order(k);
  const double s = 2.0 * xi;
  const double lk = legendre(k, s);
  const double lk1 = legendre(k + 1, s);
  const double dlk = 2.0 * legendre_deriv(k, s);
  const double dlk1 = 2.0 * legendre_deriv(k + 1, s);
  if (side == Side::Left) {
    const double sign = (k % 2 == 0) ? 0.5 : -0.5;
    return {sign * (lk - lk1), sign * (dlk - dlk1)};
  }
  return {0.5 * (lk + lk1), 0.5 * (dlk + dlk1)};
}

namespace {

void check_nodes(std::span<const double> nodes, int j) {
  if (j < 0 || static_cast<std::size_t>(j) >= nodes.size()) {
    throw std::out_of_range("Lagrange index out of range");
  }
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    for (std::size_t b = a + 1; b < nodes.size(); ++b) {
      if (nodes[a] == nodes[b]) throw std::invalid_argument("duplicate interpolation nodes");
    }
  }
}

}  // namespace

double lagrange_eval(std::span<const double> nodes, int j, double xi) {
  check_nodes(nodes, j);
  const double xj = nodes[static_cast<std::size_t>(j)];
  double v = 1.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (static_cast<int>(i) == j) continue;
    v *= (xi - nodes[i]) / (xj - nodes[i]);
  }
  return v;
}

double lagrange_deriv(std::span<const double> nodes, int j, double xi) {
  check_nodes(nodes, j);
  const double xj = nodes[static_cast<std::size_t>(j)];
  double sum = 0.0;
  for (std::size_t m = 0; m < nodes.size(); ++m) {
    if (static_cast<int>(m) == j) continue;
    double term = 1.0 / (xj - nodes[m]);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (static_cast<int>(i) == j || i == m) continue;
      term *= (xi - nodes[i]) / (xj - nodes[i]);
    }
    sum += term;
  }
  return sum;
}

std::pair<int, int> mode_degrees(int i) {
  if (i < 0 || i >= num_modes_2d(kMaxOrder)) {
    throw std::out_of_range("2-D mode index " + std::to_string(i) + " out of range");
  }
  int d = 0;
  while (num_modes_2d(d) <= i) ++d;
  const int offset = i - (d == 0 ? 0 : num_modes_2d(d - 1));
  return {d - offset, offset};
}

double basis2d(int i, double xi, double eta) {
  const auto [p, q] = mode_degrees(i);
  return phi(p, xi) * phi(q, eta);
}

double basis2d_dxi(int i, double xi, double eta) {
  const auto [p, q] = mode_degrees(i);
  return phi_deriv(p, xi) * phi(q, eta);
}

double basis2d_deta(int i, double xi, double eta) {
  const auto [p, q] = mode_degrees(i);
  return phi(p, xi) * phi_deriv(q, eta);
}

double basis2d_norm2(int i) {
  const auto [p, q] = mode_degrees(i);
  return phi_norm2(p) * phi_norm2(q);
}

VandermondeMatrix vandermonde(int k) {
  check_order(k);
  const int n = k + 1;
  const QuadratureRule rule = gauss_legendre(n);
  VandermondeMatrix out;
  out.k = k;
  out.V.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out.V(i, j) = phi(j, rule.nodes[static_cast<std::size_t>(i)]);
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(out.V);
  if (!lu.isInvertible()) throw std::runtime_error("singular Vandermonde matrix");
  out.Vinv = lu.inverse();
  return out;
}

}  // namespace cpdg
