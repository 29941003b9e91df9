#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "cpdg/basis.hpp"
#include "cpdg/materials.hpp"
#include "cpdg/mesh.hpp"
#include "cpdg/reconstruction.hpp"
#include "cpdg/riemann.hpp"

namespace cpdg {

inline constexpr int kMaxPts = kMaxOrder + 1;

// Flat storage of one time level:
//   [vertical face modes | horizontal face modes | per-cell (alpha_0..alpha_{N-1}, omega...)]
struct StateLayout {
  int k = 0;
  int face_dofs = 0;     // k+1
  int cell_modes = 0;    // N(k)
  int cell_moments = 0;  // 0, 1 or 3
  int num_vfaces = 0;
  int num_hfaces = 0;
  int num_cells = 0;

  static StateLayout make(const CartesianMesh& mesh, int k);

  int cell_dofs() const { return cell_modes + cell_moments; }
  std::size_t vface_offset(int f) const { return static_cast<std::size_t>(f) * face_dofs; }
  std::size_t hface_offset(int f) const {
    return static_cast<std::size_t>(num_vfaces + f) * face_dofs;
  }
  std::size_t cell_offset(int c) const {
    return static_cast<std::size_t>(num_vfaces + num_hfaces) * face_dofs +
           static_cast<std::size_t>(c) * cell_dofs();
  }
  std::size_t size() const { return cell_offset(num_cells); }
};

struct SimState {
  StateLayout layout;
  std::vector<double> u;
  double t = 0.0;

  SimState() = default;
  explicit SimState(const StateLayout& l) : layout(l), u(l.size(), 0.0) {}
};

// Face modes of cell (i, j) gathered from the flat state.
FaceModes gather_face_modes(const CartesianMesh& mesh, const StateLayout& layout,
                            std::span<const double> u, int i, int j);
BdfmField cell_field(const CartesianMesh& mesh, const StateLayout& layout,
                     std::span<const double> u, int i, int j);
// B_z of cell (i, j) at a reference point.
double cell_bz(const StateLayout& layout, std::span<const double> u, int cell, double xi,
               double eta);
// Compatibility residual of cell (i, j).
double cell_compatibility(const CartesianMesh& mesh, const StateLayout& layout,
                          std::span<const double> u, int i, int j);

// Precomputed per-order tables: quadrature, active coefficient lists and
// basis values at every evaluation point, and the FR face operator.
struct DgTables {
  int k = 0;
  int n = 0;  // k+1 Gauss-Legendre points
  int modes = 0;
  int moments = 0;
  QuadratureRule gl;

  std::vector<std::pair<int, int>> a_list;
  std::vector<std::pair<int, int>> b_list;

  // Evaluation points: 4 sides x n (xm, xp, ym, yp), then the corners
  // (ll, lr, ul, ur), then n x n interior points (index p*n + s for xi_p, eta_s).
  int num_points = 0;
  int corner_base = 0;
  int interior_base = 0;
  std::vector<double> xi;
  std::vector<double> eta;
  std::vector<double> va;  // num_points x a_list.size()
  std::vector<double> vb;  // num_points x b_list.size()
  std::vector<double> vm;  // num_points x modes

  // Interior weights times basis derivatives: num_interior x modes.
  std::vector<double> w_dxi;
  std::vector<double> w_deta;
  std::vector<double> w_int;  // tensor weights

  // FR: modal rate = M h + cl h_left + cr h_right (before 1/delta and sign).
  std::array<std::array<double, kMaxPts>, kMaxPts> fr_m{};
  std::array<double, kMaxPts> fr_cl{};
  std::array<double, kMaxPts> fr_cr{};

  std::vector<double> inv_norm2;  // 1/||Phi_m||^2

  static DgTables make(int k);

  int side_point(int side, int q) const { return side * n + q; }
};

enum class FaceOrientation { Vertical, Horizontal };

// FR update of one face: the Riemann values hhat at the k+1 GL nodes and the
// vertex values at the two ends (bottom/top for a vertical face, left/right
// for a horizontal face). Vertical: +(1/dy) dH/deta, horizontal: -(1/dx) dH/dxi.
void fr_face_rhs(const DgTables& tab, std::span<const double> hhat, double h_lo, double h_hi,
                 double delta, FaceOrientation orient, std::span<double> out);

// Riemann values on the four faces of one cell, sides ordered xm, xp, ym, yp.
// e holds the tangential component: E_y on xm/xp, E_x on ym/yp.
struct CellFluxes {
  std::array<std::array<double, kMaxPts>, 4> h{};
  std::array<std::array<double, kMaxPts>, 4> e{};
};

// E and H at the n x n interior points of one cell.
struct CellInterior {
  std::array<double, kMaxPts * kMaxPts> ex{};
  std::array<double, kMaxPts * kMaxPts> ey{};
  std::array<double, kMaxPts * kMaxPts> hz{};
};

// Unnormalised volume and face parts of the B_z weak form; bz_dg_rhs adds them
// and divides by the mode norms.
void bz_volume_terms(const DgTables& tab, double dx, double dy, const CellInterior& in,
                     std::span<double> acc);
void bz_face_terms(const DgTables& tab, double dx, double dy, const CellFluxes& fl,
                   std::span<double> acc);
void bz_dg_rhs(const DgTables& tab, double dx, double dy, const CellFluxes& fl,
               const CellInterior& in, std::span<double> out);

// Moment rates; which = 1, 2, 3. Throws if the moment is not carried at order k.
double omega_volume_term(const DgTables& tab, double dx, double dy, const CellInterior& in,
                         int which);
double omega_face_term(const DgTables& tab, double dx, double dy, const CellFluxes& fl, int which);
double omega_rhs(const DgTables& tab, double dx, double dy, const CellFluxes& fl,
                 const CellInterior& in, int which);

enum class BoundarySide { XMinus, XPlus, YMinus, YPlus };

// Exterior state on a non-periodic boundary at physical point (x, y), time t.
using GhostState = std::function<TEState(double x, double y, double t, BoundarySide side)>;

// Semi-discrete operator for one mesh, material and order.
class Scheme {
 public:
  Scheme(const CartesianMesh& mesh, const MaterialSpec& material, int k, GhostState ghost = {},
         int threads = 1);

  const CartesianMesh& mesh() const { return mesh_; }
  const DgTables& tables() const { return tab_; }
  const StateLayout& layout() const { return layout_; }
  int k() const { return tab_.k; }
  int threads() const { return threads_; }
  void set_threads(int threads);

  // dudt = L(u) at time t (t only enters through boundary ghost states).
  // Uses internal scratch buffers, so one Scheme must not be shared across
  // concurrent callers.
  void compute_rhs(double t, std::span<const double> u, std::span<double> dudt);

  // Riemann values from the most recent compute_rhs call.
  std::span<const double> vface_hhat() const { return v_h_; }
  std::span<const double> hface_hhat() const { return h_h_; }
  std::span<const double> vertex_htilde() const { return vtx_h_; }

 private:
  void evaluate_cells(std::span<const double> u, std::span<double> dudt, int begin, int end);
  void solve_vfaces(double t, int begin, int end);
  void solve_hfaces(double t, int begin, int end);
  void solve_vertices(double t, int begin, int end);
  void update_vfaces(std::span<double> dudt, int begin, int end);
  void update_hfaces(std::span<double> dudt, int begin, int end);
  void finish_cells(std::span<double> dudt, int begin, int end);
  TEState ghost(double x, double y, double t, BoundarySide side) const;

  CartesianMesh mesh_;
  DgTables tab_;
  StateLayout layout_;
  GhostState ghost_;
  int threads_;

  std::vector<MaterialPoint> vmat_;    // per vertical face GL point
  std::vector<MaterialPoint> hmat_;    // per horizontal face GL point
  std::vector<MaterialPoint> vtxmat_;  // per vertex
  std::vector<double> inv_eps_;        // per cell interior point
  std::vector<double> inv_mu_;

  // Phase outputs. Face traces: (f*n + q)*2 + {0: left/below, 1: right/above}.
  std::vector<TEState> vtrace_;
  std::vector<TEState> htrace_;
  std::vector<TEState> corner_;  // v*4 + {DL, DR, UL, UR}
  std::vector<double> v_h_, v_e_, h_h_, h_e_;
  std::vector<double> vtx_h_;
};

}  // namespace cpdg
