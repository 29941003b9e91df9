#include "cpdg/solver.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cpdg/parallel.hpp"

namespace cpdg {

StateLayout StateLayout::make(const CartesianMesh& mesh, int k) {
  check_order(k);
  StateLayout l;
  l.k = k;
  l.face_dofs = k + 1;
  l.cell_modes = num_modes_2d(k);
  l.cell_moments = num_moments(k);
  l.num_vfaces = mesh.num_vfaces();
  l.num_hfaces = mesh.num_hfaces();
  l.num_cells = mesh.num_cells();
  return l;
}

FaceModes gather_face_modes(const CartesianMesh& mesh, const StateLayout& layout,
                            std::span<const double> u, int i, int j) {
  const CellFaces cf = mesh.cell_faces(i, j);
  FaceModes f;
  const std::size_t oxm = layout.vface_offset(cf.xm);
  const std::size_t oxp = layout.vface_offset(cf.xp);
  const std::size_t oym = layout.hface_offset(cf.ym);
  const std::size_t oyp = layout.hface_offset(cf.yp);
  for (int q = 0; q < layout.face_dofs; ++q) {
    f.am[q] = u[oxm + q];
    f.ap[q] = u[oxp + q];
    f.bm[q] = u[oym + q];
    f.bp[q] = u[oyp + q];
  }
  return f;
}

BdfmField cell_field(const CartesianMesh& mesh, const StateLayout& layout,
                     std::span<const double> u, int i, int j) {
  const FaceModes f = gather_face_modes(mesh, layout, u, i, j);
  const std::size_t off = layout.cell_offset(mesh.cell_id(i, j)) + layout.cell_modes;
  return reconstruct(layout.k, f, u.subspan(off, layout.cell_moments), mesh.dx(), mesh.dy());
}

double cell_bz(const StateLayout& layout, std::span<const double> u, int cell, double xi,
               double eta) {
  const std::size_t off = layout.cell_offset(cell);
  double v = 0.0;
  for (int m = 0; m < layout.cell_modes; ++m) v += u[off + m] * basis2d(m, xi, eta);
  return v;
}

double cell_compatibility(const CartesianMesh& mesh, const StateLayout& layout,
                          std::span<const double> u, int i, int j) {
  return compatibility_residual(gather_face_modes(mesh, layout, u, i, j), mesh.dx(), mesh.dy());
}

DgTables DgTables::make(int k) {
  check_order(k);
  DgTables t;
  t.k = k;
  t.n = k + 1;
  t.modes = num_modes_2d(k);
  t.moments = num_moments(k);
  t.gl = gauss_legendre(t.n);
  const int n = t.n;

  for (int i = 0; i < kCoeffDim; ++i) {
    for (int j = 0; j < kCoeffDim; ++j) {
      if (a_active(k, i, j)) t.a_list.emplace_back(i, j);
      if (b_active(k, i, j)) t.b_list.emplace_back(i, j);
    }
  }

  const auto& g = t.gl.nodes;
  for (int q = 0; q < n; ++q) { t.xi.push_back(-0.5); t.eta.push_back(g[q]); }
  for (int q = 0; q < n; ++q) { t.xi.push_back(0.5); t.eta.push_back(g[q]); }
  for (int q = 0; q < n; ++q) { t.xi.push_back(g[q]); t.eta.push_back(-0.5); }
  for (int q = 0; q < n; ++q) { t.xi.push_back(g[q]); t.eta.push_back(0.5); }
  t.corner_base = 4 * n;
  for (const double cy : {-0.5, 0.5}) {
    for (const double cx : {-0.5, 0.5}) { t.xi.push_back(cx); t.eta.push_back(cy); }
  }
  t.interior_base = t.corner_base + 4;
  for (int p = 0; p < n; ++p) {
    for (int s = 0; s < n; ++s) { t.xi.push_back(g[p]); t.eta.push_back(g[s]); }
  }
  t.num_points = static_cast<int>(t.xi.size());

  const std::size_t na = t.a_list.size();
  const std::size_t nb = t.b_list.size();
  t.va.resize(t.num_points * na);
  t.vb.resize(t.num_points * nb);
  t.vm.resize(static_cast<std::size_t>(t.num_points * t.modes));
  for (int p = 0; p < t.num_points; ++p) {
    for (std::size_t c = 0; c < na; ++c) {
      const auto [i, j] = t.a_list[c];
      t.va[p * na + c] = phi(i, t.xi[p]) * phi(j, t.eta[p]);
    }
    for (std::size_t c = 0; c < nb; ++c) {
      const auto [i, j] = t.b_list[c];
      t.vb[p * nb + c] = phi(i, t.xi[p]) * phi(j, t.eta[p]);
    }
    for (int m = 0; m < t.modes; ++m) t.vm[p * t.modes + m] = basis2d(m, t.xi[p], t.eta[p]);
  }

  t.w_int.resize(static_cast<std::size_t>(n * n));
  t.w_dxi.resize(static_cast<std::size_t>(n * n * t.modes));
  t.w_deta.resize(static_cast<std::size_t>(n * n * t.modes));
  for (int p = 0; p < n; ++p) {
    for (int s = 0; s < n; ++s) {
      const int ip = p * n + s;
      const double w = t.gl.weights[p] * t.gl.weights[s];
      t.w_int[ip] = w;
      for (int m = 0; m < t.modes; ++m) {
        t.w_dxi[ip * t.modes + m] = w * basis2d_dxi(m, g[p], g[s]);
        t.w_deta[ip * t.modes + m] = w * basis2d_deta(m, g[p], g[s]);
      }
    }
  }

  // FR operator on the GL solution points.
  const VandermondeMatrix vdm = vandermonde(k);
  Eigen::MatrixXd R(n, n);
  Eigen::VectorXd gl_d(n), gr_d(n);
  for (int i = 0; i < n; ++i) {
    gl_d(i) = radau_correction(k, Side::Left, g[i]).derivative;
    gr_d(i) = radau_correction(k, Side::Right, g[i]).derivative;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      R(i, j) = lagrange_deriv(g, j, g[i]) - gl_d(i) * lagrange_eval(g, j, -0.5) -
                gr_d(i) * lagrange_eval(g, j, 0.5);
    }
  }
  const Eigen::MatrixXd M = vdm.Vinv * R;
  const Eigen::VectorXd cl = vdm.Vinv * gl_d;
  const Eigen::VectorXd cr = vdm.Vinv * gr_d;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) t.fr_m[i][j] = M(i, j);
    t.fr_cl[i] = cl(i);
    t.fr_cr[i] = cr(i);
  }

  for (int m = 0; m < t.modes; ++m) t.inv_norm2.push_back(1.0 / basis2d_norm2(m));
  return t;
}

void fr_face_rhs(const DgTables& tab, std::span<const double> hhat, double h_lo, double h_hi,
                 double delta, FaceOrientation orient, std::span<double> out) {
  const int n = tab.n;
  if (static_cast<int>(hhat.size()) != n || static_cast<int>(out.size()) != n) {
    throw std::invalid_argument("fr_face_rhs expects k+1 flux values and outputs");
  }
  const double s = (orient == FaceOrientation::Vertical ? 1.0 : -1.0) / delta;
  for (int j = 0; j < n; ++j) {
    double r = tab.fr_cl[j] * h_lo + tab.fr_cr[j] * h_hi;
    for (int q = 0; q < n; ++q) r += tab.fr_m[j][q] * hhat[q];
    out[j] = s * r;
  }
}

void bz_volume_terms(const DgTables& tab, double dx, double dy, const CellInterior& in,
                     std::span<double> acc) {
  const int np = tab.n * tab.n;
  const int nm = tab.modes;
  for (int ip = 0; ip < np; ++ip) {
    const double ey = in.ey[ip] / dx;
    const double ex = in.ex[ip] / dy;
    const double* wx = &tab.w_dxi[ip * nm];
    const double* wy = &tab.w_deta[ip * nm];
    for (int m = 0; m < nm; ++m) acc[m] += wx[m] * ey - wy[m] * ex;
  }
}

void bz_face_terms(const DgTables& tab, double dx, double dy, const CellFluxes& fl,
                   std::span<double> acc) {
  const int n = tab.n;
  const int nm = tab.modes;
  for (int q = 0; q < n; ++q) {
    const double w = tab.gl.weights[q];
    const double ey_lo = w * fl.e[0][q] / dx;
    const double ey_hi = w * fl.e[1][q] / dx;
    const double ex_lo = w * fl.e[2][q] / dy;
    const double ex_hi = w * fl.e[3][q] / dy;
    const double* pxm = &tab.vm[tab.side_point(0, q) * nm];
    const double* pxp = &tab.vm[tab.side_point(1, q) * nm];
    const double* pym = &tab.vm[tab.side_point(2, q) * nm];
    const double* pyp = &tab.vm[tab.side_point(3, q) * nm];
    for (int m = 0; m < nm; ++m) {
      acc[m] += ey_lo * pxm[m] - ey_hi * pxp[m] + ex_hi * pyp[m] - ex_lo * pym[m];
    }
  }
}

void bz_dg_rhs(const DgTables& tab, double dx, double dy, const CellFluxes& fl,
               const CellInterior& in, std::span<double> out) {
  if (static_cast<int>(out.size()) != tab.modes) {
    throw std::invalid_argument("bz_dg_rhs output must hold N(k) modes");
  }
  for (auto& v : out) v = 0.0;
  bz_volume_terms(tab, dx, dy, in, out);
  bz_face_terms(tab, dx, dy, fl, out);
  for (int m = 0; m < tab.modes; ++m) out[m] *= tab.inv_norm2[m];
}

namespace {

void check_moment(const DgTables& tab, int which) {
  if (which < 1 || which > 3 || which > tab.moments) {
    throw std::invalid_argument("moment omega_" + std::to_string(which) +
                                " is not carried at order k=" + std::to_string(tab.k));
  }
}

}  // namespace

double omega_volume_term(const DgTables& tab, double dx, double dy, const CellInterior& in,
                         int which) {
  check_moment(tab, which);
  const int n = tab.n;
  double s = 0.0;
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      const int ip = p * n + q;
      const double f = which == 1 ? 1.0 : (which == 2 ? tab.gl.nodes[p] : tab.gl.nodes[q]);
      s += tab.w_int[ip] * f * in.hz[ip];
    }
  }
  switch (which) {
    case 1: return 12.0 * (1.0 / dx + 1.0 / dy) * s;
    case 2: return (360.0 / dx + 144.0 / dy) * s;
    default: return (144.0 / dx + 360.0 / dy) * s;
  }
}

double omega_face_term(const DgTables& tab, double dx, double dy, const CellFluxes& fl,
                       int which) {
  check_moment(tab, which);
  // Plain and coordinate-weighted face integrals of Hhat per side.
  std::array<double, 4> i0{};
  std::array<double, 4> i1{};
  for (int side = 0; side < 4; ++side) {
    for (int q = 0; q < tab.n; ++q) {
      const double w = tab.gl.weights[q];
      i0[side] += w * fl.h[side][q];
      i1[side] += w * tab.gl.nodes[q] * fl.h[side][q];
    }
  }
  switch (which) {
    case 1:
      return -12.0 / dx * 0.5 * (i0[0] + i0[1]) - 12.0 / dy * 0.5 * (i0[2] + i0[3]);
    case 2:
      return -180.0 / dx * (i0[1] - i0[0]) / 6.0 - 144.0 / dy * 0.5 * (i1[2] + i1[3]);
    default:
      return -144.0 / dx * 0.5 * (i1[0] + i1[1]) - 180.0 / dy * (i0[3] - i0[2]) / 6.0;
  }
}

double omega_rhs(const DgTables& tab, double dx, double dy, const CellFluxes& fl,
                 const CellInterior& in, int which) {
  return omega_volume_term(tab, dx, dy, in, which) + omega_face_term(tab, dx, dy, fl, which);
}

Scheme::Scheme(const CartesianMesh& mesh, const MaterialSpec& material, int k, GhostState ghost,
               int threads)
    : mesh_(mesh),
      tab_(DgTables::make(k)),
      layout_(StateLayout::make(mesh, k)),
      ghost_(std::move(ghost)),
      threads_(std::max(1, threads)) {
  if ((!mesh.periodic_x() || !mesh.periodic_y()) && !ghost_) {
    throw std::invalid_argument("non-periodic mesh needs a boundary ghost state");
  }
  const int n = tab_.n;
  const auto& g = tab_.gl.nodes;
  const double dx = mesh.dx();
  const double dy = mesh.dy();

  vmat_.resize(static_cast<std::size_t>(layout_.num_vfaces * n));
  for (int f = 0; f < layout_.num_vfaces; ++f) {
    const auto [i, j] = mesh.vface_lines(f);
    for (int q = 0; q < n; ++q) {
      vmat_[f * n + q] = material.at(mesh.x_line(i), mesh.y_line(j) + (0.5 + g[q]) * dy);
    }
  }
  hmat_.resize(static_cast<std::size_t>(layout_.num_hfaces * n));
  for (int f = 0; f < layout_.num_hfaces; ++f) {
    const auto [i, j] = mesh.hface_lines(f);
    for (int q = 0; q < n; ++q) {
      hmat_[f * n + q] = material.at(mesh.x_line(i) + (0.5 + g[q]) * dx, mesh.y_line(j));
    }
  }
  vtxmat_.resize(static_cast<std::size_t>(mesh.num_vertices()));
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    const auto [i, j] = mesh.vertex_lines(v);
    vtxmat_[v] = material.at(mesh.x_line(i), mesh.y_line(j));
  }
  const int nint = n * n;
  inv_eps_.resize(static_cast<std::size_t>(mesh.num_cells() * nint));
  inv_mu_.resize(inv_eps_.size());
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const CellIndex ci = mesh.cell_of(c);
    for (int ip = 0; ip < nint; ++ip) {
      const int p = tab_.interior_base + ip;
      const Point x = mesh.to_physical(ci.i, ci.j, tab_.xi[p], tab_.eta[p]);
      const MaterialPoint m = material.at(x.x, x.y);
      inv_eps_[c * nint + ip] = 1.0 / m.eps;
      inv_mu_[c * nint + ip] = 1.0 / m.mu;
    }
  }

  vtrace_.resize(vmat_.size() * 2);
  htrace_.resize(hmat_.size() * 2);
  corner_.resize(vtxmat_.size() * 4);
  v_h_.resize(vmat_.size());
  v_e_.resize(vmat_.size());
  h_h_.resize(hmat_.size());
  h_e_.resize(hmat_.size());
  vtx_h_.resize(vtxmat_.size());
}

void Scheme::set_threads(int threads) { threads_ = std::max(1, threads); }

TEState Scheme::ghost(double x, double y, double t, BoundarySide side) const {
  return ghost_(x, y, t, side);
}

void Scheme::compute_rhs(double t, std::span<const double> u, std::span<double> dudt) {
  if (u.size() != layout_.size() || dudt.size() != layout_.size()) {
    throw std::invalid_argument("state size does not match the scheme layout");
  }
  parallel_for(layout_.num_cells, threads_,
               [&](int b, int e) { evaluate_cells(u, dudt, b, e); });
  parallel_for(layout_.num_vfaces, threads_, [&](int b, int e) { solve_vfaces(t, b, e); });
  parallel_for(layout_.num_hfaces, threads_, [&](int b, int e) { solve_hfaces(t, b, e); });
  parallel_for(mesh_.num_vertices(), threads_, [&](int b, int e) { solve_vertices(t, b, e); });
  parallel_for(layout_.num_vfaces, threads_, [&](int b, int e) { update_vfaces(dudt, b, e); });
  parallel_for(layout_.num_hfaces, threads_, [&](int b, int e) { update_hfaces(dudt, b, e); });
  parallel_for(layout_.num_cells, threads_, [&](int b, int e) { finish_cells(dudt, b, e); });
}

void Scheme::evaluate_cells(std::span<const double> u, std::span<double> dudt, int begin,
                            int end) {
  const int n = tab_.n;
  const int k = tab_.k;
  const int nm = tab_.modes;
  const std::size_t na = tab_.a_list.size();
  const std::size_t nb = tab_.b_list.size();
  const double dx = mesh_.dx();
  const double dy = mesh_.dy();
  std::array<double, kCoeffDim * kCoeffDim> ca{};
  std::array<double, kCoeffDim * kCoeffDim> cb{};
  CellInterior in;

  for (int c = begin; c < end; ++c) {
    const CellIndex ci = mesh_.cell_of(c);
    const int i = ci.i;
    const int j = ci.j;
    const std::size_t off = layout_.cell_offset(c);
    const FaceModes faces = gather_face_modes(mesh_, layout_, u, i, j);
    const BdfmField fld =
        reconstruct(k, faces, u.subspan(off + nm, layout_.cell_moments), dx, dy);
    for (std::size_t q = 0; q < na; ++q) ca[q] = fld.a[tab_.a_list[q].first][tab_.a_list[q].second];
    for (std::size_t q = 0; q < nb; ++q) cb[q] = fld.b[tab_.b_list[q].first][tab_.b_list[q].second];
    const double* alpha = &u[off];

    auto eval = [&](int p) {
      const double* pa = &tab_.va[p * na];
      const double* pb = &tab_.vb[p * nb];
      const double* pm = &tab_.vm[p * nm];
      TEState s;
      for (std::size_t q = 0; q < na; ++q) s.Dx += ca[q] * pa[q];
      for (std::size_t q = 0; q < nb; ++q) s.Dy += cb[q] * pb[q];
      for (int m = 0; m < nm; ++m) s.Bz += alpha[m] * pm[m];
      return s;
    };

    const CellFaces cf = mesh_.cell_faces(i, j);
    for (int q = 0; q < n; ++q) {
      vtrace_[(cf.xm * n + q) * 2 + 1] = eval(tab_.side_point(0, q));
      vtrace_[(cf.xp * n + q) * 2 + 0] = eval(tab_.side_point(1, q));
      htrace_[(cf.ym * n + q) * 2 + 1] = eval(tab_.side_point(2, q));
      htrace_[(cf.yp * n + q) * 2 + 0] = eval(tab_.side_point(3, q));
    }
    const CellVertices cv = mesh_.cell_vertices(i, j);
    const int cb0 = tab_.corner_base;
    corner_[cv.ll * 4 + 3] = eval(cb0 + 0);
    corner_[cv.lr * 4 + 2] = eval(cb0 + 1);
    corner_[cv.ul * 4 + 1] = eval(cb0 + 2);
    corner_[cv.ur * 4 + 0] = eval(cb0 + 3);

    const int nint = n * n;
    for (int ip = 0; ip < nint; ++ip) {
      const TEState s = eval(tab_.interior_base + ip);
      const double ie = inv_eps_[c * nint + ip];
      in.ex[ip] = s.Dx * ie;
      in.ey[ip] = s.Dy * ie;
      in.hz[ip] = s.Bz * inv_mu_[c * nint + ip];
    }

    std::span<double> acc = dudt.subspan(off, layout_.cell_dofs());
    for (auto& v : acc) v = 0.0;
    bz_volume_terms(tab_, dx, dy, in, acc.first(nm));
    for (int w = 1; w <= layout_.cell_moments; ++w) {
      acc[nm + w - 1] = omega_volume_term(tab_, dx, dy, in, w);
    }
  }
}

void Scheme::solve_vfaces(double t, int begin, int end) {
  const int n = tab_.n;
  const auto& g = tab_.gl.nodes;
  for (int f = begin; f < end; ++f) {
    const auto [i, j] = mesh_.vface_lines(f);
    const bool lo_bnd = !mesh_.periodic_x() && i == 0;
    const bool hi_bnd = !mesh_.periodic_x() && i == mesh_.nx();
    for (int q = 0; q < n; ++q) {
      const int idx = f * n + q;
      TEState l = vtrace_[idx * 2 + 0];
      TEState r = vtrace_[idx * 2 + 1];
      if (lo_bnd || hi_bnd) {
        const double x = mesh_.x_line(i);
        const double y = mesh_.y_line(j) + (0.5 + g[q]) * mesh_.dy();
        if (lo_bnd) l = ghost(x, y, t, BoundarySide::XMinus);
        if (hi_bnd) r = ghost(x, y, t, BoundarySide::XPlus);
      }
      const FaceFlux fl = riemann_1d(l, r, 1.0, 0.0, vmat_[idx].eps, vmat_[idx].mu);
      v_h_[idx] = fl.hz;
      v_e_[idx] = fl.ey;
    }
  }
}

void Scheme::solve_hfaces(double t, int begin, int end) {
  const int n = tab_.n;
  const auto& g = tab_.gl.nodes;
  for (int f = begin; f < end; ++f) {
    const auto [i, j] = mesh_.hface_lines(f);
    const bool lo_bnd = !mesh_.periodic_y() && j == 0;
    const bool hi_bnd = !mesh_.periodic_y() && j == mesh_.ny();
    for (int q = 0; q < n; ++q) {
      const int idx = f * n + q;
      TEState l = htrace_[idx * 2 + 0];
      TEState r = htrace_[idx * 2 + 1];
      if (lo_bnd || hi_bnd) {
        const double x = mesh_.x_line(i) + (0.5 + g[q]) * mesh_.dx();
        const double y = mesh_.y_line(j);
        if (lo_bnd) l = ghost(x, y, t, BoundarySide::YMinus);
        if (hi_bnd) r = ghost(x, y, t, BoundarySide::YPlus);
      }
      const FaceFlux fl = riemann_1d(l, r, 0.0, 1.0, hmat_[idx].eps, hmat_[idx].mu);
      h_h_[idx] = fl.hz;
      h_e_[idx] = fl.ex;
    }
  }
}

void Scheme::solve_vertices(double t, int begin, int end) {
  const int nx = mesh_.nx();
  const int ny = mesh_.ny();
  const bool px = mesh_.periodic_x();
  const bool py = mesh_.periodic_y();
  for (int v = begin; v < end; ++v) {
    const auto [i, j] = mesh_.vertex_lines(v);
    std::array<TEState, 4> s;
    for (int slot = 0; slot < 4; ++slot) {
      const int ci = i - 1 + (slot & 1);
      const int cj = j - 1 + (slot >> 1);
      const bool out_x = !px && (ci < 0 || ci >= nx);
      const bool out_y = !py && (cj < 0 || cj >= ny);
      if (!out_x && !out_y) {
        s[slot] = corner_[v * 4 + slot];
        continue;
      }
      BoundarySide side;
      if (out_x) {
        side = ci < 0 ? BoundarySide::XMinus : BoundarySide::XPlus;
      } else {
        side = cj < 0 ? BoundarySide::YMinus : BoundarySide::YPlus;
      }
      s[slot] = ghost(mesh_.x_line(i), mesh_.y_line(j), t, side);
    }
    const MaterialPoint& m = vtxmat_[v];
    vtx_h_[v] = riemann_2d(s[0], s[1], s[2], s[3], m.eps, m.mu, mesh_.dx(), mesh_.dy());
  }
}

void Scheme::update_vfaces(std::span<double> dudt, int begin, int end) {
  const int n = tab_.n;
  for (int f = begin; f < end; ++f) {
    const auto [i, j] = mesh_.vface_lines(f);
    const double lo = vtx_h_[mesh_.vertex(i, j)];
    const double hi = vtx_h_[mesh_.vertex(i, j + 1)];
    fr_face_rhs(tab_, std::span<const double>(v_h_).subspan(f * n, n), lo, hi, mesh_.dy(),
                FaceOrientation::Vertical, dudt.subspan(layout_.vface_offset(f), n));
  }
}

void Scheme::update_hfaces(std::span<double> dudt, int begin, int end) {
  const int n = tab_.n;
  for (int f = begin; f < end; ++f) {
    const auto [i, j] = mesh_.hface_lines(f);
    const double lo = vtx_h_[mesh_.vertex(i, j)];
    const double hi = vtx_h_[mesh_.vertex(i + 1, j)];
    fr_face_rhs(tab_, std::span<const double>(h_h_).subspan(f * n, n), lo, hi, mesh_.dx(),
                FaceOrientation::Horizontal, dudt.subspan(layout_.hface_offset(f), n));
  }
}

void Scheme::finish_cells(std::span<double> dudt, int begin, int end) {
  const int n = tab_.n;
  const int nm = tab_.modes;
  const double dx = mesh_.dx();
  const double dy = mesh_.dy();
  CellFluxes fl;
  for (int c = begin; c < end; ++c) {
    const CellIndex ci = mesh_.cell_of(c);
    const CellFaces cf = mesh_.cell_faces(ci.i, ci.j);
    for (int q = 0; q < n; ++q) {
      fl.h[0][q] = v_h_[cf.xm * n + q];
      fl.e[0][q] = v_e_[cf.xm * n + q];
      fl.h[1][q] = v_h_[cf.xp * n + q];
      fl.e[1][q] = v_e_[cf.xp * n + q];
      fl.h[2][q] = h_h_[cf.ym * n + q];
      fl.e[2][q] = h_e_[cf.ym * n + q];
      fl.h[3][q] = h_h_[cf.yp * n + q];
      fl.e[3][q] = h_e_[cf.yp * n + q];
    }
    std::span<double> acc = dudt.subspan(layout_.cell_offset(c), layout_.cell_dofs());
    bz_face_terms(tab_, dx, dy, fl, acc.first(nm));
    for (int m = 0; m < nm; ++m) acc[m] *= tab_.inv_norm2[m];
    for (int w = 1; w <= layout_.cell_moments; ++w) {
      acc[nm + w - 1] += omega_face_term(tab_, dx, dy, fl, w);
    }
  }
}

}  // namespace cpdg
