#pragma once

namespace cpdg {

struct TEState {
  double Dx = 0.0;
  double Dy = 0.0;
  double Bz = 0.0;
};

// Upwind interface values. On a vertical face the consumer uses (hz, ey),
// on a horizontal face (hz, ex); all three are filled.
struct FaceFlux {
  double hz;
  double ex;
  double ey;
};

// Exact Riemann solution of the TE system across a face with unit normal
// (nx, ny) pointing from `left` to `right`:
//   Dt* = avg(Dt) - (eps c / 2)(Bz_R - Bz_L),  Dt = Dy nx - Dx ny
//   Bz* = avg(Bz) - (mu c / 2)(Dt_R - Dt_L)
//   Dn* = avg(Dn)
// with Hz = Bz*/mu and E = D*/eps.
FaceFlux riemann_1d(const TEState& left, const TEState& right, double nx, double ny, double eps,
                    double mu);

// Vertex value of Hz from the four states meeting at a vertex, using the
// grid-aware dissipation weights c h/(2 dy) and c h/(2 dx):
//   Bz* = 1/4 sum Bz + (mu c h / 2dy) [<Dx>_U - <Dx>_D] - (mu c h / 2dx) [<Dy>_R - <Dy>_L]
double riemann_2d(const TEState& dl, const TEState& dr, const TEState& ul, const TEState& ur,
                  double eps, double mu, double dx, double dy, double h);

// riemann_2d with h = max(dx, dy).
double riemann_2d(const TEState& dl, const TEState& dr, const TEState& ul, const TEState& ur,
                  double eps, double mu, double dx, double dy);

}  // namespace cpdg
