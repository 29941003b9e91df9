#pragma once

#include <array>
#include <optional>

namespace cpdg {

struct Point {
  double x;
  double y;
};

struct CellIndex {
  int i;
  int j;

  friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

enum class Dir { XMinus, XPlus, YMinus, YPlus };

// Face indices bounding a cell. Vertical faces (normal x) and horizontal faces
// (normal y) are numbered in separate index spaces.
struct CellFaces {
  int xm;
  int xp;
  int ym;
  int yp;
};

// Vertex indices at the cell corners (lower-left, lower-right, upper-left, upper-right).
struct CellVertices {
  int ll;
  int lr;
  int ul;
  int ur;
};

// The four cells meeting at a vertex. Absent entries are outside a
// non-periodic boundary.
struct VertexCells {
  std::optional<CellIndex> dl;
  std::optional<CellIndex> dr;
  std::optional<CellIndex> ul;
  std::optional<CellIndex> ur;
};

// Uniform Cartesian mesh of nx by ny cells on [x0,x1] x [y0,y1]. Cells map to
// the reference square [-1/2,1/2]^2 via x = xc + xi*dx, y = yc + eta*dy.
//
// Face lines are numbered 0..nx (vertical) and 0..ny (horizontal). Under
// periodicity the last line is identified with line 0, so a periodic axis
// stores nx lines instead of nx+1.
class CartesianMesh {
 public:
  CartesianMesh(int nx, int ny, double x0, double x1, double y0, double y1,
                bool periodic_x = true, bool periodic_y = true);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double x0() const { return x0_; }
  double x1() const { return x1_; }
  double y0() const { return y0_; }
  double y1() const { return y1_; }
  double dx() const { return dx_; }
  double dy() const { return dy_; }
  bool periodic_x() const { return periodic_x_; }
  bool periodic_y() const { return periodic_y_; }
  double area() const { return (x1_ - x0_) * (y1_ - y0_); }

  int num_cells() const { return nx_ * ny_; }
  int cell_id(int i, int j) const;
  int cell_id(CellIndex c) const { return cell_id(c.i, c.j); }
  CellIndex cell_of(int id) const;

  Point cell_center(int i, int j) const;
  Point to_physical(int i, int j, double xi, double eta) const;
  // Reference coordinates of a physical point relative to cell (i, j).
  Point to_reference(int i, int j, double x, double y) const;
  // Cell containing (x, y), clamped to the domain.
  CellIndex locate(double x, double y) const;

  // Neighbour across a face, wrapping on periodic axes; nullopt at a
  // non-periodic boundary.
  std::optional<CellIndex> neighbor(int i, int j, Dir d) const;

  // Vertical face lines per row / horizontal face lines per column after
  // periodic identification.
  int vface_columns() const { return periodic_x_ ? nx_ : nx_ + 1; }
  int hface_rows() const { return periodic_y_ ? ny_ : ny_ + 1; }
  int num_vfaces() const { return vface_columns() * ny_; }
  int num_hfaces() const { return nx_ * hface_rows(); }
  int vertex_columns() const { return periodic_x_ ? nx_ : nx_ + 1; }
  int vertex_rows() const { return periodic_y_ ? ny_ : ny_ + 1; }
  int num_vertices() const { return vertex_columns() * vertex_rows(); }

  // Vertical face on line i (0..nx) in row j; horizontal face on line j (0..ny) in column i.
  int vface(int i, int j) const;
  int hface(int i, int j) const;
  // Vertex at line intersection (i, j), 0 <= i <= nx, 0 <= j <= ny.
  int vertex(int i, int j) const;

  CellFaces cell_faces(int i, int j) const;
  CellVertices cell_vertices(int i, int j) const;
  VertexCells vertex_cells(int i, int j) const;

  // Line indices of stored faces/vertices (inverse of vface/hface/vertex).
  std::array<int, 2> vface_lines(int f) const;
  std::array<int, 2> hface_lines(int f) const;
  std::array<int, 2> vertex_lines(int v) const;

  // Physical position of vertical line i / horizontal line j.
  double x_line(int i) const { return x0_ + i * dx_; }
  double y_line(int j) const { return y0_ + j * dy_; }

 private:
  void check_cell(int i, int j) const;

  int nx_;
  int ny_;
  double x0_;
  double x1_;
  double y0_;
  double y1_;
  double dx_;
  double dy_;
  bool periodic_x_;
  bool periodic_y_;
};

}  // namespace cpdg
