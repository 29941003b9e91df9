#include "cpdg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cpdg {

CartesianMesh::CartesianMesh(int nx, int ny, double x0, double x1, double y0, double y1,
                             bool periodic_x, bool periodic_y)
    : nx_(nx),
      ny_(ny),
      x0_(x0),
      x1_(x1),
      y0_(y0),
      y1_(y1),
      dx_(0.0),
      dy_(0.0),
      periodic_x_(periodic_x),
      periodic_y_(periodic_y) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("mesh needs at least one cell per axis");
  if (!(x1 > x0) || !(y1 > y0)) throw std::invalid_argument("mesh bounds must be increasing");
  dx_ = (x1 - x0) / nx;
  dy_ = (y1 - y0) / ny;
}

void CartesianMesh::check_cell(int i, int j) const {
  if (i < 0 || i >= nx_ || j < 0 || j >= ny_) {
    throw std::out_of_range("cell (" + std::to_string(i) + ", " + std::to_string(j) +
                            ") outside mesh");
  }
}

int CartesianMesh::cell_id(int i, int j) const {
  check_cell(i, j);
  return j * nx_ + i;
}

CellIndex CartesianMesh::cell_of(int id) const {
  if (id < 0 || id >= num_cells()) throw std::out_of_range("cell id outside mesh");
  return {id % nx_, id / nx_};
}

Point CartesianMesh::cell_center(int i, int j) const {
  check_cell(i, j);
  return {x0_ + (i + 0.5) * dx_, y0_ + (j + 0.5) * dy_};
}

Point CartesianMesh::to_physical(int i, int j, double xi, double eta) const {
  const Point c = cell_center(i, j);
  return {c.x + xi * dx_, c.y + eta * dy_};
}

Point CartesianMesh::to_reference(int i, int j, double x, double y) const {
  const Point c = cell_center(i, j);
  return {(x - c.x) / dx_, (y - c.y) / dy_};
}

CellIndex CartesianMesh::locate(double x, double y) const {
  const int i = static_cast<int>(std::floor((x - x0_) / dx_));
  const int j = static_cast<int>(std::floor((y - y0_) / dy_));
  return {std::clamp(i, 0, nx_ - 1), std::clamp(j, 0, ny_ - 1)};
}

std::optional<CellIndex> CartesianMesh::neighbor(int i, int j, Dir d) const {
  check_cell(i, j);
  int ni = i;
  int nj = j;
  switch (d) {
    case Dir::XMinus: --ni; break;
    case Dir::XPlus: ++ni; break;
    case Dir::YMinus: --nj; break;
    case Dir::YPlus: ++nj; break;
  }
  if (ni < 0 || ni >= nx_) {
    if (!periodic_x_) return std::nullopt;
    ni = (ni + nx_) % nx_;
  }
  if (nj < 0 || nj >= ny_) {
    if (!periodic_y_) return std::nullopt;
    nj = (nj + ny_) % ny_;
  }
  return CellIndex{ni, nj};
}

int CartesianMesh::vface(int i, int j) const {
  if (i < 0 || i > nx_ || j < 0 || j >= ny_) throw std::out_of_range("vertical face outside mesh");
  if (periodic_x_ && i == nx_) i = 0;
  return j * vface_columns() + i;
}

int CartesianMesh::hface(int i, int j) const {
  if (i < 0 || i >= nx_ || j < 0 || j > ny_) {
    throw std::out_of_range("horizontal face outside mesh");
  }
  if (periodic_y_ && j == ny_) j = 0;
  return j * nx_ + i;
}

int CartesianMesh::vertex(int i, int j) const {
  if (i < 0 || i > nx_ || j < 0 || j > ny_) throw std::out_of_range("vertex outside mesh");
  if (periodic_x_ && i == nx_) i = 0;
  if (periodic_y_ && j == ny_) j = 0;
  return j * vertex_columns() + i;
}

CellFaces CartesianMesh::cell_faces(int i, int j) const {
  check_cell(i, j);
  return {vface(i, j), vface(i + 1, j), hface(i, j), hface(i, j + 1)};
}

CellVertices CartesianMesh::cell_vertices(int i, int j) const {
  check_cell(i, j);
  return {vertex(i, j), vertex(i + 1, j), vertex(i, j + 1), vertex(i + 1, j + 1)};
}

VertexCells CartesianMesh::vertex_cells(int i, int j) const {
  if (i < 0 || i > nx_ || j < 0 || j > ny_) throw std::out_of_range("vertex outside mesh");
  auto wrap = [this](int ci, int cj) -> std::optional<CellIndex> {
    if (ci < 0 || ci >= nx_) {
      if (!periodic_x_) return std::nullopt;
      ci = (ci + nx_) % nx_;
    }
    if (cj < 0 || cj >= ny_) {
      if (!periodic_y_) return std::nullopt;
      cj = (cj + ny_) % ny_;
    }
    return CellIndex{ci, cj};
  };
  return {wrap(i - 1, j - 1), wrap(i, j - 1), wrap(i - 1, j), wrap(i, j)};
}

std::array<int, 2> CartesianMesh::vface_lines(int f) const {
  if (f < 0 || f >= num_vfaces()) throw std::out_of_range("vertical face id outside mesh");
  return {f % vface_columns(), f / vface_columns()};
}

std::array<int, 2> CartesianMesh::hface_lines(int f) const {
  if (f < 0 || f >= num_hfaces()) throw std::out_of_range("horizontal face id outside mesh");
  return {f % nx_, f / nx_};
}

std::array<int, 2> CartesianMesh::vertex_lines(int v) const {
  if (v < 0 || v >= num_vertices()) throw std::out_of_range("vertex id outside mesh");
  return {v % vertex_columns(), v / vertex_columns()};
}

}  // namespace cpdg
