#include <doctest.h>

#include <set>
#include <stdexcept>

#include "cpdg/mesh.hpp"

using namespace cpdg;

TEST_CASE("cell centres and mapping") {
  const CartesianMesh unit(2, 2, 0.0, 1.0, 0.0, 1.0);
  CHECK(unit.cell_center(0, 0).x == doctest::Approx(0.25));
  CHECK(unit.cell_center(0, 0).y == doctest::Approx(0.25));

  const CartesianMesh pulse(200, 200, -7.0, 7.0, -7.0, 7.0);
  CHECK(pulse.cell_center(0, 0).x == doctest::Approx(-6.965).epsilon(1e-13));
  CHECK(pulse.cell_center(0, 0).y == doctest::Approx(-6.965).epsilon(1e-13));
  const Point last = pulse.cell_center(199, 199);
  CHECK(last.x + 0.5 * pulse.dx() == doctest::Approx(7.0).epsilon(1e-14));
  CHECK(last.y + 0.5 * pulse.dy() == doctest::Approx(7.0).epsilon(1e-14));

  const CartesianMesh m(5, 3, -1.0, 2.0, 0.0, 1.5);
  const Point p = m.to_physical(3, 1, 0.2, -0.4);
  const Point r = m.to_reference(3, 1, p.x, p.y);
  CHECK(r.x == doctest::Approx(0.2));
  CHECK(r.y == doctest::Approx(-0.4));
  CHECK(m.locate(p.x, p.y) == CellIndex{3, 1});
  CHECK(m.locate(-5.0, 9.0) == CellIndex{0, 2});  // clamped
  CHECK(m.area() == doctest::Approx(4.5));
}

TEST_CASE("cell ids round-trip") {
  const CartesianMesh m(4, 3, 0.0, 1.0, 0.0, 1.0);
  for (int c = 0; c < m.num_cells(); ++c) CHECK(m.cell_id(m.cell_of(c)) == c);
  CHECK_THROWS_AS(m.cell_id(4, 0), std::out_of_range);
  CHECK_THROWS_AS(m.cell_of(12), std::out_of_range);
}

TEST_CASE("periodic neighbours, faces and vertices") {
  const CartesianMesh m(4, 3, 0.0, 1.0, 0.0, 1.0);
  CHECK(m.neighbor(3, 0, Dir::XPlus) == CellIndex{0, 0});
  CHECK(m.neighbor(0, 0, Dir::XMinus) == CellIndex{3, 0});
  CHECK(m.neighbor(1, 2, Dir::YPlus) == CellIndex{1, 0});
  CHECK(m.num_vfaces() == 12);
  CHECK(m.num_hfaces() == 12);
  CHECK(m.num_vertices() == 12);

  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < 4; ++i) {
      const CellFaces f = m.cell_faces(i, j);
      const CellIndex r = *m.neighbor(i, j, Dir::XPlus);
      const CellIndex u = *m.neighbor(i, j, Dir::YPlus);
      CHECK(f.xp == m.cell_faces(r.i, r.j).xm);
      CHECK(f.yp == m.cell_faces(u.i, u.j).ym);
      const CellVertices v = m.cell_vertices(i, j);
      CHECK(v.lr == m.cell_vertices(r.i, r.j).ll);
      CHECK(v.ul == m.cell_vertices(u.i, u.j).ll);
    }
  }
  // Vertex at the upper-right corner of cell (i, j) adjoins (i,j), (i+1,j), (i,j+1), (i+1,j+1).
  const VertexCells vc = m.vertex_cells(2, 1);
  CHECK(*vc.dl == CellIndex{1, 0});
  CHECK(*vc.dr == CellIndex{2, 0});
  CHECK(*vc.ul == CellIndex{1, 1});
  CHECK(*vc.ur == CellIndex{2, 1});
  CHECK(m.vertex(4, 3) == m.vertex(0, 0));
  CHECK(*m.vertex_cells(0, 0).dl == CellIndex{3, 2});
}

TEST_CASE("face and vertex indices are a bijection") {
  for (bool periodic : {true, false}) {
    const CartesianMesh m(5, 4, 0.0, 1.0, 0.0, 2.0, periodic, periodic);
    std::set<int> seen;
    for (int f = 0; f < m.num_vfaces(); ++f) {
      const auto [i, j] = m.vface_lines(f);
      CHECK(m.vface(i, j) == f);
      seen.insert(f);
    }
    CHECK(static_cast<int>(seen.size()) == m.num_vfaces());
    for (int f = 0; f < m.num_hfaces(); ++f) {
      const auto [i, j] = m.hface_lines(f);
      CHECK(m.hface(i, j) == f);
    }
    for (int v = 0; v < m.num_vertices(); ++v) {
      const auto [i, j] = m.vertex_lines(v);
      CHECK(m.vertex(i, j) == v);
    }
  }
}

TEST_CASE("non-periodic boundaries") {
  const CartesianMesh m(3, 2, 0.0, 3.0, 0.0, 2.0, false, false);
  CHECK_FALSE(m.neighbor(2, 0, Dir::XPlus).has_value());
  CHECK_FALSE(m.neighbor(0, 0, Dir::YMinus).has_value());
  CHECK(m.num_vfaces() == 4 * 2);
  CHECK(m.num_hfaces() == 3 * 3);
  CHECK(m.num_vertices() == 4 * 3);
  const VertexCells corner = m.vertex_cells(0, 0);
  CHECK_FALSE(corner.dl.has_value());
  CHECK_FALSE(corner.dr.has_value());
  CHECK_FALSE(corner.ul.has_value());
  CHECK(*corner.ur == CellIndex{0, 0});
  CHECK(m.cell_faces(2, 1).xp == m.vface(3, 1));
}

TEST_CASE("mesh rejects bad input") {
  CHECK_THROWS_AS(CartesianMesh(0, 4, 0.0, 1.0, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(CartesianMesh(4, 4, 1.0, 1.0, 0.0, 1.0), std::invalid_argument);
}
