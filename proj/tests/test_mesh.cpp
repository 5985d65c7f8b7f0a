#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>
#include <string>
#include <tuple>

#include <hhomag/mesh.hpp>

using namespace hhomag;

namespace
{

const char *unit_cube_text = R"(polymesh v1
# vertices
8
0 0 0
1 0 0
0 1 0
1 1 0
0 0 1
1 0 1
0 1 1
1 1 1

6
4 0 2 3 1
4 4 5 7 6
4 0 1 5 4
4 2 6 7 3
4 0 4 6 2
4 1 3 7 5

1
6 +0 +1 +2 +3 +4 +5
)";

std::string replace(std::string s, const std::string &from, const std::string &to)
{
  const auto pos = s.find(from);
  REQUIRE(pos != std::string::npos);
  return s.replace(pos, from.size(), to);
}

Mesh parse(const std::string &text)
{
  std::istringstream in(text);
  return load_mesh(in);
}

std::string error_of(const std::string &text)
{
  try {
    parse(text);
  } catch (const std::exception &e) {
    return e.what();
  }
  return {};
}

void check_invariants(const Mesh &mesh, double volume)
{
  double vol = 0.;
  for (std::size_t iT = 0; iT < mesh.n_elements(); ++iT) {
    const Element &T = mesh.element(iT);
    vol += T.volume;
    Vector3d s = Vector3d::Zero();
    for (std::size_t i = 0; i < T.faces.size(); ++i) {
      const Face &F = mesh.face(T.faces[i]);
      s += F.area * mesh.outward_normal(iT, i);
      CHECK(F.diameter <= T.diameter * (1. + 1e-14));
      CHECK(T.diameter <= mesh.h());
    }
    CHECK(s.norm() <= 1e-12);
  }
  CHECK(std::abs(vol - volume) <= 1e-12);
  for (std::size_t iF = 0; iF < mesh.n_faces(); ++iF) {
    const Face &F = mesh.face(iF);
    CHECK(std::abs(F.t1.dot(F.t2)) <= 1e-14);
    CHECK(std::abs(F.t1.norm() - 1.) <= 1e-14);
    CHECK(std::abs(F.t2.norm() - 1.) <= 1e-14);
    CHECK(std::abs(F.normal.norm() - 1.) <= 1e-14);
    CHECK((F.t1.cross(F.t2) - F.normal).norm() <= 1e-14);
  }
}

} // namespace

TEST_CASE("single cube")
{
  const Mesh m = generate_cubic(1);
  CHECK(m.n_elements() == 1);
  CHECK(m.n_faces() == 6);
  CHECK(m.n_boundary_faces() == 6);
  CHECK(m.element(0).volume == doctest::Approx(1.).epsilon(1e-14));
  CHECK(m.element(0).diameter == doctest::Approx(std::sqrt(3.)).epsilon(1e-14));
  CHECK((m.element(0).center - Vector3d(0.5, 0.5, 0.5)).norm() <= 1e-15);
}

TEST_CASE("cubic mesh counts against a face enumeration")
{
  for (int n : {2, 3}) {
    const Mesh m = generate_cubic(n);
    // each face is keyed by its normal axis and the integer coordinates of its lowest corner
    std::set<std::tuple<int, int, int, int>> keys;
    std::size_t interior = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
          const int c[3] = {i, j, l};
          for (int axis = 0; axis < 3; ++axis)
            for (int side = 0; side < 2; ++side) {
              int p[3] = {c[0], c[1], c[2]};
              p[axis] += side;
              if (keys.emplace(axis, p[0], p[1], p[2]).second && p[axis] > 0 && p[axis] < n) ++interior;
            }
        }
    CHECK(m.n_elements() == std::size_t(n * n * n));
    CHECK(m.n_faces() == keys.size());
    CHECK(m.n_faces() == std::size_t(3 * n * n * (n + 1)));
    CHECK(m.n_interior_faces() == interior);

    std::set<std::tuple<int, int, int, int>> mesh_keys;
    for (std::size_t iF = 0; iF < m.n_faces(); ++iF) {
      const Face &F = m.face(iF);
      int axis = 0;
      F.normal.cwiseAbs().maxCoeff(&axis);
      Vector3d lo = m.vertex(F.vertices[0]);
      for (auto v : F.vertices) lo = lo.cwiseMin(m.vertex(v));
      const Vector3d q = lo * n;
      mesh_keys.emplace(axis, int(std::lround(q(0))), int(std::lround(q(1))), int(std::lround(q(2))));
      CHECK(F.area == doctest::Approx(1. / (n * n)).epsilon(1e-13));
    }
    CHECK(mesh_keys == keys);
  }
  CHECK(generate_cubic(2).n_faces() == 36);
  CHECK(generate_cubic(2).n_interior_faces() == 12);
}

TEST_CASE("cubic mesh invariants")
{
  for (int n : {1, 2, 4}) check_invariants(generate_cubic(n), 1.);
  const MeshReport r = validate(generate_cubic(4));
  CHECK(r.max_faces_per_element == 6);
  CHECK(r.min_faces_per_element == 6);
  CHECK(r.min_star_margin > 0.);
  CHECK(std::abs(r.total_volume - 1.) <= 1e-14);
}

TEST_CASE("tetrahedral mesh")
{
  const Mesh m1 = generate_tetrahedral(1);
  CHECK(m1.n_elements() == 6);
  CHECK(m1.n_faces() == 18);
  CHECK(m1.n_boundary_faces() == 12);
  CHECK(m1.n_interior_faces() == 6);
  CHECK(m1.is_tetrahedral());
  check_invariants(m1, 1.);

  const Mesh m2 = generate_tetrahedral(2);
  CHECK(m2.n_elements() == 48);
  check_invariants(m2, 1.);
  // brute-force incidence: count element references to each face
  std::vector<int> refs(m2.n_faces(), 0);
  std::vector<int> sign_sum(m2.n_faces(), 0);
  for (std::size_t iT = 0; iT < m2.n_elements(); ++iT)
    for (const auto &[f, s] : m2.signed_faces(iT)) {
      ++refs[f];
      sign_sum[f] += s;
    }
  for (std::size_t iF = 0; iF < m2.n_faces(); ++iF) {
    const Face &F = m2.face(iF);
    const Vector3d c = F.centroid;
    const bool on_boundary = c.minCoeff() < 1e-12 || c.maxCoeff() > 1. - 1e-12;
    CHECK(refs[iF] == (on_boundary ? 1 : 2));
    CHECK(F.boundary() == on_boundary);
    if (!on_boundary) CHECK(sign_sum[iF] == 0);
  }
  // 6 * 4 incidences per cube, 2 boundary triangles per boundary square
  CHECK(m2.n_boundary_faces() == 6 * 4 * 2);
  CHECK(2 * m2.n_interior_faces() + m2.n_boundary_faces() == 4 * m2.n_elements());

  const MeshReport r = validate(m2);
  CHECK(r.max_faces_per_element == 4);
  CHECK(r.min_faces_per_element == 4);
  CHECK(r.min_star_margin > 0.);
  CHECK(r.min_face_ratio <= 1.);
}

TEST_CASE("mesh text format round trip")
{
  for (const Mesh &m : {generate_cubic(2), generate_tetrahedral(1)}) {
    std::ostringstream out;
    write_mesh(out, m);
    const Mesh r = parse(out.str());
    REQUIRE(r.n_vertices() == m.n_vertices());
    REQUIRE(r.n_faces() == m.n_faces());
    REQUIRE(r.n_elements() == m.n_elements());
    for (std::size_t i = 0; i < m.n_vertices(); ++i) CHECK(r.vertex(i) == m.vertex(i));
    for (std::size_t i = 0; i < m.n_faces(); ++i) {
      CHECK(r.face(i).vertices == m.face(i).vertices);
      CHECK(r.face(i).normal == m.face(i).normal);
      CHECK(r.face(i).t1 == m.face(i).t1);
    }
    for (std::size_t i = 0; i < m.n_elements(); ++i) {
      CHECK(r.signed_faces(i) == m.signed_faces(i));
      CHECK(r.element(i).volume == m.element(i).volume);
    }
    std::ostringstream again;
    write_mesh(again, r);
    CHECK(again.str() == out.str());
  }
}

TEST_CASE("mesh validation errors")
{
  CHECK(parse(unit_cube_text).n_elements() == 1);

  const std::string bent = replace(unit_cube_text, "\n1 1 1\n", "\n1 1 1.001\n");
  CHECK(error_of(bent).find("face not planar") != std::string::npos);

  const std::string open = replace(unit_cube_text, "+4 +5", "+4 -5");
  CHECK(error_of(open).find("element boundary not closed") != std::string::npos);

  const std::string reversed = replace(unit_cube_text, "6 +0 +1", "6 -0 +1");
  CHECK(error_of(reversed).find("not closed") != std::string::npos);
}

TEST_CASE("mesh parse errors carry line numbers")
{
  const std::string bad_coord = replace(unit_cube_text, "\n1 0 1\n", "\n1 x 1\n");
  try {
    parse(bad_coord);
    FAIL("expected a parse error");
  } catch (const ParseError &e) {
    CHECK(e.line() == 9);
  }
  const std::string bad_header = replace(unit_cube_text, "polymesh v1", "polymesh v2");
  try {
    parse(bad_header);
    FAIL("expected a parse error");
  } catch (const ParseError &e) {
    CHECK(e.line() == 1);
  }
  const std::string bad_face = replace(unit_cube_text, "4 0 4 6 2", "4 0 4 6 9");
  try {
    parse(bad_face);
    FAIL("expected a parse error");
  } catch (const ParseError &e) {
    CHECK(e.line() == 18);
  }
  CHECK_THROWS_AS(parse("polymesh v1\n8\n0 0 0\n"), ParseError);
}

TEST_CASE("element permutation keeps the geometry")
{
  const Mesh m = generate_tetrahedral(1);
  const Mesh p = permute_elements(m, {5, 4, 3, 2, 1, 0});
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(p.element(i).volume == m.element(5 - i).volume);
    CHECK((p.element(i).center - m.element(5 - i).center).norm() == 0.);
  }
  CHECK(p.n_faces() == m.n_faces());
}

TEST_CASE("invalid subdivision count")
{
  CHECK_THROWS_AS(generate_cubic(0), ConfigError);
  CHECK_THROWS_AS(generate_tetrahedral(0), ConfigError);
}
