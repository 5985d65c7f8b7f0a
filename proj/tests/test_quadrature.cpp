#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include <hhomag/monomials.hpp>
#include <hhomag/quadrature.hpp>
#include <hhomag/verification.hpp>

using namespace hhomag;

namespace
{

double factorial(int n)
{
  double f = 1.;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double integrate(const QuadRule &R, const ScalarField &f)
{
  double s = 0.;
  for (std::size_t i = 0; i < R.size(); ++i) s += R.weights[i] * f(R.points[i]);
  return s;
}

double integrate_local(const QuadRule &R, int a, int b)
{
  double s = 0.;
  for (std::size_t i = 0; i < R.size(); ++i) s += R.weights[i] * std::pow(R.local[i](0), a) * std::pow(R.local[i](1), b);
  return s;
}

} // namespace

TEST_CASE("gauss-jacobi rules")
{
  std::vector<double> x, w;
  for (int n = 1; n <= 8; ++n) {
    gauss_jacobi(n, 0., 0., x, w);
    REQUIRE(x.size() == std::size_t(n));
    for (int m = 0; m <= 2 * n - 1; ++m) {
      double s = 0.;
      for (int i = 0; i < n; ++i) s += w[i] * std::pow(x[i], m);
      const double exact = m % 2 ? 0. : 2. / (m + 1);
      CHECK(std::abs(s - exact) <= 1e-14);
    }
    // weight (1 - x): integral of 1 is 2
    gauss_jacobi(n, 1., 0., x, w);
    double s = 0.;
    for (double v : w) s += v;
    CHECK(std::abs(s - 2.) <= 1e-14);
  }
}

TEST_CASE("reference tetrahedron against the simplex monomial formula")
{
  CHECK(std::abs(reference_tetrahedron_rule(0).measure() - 1. / 6.) <= 1e-15);
  for (int d : {0, 3, 8, 12}) {
    const QuadRule R = reference_tetrahedron_rule(d);
    CHECK(std::abs(R.measure() - 1. / 6.) <= 1e-13);
    for (const auto &p : powers3(d)) {
      const double exact = factorial(p[0]) * factorial(p[1]) * factorial(p[2]) / factorial(p[0] + p[1] + p[2] + 3);
      const double q = integrate(R, [&](const Vector3d &x) {
        return std::pow(x(0), p[0]) * std::pow(x(1), p[1]) * std::pow(x(2), p[2]);
      });
      CHECK(std::abs(q - exact) <= 1e-12 * exact);
    }
  }
}

TEST_CASE("reference triangle against the simplex monomial formula")
{
  for (int d : {0, 4, 9}) {
    const QuadRule R = reference_triangle_rule(d);
    CHECK(std::abs(R.measure() - 0.5) <= 1e-14);
    for (const auto &p : powers2(d)) {
      const double exact = factorial(p[0]) * factorial(p[1]) / factorial(p[0] + p[1] + 2);
      const double q =
          integrate(R, [&](const Vector3d &x) { return std::pow(x(0), p[0]) * std::pow(x(1), p[1]); });
      CHECK(std::abs(q - exact) <= 1e-12 * exact);
    }
  }
}

TEST_CASE("mapped tetrahedron rule")
{
  const Vector3d a(0.1, 0.2, 0.3), b(1.3, 0.1, 0.2), c(0.4, 1.1, 0.0), d(0.3, 0.2, 0.9);
  const double vol = std::abs((b - a).cross(c - a).dot(d - a)) / 6.;
  const QuadRule R = tetrahedron_rule(a, b, c, d, 6);
  CHECK(std::abs(R.measure() - vol) <= 1e-14);
  // the centroid moment is the vertex average
  const Vector3d m = (a + b + c + d) / 4.;
  for (int i = 0; i < 3; ++i) CHECK(std::abs(integrate(R, [&](const Vector3d &x) { return x(i); }) - vol * m(i)) <= 1e-14);
}

TEST_CASE("unit cube element rule")
{
  const Mesh m = generate_cubic(1);
  const QuadRule R4 = element_rule(m, 0, 4);
  CHECK(std::abs(integrate(R4, [](const Vector3d &x) { return x(0) * x(0) * x(1) * x(1); }) - 1. / 9.) <= 1e-14);
  const QuadRule R = element_rule(m, 0, 10);
  CHECK(std::abs(R.measure() - 1.) <= 1e-13);
  for (const auto &p : powers3(10)) {
    const double exact = 1. / ((p[0] + 1) * (p[1] + 1) * (p[2] + 1));
    const double q = integrate(R, [&](const Vector3d &x) {
      return std::pow(x(0), p[0]) * std::pow(x(1), p[1]) * std::pow(x(2), p[2]);
    });
    CHECK(std::abs(q - exact) <= 1e-12 * exact);
  }
}

TEST_CASE("weights sum to the cell measure")
{
  for (const Mesh &m : {generate_cubic(2), generate_tetrahedral(2)}) {
    for (std::size_t iT = 0; iT < m.n_elements(); ++iT)
      for (int d : {0, 2, 7}) CHECK(std::abs(element_rule(m, iT, d).measure() - m.element(iT).volume) <= 1e-13);
    for (std::size_t iF = 0; iF < m.n_faces(); ++iF)
      for (int d : {0, 2, 7}) CHECK(std::abs(face_rule(m, iF, d).measure() - m.face(iF).area) <= 1e-13);
  }
  for (const auto &[name, m] : sample_cells()) {
    CAPTURE(name);
    CHECK(std::abs(element_rule(m, 0, 5).measure() - m.element(0).volume) <= 1e-13);
  }
}

TEST_CASE("square face rule and frame invariance")
{
  const Mesh m = generate_cubic(1);
  const QuadRule R0 = face_rule(m, 0, 0);
  CHECK(std::abs(R0.measure() - 1.) <= 1e-15);

  // same cube with the bottom face loop reversed: a different normal, hence a different frame
  std::vector<std::vector<std::size_t>> loops;
  for (std::size_t i = 0; i < m.n_faces(); ++i) loops.push_back(m.face(i).vertices);
  std::reverse(loops[0].begin(), loops[0].end());
  auto elem = m.signed_faces(0);
  elem[0].second = -elem[0].second;
  const Mesh r(m.vertices(), loops, {elem});
  REQUIRE((r.face(0).normal + m.face(0).normal).norm() <= 1e-15);

  const QuadRule A = face_rule(m, 0, 6), B = face_rule(r, 0, 6);
  const Vector3d c = m.face(0).centroid;
  const ScalarField g = [&](const Vector3d &x) {
    const double r2 = (x - c).squaredNorm();
    return r2 * r2 + std::cos(x(0) + x(1));
  };
  CHECK(std::abs(integrate(A, g) - integrate(B, g)) <= 1e-13);
  // s^2 + t^2 and s^2 t^2 do not depend on the frame of a square
  CHECK(std::abs(integrate_local(A, 2, 0) + integrate_local(A, 0, 2) - 1. / 6.) <= 1e-14);
  CHECK(std::abs(integrate_local(B, 2, 0) + integrate_local(B, 0, 2) - 1. / 6.) <= 1e-14);
  CHECK(std::abs(integrate_local(A, 2, 2) - integrate_local(B, 2, 2)) <= 1e-14);
  // local coordinates are the in-frame coordinates of the points
  for (std::size_t i = 0; i < B.size(); ++i) {
    const Face &F = r.face(0);
    CHECK((F.centroid + B.local[i](0) * F.t1 + B.local[i](1) * F.t2 - B.points[i]).norm() <= 1e-15);
  }
}

TEST_CASE("polygonal face monomials against a triangle fan")
{
  const auto cells = sample_cells();
  const Mesh &prism = cells[3].second;
  for (std::size_t iF = 0; iF < prism.n_faces(); ++iF) {
    const Face &F = prism.face(iF);
    const QuadRule R = face_rule(prism, iF, 6);
    // fan around the first vertex, in frame coordinates
    std::vector<Vector2d> loc;
    for (auto v : F.vertices) {
      const Vector3d d = prism.vertex(v) - F.centroid;
      loc.emplace_back(d.dot(F.t1), d.dot(F.t2));
    }
    for (const auto &p : powers2(6)) {
      double exact = 0.;
      for (std::size_t j = 1; j + 1 < loc.size(); ++j) {
        std::vector<VectorXd> tri{loc[0], loc[j], loc[j + 1]};
        const Vector2d e1 = loc[j] - loc[0], e2 = loc[j + 1] - loc[0];
        const double area = 0.5 * (e1(0) * e2(1) - e1(1) * e2(0));
        exact += simplex_moments(tri, area, 6)(index2(p[0], p[1]));
      }
      CHECK(std::abs(integrate_local(R, p[0], p[1]) - exact) <= 1e-12 * std::max(std::abs(exact), 1e-3 * F.area));
    }
  }
}

TEST_CASE("quadrature check on all cell types")
{
  const CheckResult r = check_quadrature(1);
  CAPTURE(r.detail);
  CHECK(r.passed);
}
