#include <hhomag/quadrature.hpp>

#include <cmath>
#include <map>
#include <mutex>

#include <Eigen/Eigenvalues>

namespace hhomag
{

double QuadRule::measure() const
{
  double s = 0.;
  for (double w : weights) s += w;
  return s;
}

// Golub-Welsch on the Jacobi recurrence
void gauss_jacobi(int npts, double alpha, double beta, std::vector<double> &nodes, std::vector<double> &weights)
{
  const double ab = alpha + beta;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(npts, npts);
  for (int i = 0; i < npts; ++i) {
    if (i == 0)
      J(0, 0) = (beta - alpha) / (ab + 2.);
    else
      J(i, i) = (beta * beta - alpha * alpha) / ((2. * i + ab) * (2. * i + ab + 2.));
    if (i > 0) {
      const double n = i;
      double num = 4. * n * (n + alpha) * (n + beta) * (n + ab);
      double den = (2. * n + ab) * (2. * n + ab) * (2. * n + ab + 1.) * (2. * n + ab - 1.);
      J(i, i - 1) = J(i - 1, i) = std::sqrt(num / den);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  const double mu0 = std::pow(2., ab + 1.) * std::tgamma(alpha + 1.) * std::tgamma(beta + 1.) / std::tgamma(ab + 2.);
  nodes.resize(npts);
  weights.resize(npts);
  for (int i = 0; i < npts; ++i) {
    nodes[i] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    weights[i] = mu0 * v0 * v0;
  }
}

namespace
{

struct Line
{
  std::vector<double> x, w;
};

// Nodes on [0,1] for the weight (1-t)^alpha, normalized so that the weights integrate it
Line collapsed_line(int npts, double alpha)
{
  Line L;
  gauss_jacobi(npts, alpha, 0., L.x, L.w);
  const double scale = std::pow(0.5, alpha + 1.);
  for (int i = 0; i < npts; ++i) {
    L.x[i] = 0.5 * (L.x[i] + 1.);
    L.w[i] *= scale;
  }
  return L;
}

std::mutex cache_mutex;
std::map<int, QuadRule> tet_cache, tri_cache;

} // namespace

QuadRule reference_tetrahedron_rule(int degree)
{
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = tet_cache.find(degree);
    if (it != tet_cache.end()) return it->second;
  }
  const int n = std::max(1, (degree + 2) / 2);
  const Line u = collapsed_line(n, 2.), v = collapsed_line(n, 1.), w = collapsed_line(n, 0.);
  QuadRule R;
  R.degree = degree;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        const double x = u.x[i], y = (1. - u.x[i]) * v.x[j], z = (1. - u.x[i]) * (1. - v.x[j]) * w.x[l];
        R.points.emplace_back(x, y, z);
        R.weights.push_back(u.w[i] * v.w[j] * w.w[l]);
      }
  std::lock_guard<std::mutex> lock(cache_mutex);
  tet_cache.emplace(degree, R);
  return R;
}

QuadRule reference_triangle_rule(int degree)
{
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = tri_cache.find(degree);
    if (it != tri_cache.end()) return it->second;
  }
  const int n = std::max(1, (degree + 2) / 2);
  const Line u = collapsed_line(n, 1.), v = collapsed_line(n, 0.);
  QuadRule R;
  R.degree = degree;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      R.points.emplace_back(u.x[i], (1. - u.x[i]) * v.x[j], 0.);
      R.weights.push_back(u.w[i] * v.w[j]);
    }
  std::lock_guard<std::mutex> lock(cache_mutex);
  tri_cache.emplace(degree, R);
  return R;
}

namespace
{

void append_tetrahedron(QuadRule &R, const QuadRule &ref, const Vector3d &a, const Vector3d &b,
                        const Vector3d &c, const Vector3d &d, double det)
{
  Eigen::Matrix3d J;
  J.col(0) = b - a;
  J.col(1) = c - a;
  J.col(2) = d - a;
  for (std::size_t q = 0; q < ref.size(); ++q) {
    R.points.push_back(a + J * ref.points[q]);
    R.weights.push_back(det * ref.weights[q]);
  }
}

void append_triangle(QuadRule &R, const QuadRule &ref, const Vector3d &a, const Vector3d &b, const Vector3d &c,
                     double twice_area)
{
  for (std::size_t q = 0; q < ref.size(); ++q) {
    const Vector3d &p = ref.points[q];
    R.points.push_back(a + p(0) * (b - a) + p(1) * (c - a));
    R.weights.push_back(twice_area * ref.weights[q]);
  }
}

} // namespace

QuadRule tetrahedron_rule(const Vector3d &a, const Vector3d &b, const Vector3d &c, const Vector3d &d, int degree)
{
  QuadRule R;
  R.degree = degree;
  const double det = std::abs((b - a).cross(c - a).dot(d - a));
  append_tetrahedron(R, reference_tetrahedron_rule(degree), a, b, c, d, det);
  return R;
}

QuadRule element_rule(const Mesh &mesh, std::size_t iT, int degree)
{
  const Element &T = mesh.element(iT);
  const QuadRule ref = reference_tetrahedron_rule(degree);
  QuadRule R;
  R.degree = degree;
  for (std::size_t i = 0; i < T.faces.size(); ++i) {
    const Face &F = mesh.face(T.faces[i]);
    const double s = T.orientations[i];
    const std::size_t nv = F.vertices.size();
    auto sub = [&](const Vector3d &a, const Vector3d &b, const Vector3d &c) {
      // signed volume of (x_T, a, b, c) with (a, b, c) oriented along the outward normal
      const double det = s * (b - a).cross(c - a).dot(a - T.center);
      if (!(det > 1e-14 * std::pow(T.diameter, 3)))
        throw GeometryError("degenerate sub-tetrahedron in element " + std::to_string(iT));
      append_tetrahedron(R, ref, T.center, a, b, c, det);
    };
    if (nv == 3)
      sub(mesh.vertex(F.vertices[0]), mesh.vertex(F.vertices[1]), mesh.vertex(F.vertices[2]));
    else
      for (std::size_t j = 0; j < nv; ++j)
        sub(F.centroid, mesh.vertex(F.vertices[j]), mesh.vertex(F.vertices[(j + 1) % nv]));
  }
  return R;
}

QuadRule face_rule(const Mesh &mesh, std::size_t iF, int degree)
{
  const Face &F = mesh.face(iF);
  const QuadRule ref = reference_triangle_rule(degree);
  QuadRule R;
  R.degree = degree;
  const std::size_t nv = F.vertices.size();
  auto tri = [&](const Vector3d &a, const Vector3d &b, const Vector3d &c) {
    const double twice_area = (b - a).cross(c - a).dot(F.normal);
    if (!(twice_area > 1e-14 * F.diameter * F.diameter))
      throw GeometryError("degenerate sub-triangle in face " + std::to_string(iF));
    append_triangle(R, ref, a, b, c, twice_area);
  };
  if (nv == 3)
    tri(mesh.vertex(F.vertices[0]), mesh.vertex(F.vertices[1]), mesh.vertex(F.vertices[2]));
  else
    for (std::size_t j = 0; j < nv; ++j)
      tri(F.centroid, mesh.vertex(F.vertices[j]), mesh.vertex(F.vertices[(j + 1) % nv]));
  R.local.reserve(R.size());
  for (const auto &x : R.points) R.local.emplace_back((x - F.centroid).dot(F.t1), (x - F.centroid).dot(F.t2));
  return R;
}

} // namespace hhomag
