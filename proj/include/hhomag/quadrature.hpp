#ifndef HHOMAG_QUADRATURE_HPP
#define HHOMAG_QUADRATURE_HPP

#include <vector>

#include <hhomag/mesh.hpp>

namespace hhomag
{

/// Quadrature rule on an element or a face. Points are stored in 3D;
/// face rules additionally carry the in-frame coordinates relative to the face centroid.
struct QuadRule
{
  std::vector<Vector3d> points;
  std::vector<Vector2d> local; ///< face rules only: ((x - x_F).t1, (x - x_F).t2)
  std::vector<double> weights;
  int degree = 0;

  std::size_t size() const { return points.size(); }
  double measure() const;
};

/// Gauss-Jacobi nodes and weights on [-1, 1] for the weight (1-x)^alpha (1+x)^beta
void gauss_jacobi(int npts, double alpha, double beta, std::vector<double> &nodes, std::vector<double> &weights);

/// Collapsed-coordinate rules on the reference simplices, exact to the given degree
QuadRule reference_tetrahedron_rule(int degree);
QuadRule reference_triangle_rule(int degree);

/// Rule on the tetrahedron with vertices a, b, c, d
QuadRule tetrahedron_rule(const Vector3d &a, const Vector3d &b, const Vector3d &c, const Vector3d &d, int degree);

/// Rule on element iT, exact for polynomials of total degree <= degree.
/// The element is split into tetrahedra with apex at its centroid.
QuadRule element_rule(const Mesh &mesh, std::size_t iT, int degree);

/// Rule on face iF, exact for polynomials of total degree <= degree.
QuadRule face_rule(const Mesh &mesh, std::size_t iF, int degree);

} // namespace hhomag

#endif
