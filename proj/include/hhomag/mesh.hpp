#ifndef HHOMAG_MESH_HPP
#define HHOMAG_MESH_HPP

#include <iosfwd>
#include <utility>
#include <vector>

#include <hhomag/common.hpp>

namespace hhomag
{

/// Planar polygonal face.
struct Face
{
  std::vector<std::size_t> vertices; ///< loop, rotated so that the smallest id comes first
  double area = 0.;
  double diameter = 0.;
  Vector3d centroid;
  Vector3d normal; ///< unit normal, right-handed w.r.t. the vertex loop
  Vector3d t1, t2; ///< tangent frame with t1 x t2 = normal
  std::vector<std::size_t> elements; ///< one entry for boundary faces, two for interfaces
  bool boundary() const { return elements.size() == 1; }
};

/// Polyhedral element described by its faces.
struct Element
{
  std::vector<std::size_t> faces;
  std::vector<int> orientations; ///< +1 if the face normal points outward of the element
  std::vector<std::size_t> vertices;
  double volume = 0.;
  double diameter = 0.;
  Vector3d center; ///< centroid, used as star point
};

/// Signed face reference used to describe an element: (face id, orientation)
using SignedFace = std::pair<std::size_t, int>;

/// Immutable polyhedral mesh. Geometry is computed once in the constructor.
class Mesh
{
public:
  /// Builds and (optionally) validates the mesh. Face loops are canonicalized.
  Mesh(std::vector<Vector3d> vertices,
       std::vector<std::vector<std::size_t>> face_loops,
       std::vector<std::vector<SignedFace>> elements,
       bool check = true);

  std::size_t n_vertices() const { return m_vertices.size(); }
  std::size_t n_faces() const { return m_faces.size(); }
  std::size_t n_elements() const { return m_elements.size(); }
  std::size_t n_boundary_faces() const { return m_n_boundary; }
  std::size_t n_interior_faces() const { return m_faces.size() - m_n_boundary; }

  const Vector3d &vertex(std::size_t i) const { return m_vertices[i]; }
  const Face &face(std::size_t i) const { return m_faces[i]; }
  const Element &element(std::size_t i) const { return m_elements[i]; }
  const std::vector<Vector3d> &vertices() const { return m_vertices; }

  /// Outward unit normal of the local face iF of element iT
  Vector3d outward_normal(std::size_t iT, std::size_t iF_loc) const
  {
    const Element &T = m_elements[iT];
    return double(T.orientations[iF_loc]) * m_faces[T.faces[iF_loc]].normal;
  }

  /// Global meshsize, max over elements of the diameter
  double h() const { return m_h; }
  /// True if every element has four triangular faces
  bool is_tetrahedral() const;
  /// Signed face list of an element as stored
  std::vector<SignedFace> signed_faces(std::size_t iT) const;

private:
  std::vector<Vector3d> m_vertices;
  std::vector<Face> m_faces;
  std::vector<Element> m_elements;
  std::size_t m_n_boundary = 0;
  double m_h = 0.;
};

/// Regularity metrics of a mesh
struct MeshReport
{
  std::size_t n_elements = 0, n_faces = 0, n_boundary_faces = 0;
  double meshsize = 0.;
  double total_volume = 0.;
  double min_inradius_ratio = 0.; ///< min over T of (3|T| / |dT|) / h_T
  double min_star_margin = 0.;    ///< min over T, F of ((x_F - x_T).n_TF) / h_T
  double min_face_ratio = 0.;     ///< min over T, F of h_F / h_T
  double max_closure_defect = 0.; ///< max over T of |sum_F area(F) n_TF|
  double max_planarity_defect = 0.; ///< max over F of distance to plane / h_F
  std::size_t max_faces_per_element = 0;
  std::size_t min_faces_per_element = 0;
};

/// Relative planarity tolerance on faces
constexpr double planarity_tolerance = 1e-9;

/// Checks the hard invariants (throws GeometryError) and returns the metrics.
MeshReport validate(const Mesh &mesh);

/// Uniform partition of the unit cube into n^3 cubes
Mesh generate_cubic(int n);
/// Each cube of the n^3 grid split into 6 tetrahedra around the main diagonal
Mesh generate_tetrahedral(int n);

/// Reads the `polymesh v1` text format. Throws ParseError or GeometryError.
Mesh load_mesh(std::istream &in);
Mesh load_mesh_file(const std::string &path);
/// Writes the `polymesh v1` text format with round-trip precision.
void write_mesh(std::ostream &out, const Mesh &mesh);
void write_mesh_file(const std::string &path, const Mesh &mesh);

/// Mesh with elements listed in the order perm[0], perm[1], ...
Mesh permute_elements(const Mesh &mesh, const std::vector<std::size_t> &perm);

} // namespace hhomag

#endif
