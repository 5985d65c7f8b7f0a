#ifndef HHOMAG_POLYSPACES_HPP
#define HHOMAG_POLYSPACES_HPP

#include <array>
#include <vector>

#include <hhomag/mesh.hpp>
#include <hhomag/quadrature.hpp>

namespace hhomag
{

/// Scalar polynomial basis of degree q on an element or a face.
///
/// Basis functions are phi_i = sum_j T(i, j) m_j where m_j are scaled monomials:
/// ((x - x_T) / h_T)^alpha on elements, ((x - x_F).t1 / h_F, (x - x_F).t2 / h_F)^beta on faces,
/// in graded lexicographic order. T is lower triangular, so the first dim_of(r) functions span
/// polynomials of degree r <= q. With orthonormalization T makes the mass matrix the identity.
class ScalarBasis
{
public:
  ScalarBasis() = default;
  static ScalarBasis element(const Mesh &mesh, std::size_t iT, int q, bool orthonormal = true);
  static ScalarBasis face(const Mesh &mesh, std::size_t iF, int q, bool orthonormal = true);

  bool on_face() const { return m_face; }
  std::size_t cell() const { return m_cell; }
  int degree() const { return m_degree; }
  int dim() const { return dim_of(m_degree); }
  /// Number of basis functions spanning polynomials of degree <= r
  int dim_of(int r) const { return m_face ? dim_p2(r) : dim_p3(r); }
  /// Number of space variables (3 on elements, 2 on faces)
  int variables() const { return m_face ? 2 : 3; }
  bool orthonormal() const { return m_orthonormal; }
  double scale() const { return m_scale; }
  const Vector3d &center() const { return m_center; }
  const Vector3d &t1() const { return m_t1; }
  const Vector3d &t2() const { return m_t2; }

  /// Scaled coordinates of a point (third entry is zero on faces)
  Vector3d scaled(const Vector3d &x) const;

  /// Values of all basis functions at x
  VectorXd values(const Vector3d &x) const;
  /// Gradients (dim x variables); on faces the tangential gradient in frame components
  MatrixXd gradients(const Vector3d &x) const;
  /// Values at all points of a rule (npts x dim)
  MatrixXd values(const QuadRule &rule) const;

  const MatrixXd &transform() const { return m_transform; }
  /// Mass matrix (exact quadrature)
  const MatrixXd &mass() const { return m_mass; }

  /// Basis coordinates of the polynomial with scaled-monomial coefficients a (any length dim_of(r))
  VectorXd from_monomials(const VectorXd &a) const;
  /// Scaled-monomial coefficients of the polynomial with basis coordinates c (any length dim_of(r))
  VectorXd to_monomials(const VectorXd &c) const;

  /// Matrix of d/dx_var acting on basis coordinates (dim x dim, exact)
  const MatrixXd &derivative(int var) const { return m_derivatives[var]; }

private:
  void finalize(const QuadRule &rule, bool orthonormal);

  bool m_face = false;
  bool m_orthonormal = true;
  std::size_t m_cell = 0;
  int m_degree = 0;
  double m_scale = 1.;
  Vector3d m_center, m_t1, m_t2;
  MatrixXd m_transform, m_inverse, m_mass;
  std::vector<MatrixXd> m_derivatives;
};

/// Mass matrix of the first dim_of(r) basis functions computed with a given rule
MatrixXd mass_matrix(const ScalarBasis &basis, const QuadRule &rule, int r);
/// Block-diagonal mass matrix of the vector space (P^r)^ncomp, component-major ordering
MatrixXd vector_mass(const ScalarBasis &basis, int r, int ncomp);

/// L2 projection onto degree r of a function sampled at the rule points
VectorXd project(const ScalarBasis &basis, int r, const QuadRule &rule, const VectorXd &samples);
/// L2 projection of a vector field sampled at the rule points (one column per component)
VectorXd project_vector(const ScalarBasis &basis, int r, const QuadRule &rule, const MatrixXd &samples);
/// Coordinates of a basis coordinate vector of degree r re-expressed in degree s >= r (zero padding)
VectorXd embed(const VectorXd &c, const ScalarBasis &basis, int r, int s, int ncomp);

/// Restriction of the element basis to a face, exact: rows are face coordinates (degree r),
/// columns element coordinates (degree r). Computed by composing with the face parametrization.
MatrixXd trace_matrix(const ScalarBasis &element, const ScalarBasis &face, int r);

/// Tangential trace of (P^r(T))^3 to (P^r(F))^2 in the face frame (component-major both sides)
MatrixXd tangential_trace_matrix(const ScalarBasis &element, const ScalarBasis &face, int r);

/// Matrix of the curl on (P^r(T))^3 coordinates, result in (P^r(T))^3 coordinates
MatrixXd curl_matrix(const ScalarBasis &basis, int r);
/// Matrix of the gradient from P^r(T) to (P^r(T))^3 coordinates
MatrixXd gradient_matrix(const ScalarBasis &basis, int r);

enum class SubspaceTag
{
  grad_element,  ///< grad P^{q+1}(T)
  rot_element,   ///< curl (P^{q+1}(T))^3
  grad_face,     ///< grad_tau P^{q+1}(F)
  pflat_face     ///< (P^{q-1}(F))^2 + grad_tau of homogeneous degree q+1
};

/// Subspace of a vector polynomial space, stored as columns in ambient coordinates.
/// The ambient space is (P^q)^ncomp over the given scalar basis (component-major).
struct SubspaceBasis
{
  SubspaceTag tag = SubspaceTag::grad_element;
  int degree = 0;
  int ncomp = 3;
  MatrixXd columns;       ///< ambient coordinates of the basis vectors
  MatrixXd gram;          ///< columns^T M columns
  MatrixXd generators;    ///< ambient coordinates of the selected raw generators
  MatrixXd to_generators; ///< columns = generators * to_generators
  std::vector<int> generator_ids; ///< which raw generators were kept
  int dim() const { return int(columns.cols()); }
};

SubspaceBasis subspace_grad_T(const ScalarBasis &basis, int q);
SubspaceBasis subspace_rot_T(const ScalarBasis &basis, int q);
SubspaceBasis subspace_grad_F(const ScalarBasis &basis, int q);
SubspaceBasis subspace_pflat_F(const ScalarBasis &basis, int q);

/// Orthogonal projection onto a subspace of a vector given in ambient coordinates
VectorXd project_subspace(const SubspaceBasis &S, const ScalarBasis &basis, const VectorXd &ambient);

/// p = grad g + (x - x_T) x curl c
struct Decomposition
{
  VectorXd g;                ///< scaled-monomial coefficients, degree q+1
  std::array<VectorXd, 3> c; ///< scaled-monomial coefficients per component, degree q
  VectorXd grad_part;        ///< ambient (P^q)^3 coordinates of grad g
  VectorXd rot_part;         ///< ambient (P^q)^3 coordinates of (x - x_T) x curl c
};

/// Splits p in (P^q(T))^3 (ambient coordinates over `basis`, degree q <= basis degree)
Decomposition decompose_polynomial(const ScalarBasis &basis, const VectorXd &p, int q);

/// Evaluates a scaled-monomial expansion of degree q in the element frame of `basis`
double eval_monomial_expansion(const ScalarBasis &basis, const VectorXd &a, int q, const Vector3d &x);
/// Gradient of such an expansion
Vector3d grad_monomial_expansion(const ScalarBasis &basis, const VectorXd &a, int q, const Vector3d &x);

} // namespace hhomag

#endif
