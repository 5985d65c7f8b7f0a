#ifndef HHOMAG_LOCALOPS_HPP
#define HHOMAG_LOCALOPS_HPP

#include <vector>

#include <hhomag/polyspaces.hpp>

namespace hhomag
{

enum class Formulation
{
  field,
  potential
};

/// Penalty acting on the Lagrange multiplier
enum class Stabilization
{
  ch,  ///< (r_T, q_T) + sum_F h_F (r_F, q_F)_F
  dh,  ///< sum_F h_F (r_F - r_T|F, q_F - q_T|F)_F
  none ///< admissible on matching tetrahedral meshes only
};

const char *to_string(Formulation f);
const char *to_string(Stabilization s);
Formulation parse_formulation(const std::string &s);
Stabilization parse_stabilization(const std::string &s);

/// Sizes of the element and face blocks of the two hybrid spaces
struct DofLayout
{
  Formulation formulation = Formulation::field;
  int k = 0;

  int x_element() const { return 3 * dim_p3(k + 1); }
  int x_face() const { return formulation == Formulation::field ? dim_grad_face(k + 1) : dim_pflat_face(k + 1); }
  int y_element() const { return dim_p3(k); }
  int y_face() const { return dim_p2(k + 1); }
  int x_local(std::size_t nfaces) const { return x_element() + int(nfaces) * x_face(); }
  int y_local(std::size_t nfaces) const { return y_element() + int(nfaces) * y_face(); }
};

/// One coefficient block per element and per face of either hybrid space
struct HybridVector
{
  std::vector<VectorXd> elements;
  std::vector<VectorXd> faces;
  std::vector<bool> boundary; ///< per face; boundary blocks are fixed by the essential condition

  static HybridVector zeros(const Mesh &mesh, int element_size, int face_size);
  /// Local vector of element iT: [element block, face blocks in the element's face order]
  VectorXd local(const Mesh &mesh, std::size_t iT) const;
  /// Sets all boundary face blocks to zero
  void clear_boundary();
  /// Euclidean norm of all coefficients
  double coefficient_norm() const;
  HybridVector operator-(const HybridVector &o) const;
};

/// Options shared by the local constructions
struct LocalOptions
{
  bool orthonormal = true;       ///< orthonormalize scaled monomials
  bool curl_full_space = false;  ///< reconstruct the curl in (P^k)^3 instead of R^k
};

/// Polynomial spaces attached to a face
struct FaceSpaces
{
  ScalarBasis basis;     ///< P^{k+1}(F)
  SubspaceBasis xspace;  ///< face X unknowns, in (P^{k+1}(F))^2 coordinates
  MatrixXd vector_mass;  ///< mass of (P^{k+1}(F))^2
};

FaceSpaces build_face_spaces(const Mesh &mesh, std::size_t iF, const DofLayout &layout, const LocalOptions &opts);

/// Per-element operator matrices. Local X vectors are [v_T | v_F for each face],
/// local Y vectors [q_T | q_F for each face].
struct LocalOperatorSet
{
  std::size_t element = 0;
  ScalarBasis basis;              ///< P^{k+1}(T); its first dim_p3(k) functions span P^k(T)
  std::vector<FaceSpaces> faces;

  MatrixXd vector_mass;    ///< mass of (P^{k+1}(T))^3
  MatrixXd grad;           ///< G_T: local Y -> (P^{k+1}(T))^3 coordinates
  MatrixXd curl_space;     ///< curl reconstruction space, columns in (P^{k+1}(T))^3 coordinates
  MatrixXd curl_gram;      ///< Gram matrix of curl_space
  MatrixXd curl;           ///< C_T: local X -> curl_space coordinates (potential only)
  MatrixXd curl_element;   ///< local X -> (P^{k+1}(T))^3 coordinates of curl v_T
  MatrixXd stab;           ///< s_T
  MatrixXd c;              ///< c_T
  MatrixXd d;              ///< d_T
  MatrixXd a;              ///< a_T
  MatrixXd b;              ///< b_T, b(w, q) = w^T b q
  MatrixXd grad_element_y; ///< (grad q_T, grad r_T)_T on the element Y block

  int nx() const { return int(a.rows()); }
  int ny() const { return int(c.rows()); }
};

LocalOperatorSet build_local_operators(const Mesh &mesh, std::size_t iT, const DofLayout &layout,
                                       const LocalOptions &opts = {});

/// Element load: (f, curl w_T) for the field formulation, (f, w_T) for the potential one,
/// for the basis of (P^{k+1}(T))^3; integrated with a rule of the given degree.
VectorXd element_load(const Mesh &mesh, const LocalOperatorSet &ops, const DofLayout &layout, const VectorField &f,
                      int degree);

/// Interpolators, with quadrature of the given degree for the projections
HybridVector interpolate_X(const Mesh &mesh, const DofLayout &layout, const VectorField &v, int degree,
                           const LocalOptions &opts = {}, int threads = 1);
HybridVector interpolate_Y(const Mesh &mesh, const DofLayout &layout, const ScalarField &q, int degree,
                           const LocalOptions &opts = {}, int threads = 1);
/// Face block of the X interpolator on one face
VectorXd interpolate_X_face(const Mesh &mesh, std::size_t iF, const FaceSpaces &fs, const VectorField &v, int degree);

/// Default quadrature degree for loads and norms of non-polynomial data
inline int default_rhs_degree(int k) { return 2 * k + 8; }

} // namespace hhomag

#endif
