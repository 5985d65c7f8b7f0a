#ifndef HHOMAG_ASSEMBLY_HPP
#define HHOMAG_ASSEMBLY_HPP

#include <iosfwd>
#include <memory>

#include <Eigen/Sparse>

#include <hhomag/localops.hpp>

namespace hhomag
{

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;

enum class SolverBackend
{
  automatic, ///< UMFPACK when compiled in, otherwise SparseLU
  sparse_lu,
  umfpack
};

/// True if the UMFPACK backend was compiled in
bool have_umfpack();

struct AssemblyOptions
{
  Stabilization stabilization = Stabilization::ch;
  bool condense = true;      ///< eliminate element unknowns
  bool symmetric = false;    ///< negate the second equation
  int threads = 1;
  int rhs_degree = -1;       ///< quadrature degree for loads and boundary data; -1: default
  LocalOptions local;
  SolverBackend backend = SolverBackend::automatic;
};

/// Per-element factors of the static condensation
struct ElementCondensation
{
  MatrixXd schur;      ///< A_FF - A_FE A_EE^{-1} A_EF
  MatrixXd load_map;   ///< A_FE A_EE^{-1}
  MatrixXd recovery;   ///< A_EE^{-1} A_EF
  MatrixXd inverse;    ///< A_EE^{-1}
};

class LinearSolver;

/// Global system for one formulation. Element unknowns are eliminated when condensed;
/// boundary face blocks are fixed by the essential condition and moved to the right-hand side.
///
/// Global unknown ordering: condensed: interior faces in mesh order, each block [X_F, Y_F].
/// Uncondensed: elements in mesh order [X_T, Y_T], then interior faces as above.
class AssembledSystem
{
public:
  AssembledSystem(const Mesh &mesh, int k, Formulation formulation, const AssemblyOptions &opts);
  ~AssembledSystem();
  AssembledSystem(AssembledSystem &&) noexcept;

  const Mesh &mesh() const { return *m_mesh; }
  const DofLayout &layout() const { return m_layout; }
  const AssemblyOptions &options() const { return m_opts; }
  bool condensed() const { return m_condensed; }
  int rhs_degree() const { return m_rhs_degree; }

  const SparseMatrix &matrix() const { return m_matrix; }
  const VectorXd &rhs() const { return m_rhs; }
  std::size_t n_unknowns() const { return std::size_t(m_matrix.rows()); }

  /// Local monolithic matrix of element iT, ordered [local X | local Y]
  MatrixXd local_matrix(std::size_t iT) const;
  const std::vector<LocalOperatorSet> &operators() const { return m_ops; }
  /// Element loads (X element blocks)
  const std::vector<VectorXd> &loads() const { return m_loads; }

  /// Sets the source term (recomputes element loads)
  void set_source(const VectorField &f);
  /// Sets element loads directly (X element blocks)
  void set_loads(const std::vector<VectorXd> &loads);
  /// Sets the essential boundary data from exact fields (null functions mean homogeneous data)
  void apply_dirichlet(const VectorField &u, const ScalarField &p);
  /// Sets the boundary blocks directly (only boundary face blocks are read)
  void set_boundary(const HybridVector &ux, const HybridVector &py);

  struct Result
  {
    HybridVector u, p;
    double residual = 0.;
    double solve_time = 0.; ///< factorization and solve, seconds
  };
  /// Factorizes on first call, then solves and recovers the full hybrid solution
  Result solve();

  /// Global index of the first unknown of interior face iF, or -1 on boundary faces
  long face_offset(std::size_t iF) const { return m_face_offset[iF]; }

  /// Writes the system in triplet text format: header `rows cols nnz`, then `row col value`
  void dump(std::ostream &out) const;

private:
  void assemble();
  void update_rhs();

  const Mesh *m_mesh;
  DofLayout m_layout;
  AssemblyOptions m_opts;
  int m_rhs_degree = 0;
  bool m_condensed = true;

  std::vector<LocalOperatorSet> m_ops;
  std::vector<MatrixXd> m_local;           // kept when not condensed
  std::vector<ElementCondensation> m_cond; // kept when condensed
  std::vector<VectorXd> m_loads;
  HybridVector m_bx, m_by;
  std::vector<long> m_face_offset;
  std::vector<long> m_element_offset;

  SparseMatrix m_matrix;
  VectorXd m_rhs;
  std::unique_ptr<LinearSolver> m_solver;
};

/// Field formulation: stabilization ch or none
AssembledSystem assemble_field(const Mesh &mesh, int k, const AssemblyOptions &opts);
/// Potential formulation: stabilization dh, ch or none
AssembledSystem assemble_potential(const Mesh &mesh, int k, const AssemblyOptions &opts);

/// Checks the option combination; throws ConfigError
void check_configuration(const Mesh &mesh, Formulation formulation, Stabilization stab);

/// Reads a triplet dump back into a sparse matrix
SparseMatrix read_triplets(std::istream &in);

} // namespace hhomag

#endif
