#include <hhomag/assembly.hpp>

#include <chrono>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>

#include <Eigen/SparseLU>
#ifdef HHOMAG_HAVE_UMFPACK
#include <Eigen/UmfPackSupport>
#endif

namespace hhomag
{

bool have_umfpack()
{
#ifdef HHOMAG_HAVE_UMFPACK
  return true;
#else
  return false;
#endif
}

class LinearSolver
{
public:
  virtual ~LinearSolver() = default;
  virtual void factorize(const SparseMatrix &A) = 0;
  virtual VectorXd solve(const VectorXd &b) = 0;
};

namespace
{

class SparseLUSolver : public LinearSolver
{
public:
  void factorize(const SparseMatrix &A) override
  {
    m_lu.analyzePattern(A);
    m_lu.factorize(A);
    if (m_lu.info() != Eigen::Success) throw NumericalError("sparse LU factorization failed: " + m_lu.lastErrorMessage());
  }
  VectorXd solve(const VectorXd &b) override { return m_lu.solve(b); }

private:
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> m_lu;
};

#ifdef HHOMAG_HAVE_UMFPACK
class UmfpackSolver : public LinearSolver
{
public:
  void factorize(const SparseMatrix &A) override
  {
    m_lu.compute(A);
    if (m_lu.info() != Eigen::Success)
      throw NumericalError("UMFPACK factorization failed (status " + std::to_string(m_lu.umfpackFactorizeReturncode()) +
                           (m_lu.umfpackFactorizeReturncode() == UMFPACK_ERROR_out_of_memory ? ", out of memory)" : ")"));
  }
  VectorXd solve(const VectorXd &b) override { return m_lu.solve(b); }

private:
  Eigen::UmfPackLU<SparseMatrix> m_lu;
};
#endif

std::unique_ptr<LinearSolver> make_solver(SolverBackend backend)
{
#ifdef HHOMAG_HAVE_UMFPACK
  if (backend != SolverBackend::sparse_lu) return std::make_unique<UmfpackSolver>();
#else
  if (backend == SolverBackend::umfpack) throw ConfigError("UMFPACK backend not available in this build");
#endif
  return std::make_unique<SparseLUSolver>();
}

// Local indices of the element unknowns and of the unknowns of each face, in the
// [local X | local Y] ordering
struct LocalIndex
{
  std::vector<int> element;
  std::vector<std::vector<int>> faces;
  std::vector<int> all_faces;
};

LocalIndex local_index(const DofLayout &L, std::size_t nF)
{
  LocalIndex idx;
  const int nx = L.x_local(nF);
  for (int i = 0; i < L.x_element(); ++i) idx.element.push_back(i);
  for (int i = 0; i < L.y_element(); ++i) idx.element.push_back(nx + i);
  idx.faces.resize(nF);
  for (std::size_t f = 0; f < nF; ++f) {
    for (int i = 0; i < L.x_face(); ++i) idx.faces[f].push_back(L.x_element() + int(f) * L.x_face() + i);
    for (int i = 0; i < L.y_face(); ++i) idx.faces[f].push_back(nx + L.y_element() + int(f) * L.y_face() + i);
    idx.all_faces.insert(idx.all_faces.end(), idx.faces[f].begin(), idx.faces[f].end());
  }
  return idx;
}

} // namespace

void check_configuration(const Mesh &mesh, Formulation formulation, Stabilization stab)
{
  if (formulation == Formulation::field && stab == Stabilization::dh)
    throw ConfigError("the field formulation supports stabilization ch or none");
  if (stab == Stabilization::none && !mesh.is_tetrahedral())
    throw ConfigError("stabilization 'none' requires a matching tetrahedral mesh (use the tetrahedral family)");
}

AssembledSystem::AssembledSystem(const Mesh &mesh, int k, Formulation formulation, const AssemblyOptions &opts)
    : m_mesh(&mesh), m_opts(opts)
{
  if (k < 0) throw ConfigError("polynomial degree k must be nonnegative");
  check_configuration(mesh, formulation, opts.stabilization);
  m_layout.formulation = formulation;
  m_layout.k = k;
  m_rhs_degree = opts.rhs_degree >= 0 ? opts.rhs_degree : default_rhs_degree(k);
  m_bx = HybridVector::zeros(mesh, m_layout.x_element(), m_layout.x_face());
  m_by = HybridVector::zeros(mesh, m_layout.y_element(), m_layout.y_face());
  m_loads.assign(mesh.n_elements(), VectorXd::Zero(m_layout.x_element()));
  assemble();
}

AssembledSystem::~AssembledSystem() = default;
AssembledSystem::AssembledSystem(AssembledSystem &&) noexcept = default;

MatrixXd AssembledSystem::local_matrix(std::size_t iT) const
{
  const LocalOperatorSet &ops = m_ops[iT];
  const int nx = ops.nx(), ny = ops.ny();
  MatrixXd A = MatrixXd::Zero(nx + ny, nx + ny);
  A.topLeftCorner(nx, nx) = ops.a;
  A.topRightCorner(nx, ny) = ops.b;
  A.bottomLeftCorner(ny, nx) = -ops.b.transpose();
  if (m_opts.stabilization == Stabilization::ch)
    A.bottomRightCorner(ny, ny) = ops.c;
  else if (m_opts.stabilization == Stabilization::dh)
    A.bottomRightCorner(ny, ny) = ops.d;
  if (m_opts.symmetric) A.bottomRows(ny) *= -1.;
  return A;
}

void AssembledSystem::assemble()
{
  const Mesh &mesh = *m_mesh;
  const std::size_t nT = mesh.n_elements();
  const int nfd = m_layout.x_face() + m_layout.y_face();
  const int ned = m_layout.x_element() + m_layout.y_element();

  m_ops.resize(nT);
  parallel_for(nT, m_opts.threads, [&](std::size_t iT) {
    m_ops[iT] = build_local_operators(mesh, iT, m_layout, m_opts.local);
  });

  // static condensation, with a fallback when an element block is numerically singular
  m_condensed = m_opts.condense;
  if (m_condensed) {
    m_cond.resize(nT);
    std::vector<double> ratio(nT, 1.);
    parallel_for(nT, m_opts.threads, [&](std::size_t iT) {
      const MatrixXd A = local_matrix(iT);
      const LocalIndex idx = local_index(m_layout, mesh.element(iT).faces.size());
      const MatrixXd AEE = A(idx.element, idx.element);
      const MatrixXd AEF = A(idx.element, idx.all_faces);
      const MatrixXd AFE = A(idx.all_faces, idx.element);
      const MatrixXd AFF = A(idx.all_faces, idx.all_faces);
      Eigen::FullPivLU<MatrixXd> lu(AEE);
      const VectorXd piv = lu.matrixLU().diagonal().cwiseAbs();
      ratio[iT] = piv.maxCoeff() > 0. ? piv.minCoeff() / piv.maxCoeff() : 0.;
      if (ratio[iT] < 1e-12) return;
      ElementCondensation &c = m_cond[iT];
      c.inverse = lu.inverse();
      c.recovery = c.inverse * AEF;
      c.load_map = AFE * c.inverse;
      c.schur = AFF - AFE * c.recovery;
    });
    for (std::size_t iT = 0; iT < nT; ++iT)
      if (ratio[iT] < 1e-12) {
        std::cerr << "warning: element " << iT << " block is numerically singular (pivot ratio " << ratio[iT]
                  << "); using the uncondensed system\n";
        m_condensed = false;
        m_cond.clear();
        break;
      }
  }

  // global numbering
  m_face_offset.assign(mesh.n_faces(), -1);
  m_element_offset.assign(nT, -1);
  long next = 0;
  if (!m_condensed)
    for (std::size_t iT = 0; iT < nT; ++iT) {
      m_element_offset[iT] = next;
      next += ned;
    }
  for (std::size_t iF = 0; iF < mesh.n_faces(); ++iF)
    if (!mesh.face(iF).boundary()) {
      m_face_offset[iF] = next;
      next += nfd;
    }
  const long n = next;

  // element contributions, merged serially in element order: setFromTriplets sums duplicates
  // in insertion order, so the result does not depend on the number of threads
  std::vector<std::vector<Eigen::Triplet<double>>> contrib(nT);
  parallel_for(nT, m_opts.threads, [&](std::size_t iT) {
    const Element &T = mesh.element(iT);
    std::vector<long> gidx;
    MatrixXd K;
    if (m_condensed) {
      K = m_cond[iT].schur;
    } else {
      const LocalIndex idx = local_index(m_layout, T.faces.size());
      std::vector<int> order = idx.element;
      order.insert(order.end(), idx.all_faces.begin(), idx.all_faces.end());
      K = local_matrix(iT)(order, order);
      for (int i = 0; i < ned; ++i) gidx.push_back(m_element_offset[iT] + i);
    }
    for (auto f : T.faces)
      for (int i = 0; i < nfd; ++i) gidx.push_back(m_face_offset[f] < 0 ? -1 : m_face_offset[f] + i);
    auto &trip = contrib[iT];
    for (Eigen::Index j = 0; j < K.cols(); ++j) {
      if (gidx[j] < 0) continue;
      for (Eigen::Index i = 0; i < K.rows(); ++i)
        if (gidx[i] >= 0 && K(i, j) != 0.) trip.emplace_back(int(gidx[i]), int(gidx[j]), K(i, j));
    }
  });
  std::vector<Eigen::Triplet<double>> triplets;
  std::size_t total = 0;
  for (const auto &c : contrib) total += c.size();
  triplets.reserve(total);
  for (auto &c : contrib) {
    triplets.insert(triplets.end(), c.begin(), c.end());
    std::vector<Eigen::Triplet<double>>().swap(c);
  }
  m_matrix.resize(n, n);
  m_matrix.setFromTriplets(triplets.begin(), triplets.end());
  m_matrix.makeCompressed();
  m_solver.reset();
  update_rhs();
}

void AssembledSystem::update_rhs()
{
  const Mesh &mesh = *m_mesh;
  const std::size_t nT = mesh.n_elements();
  const int nxT = m_layout.x_element(), nyT = m_layout.y_element();
  const int nxF = m_layout.x_face(), nyF = m_layout.y_face();
  const int nfd = nxF + nyF, ned = nxT + nyT;

  std::vector<VectorXd> contrib(nT);
  parallel_for(nT, m_opts.threads, [&](std::size_t iT) {
    const Element &T = mesh.element(iT);
    const std::size_t nF = T.faces.size();
    VectorXd bE = VectorXd::Zero(ned);
    bE.head(nxT) = m_loads[iT];
    VectorXd xF = VectorXd::Zero(Eigen::Index(nF) * nfd);
    for (std::size_t i = 0; i < nF; ++i)
      if (mesh.face(T.faces[i]).boundary()) {
        xF.segment(Eigen::Index(i) * nfd, nxF) = m_bx.faces[T.faces[i]];
        xF.segment(Eigen::Index(i) * nfd + nxF, nyF) = m_by.faces[T.faces[i]];
      }
    if (m_condensed) {
      const ElementCondensation &c = m_cond[iT];
      contrib[iT] = -c.load_map * bE - c.schur * xF;
    } else {
      const LocalIndex idx = local_index(m_layout, nF);
      std::vector<int> order = idx.element;
      order.insert(order.end(), idx.all_faces.begin(), idx.all_faces.end());
      const MatrixXd K = local_matrix(iT)(order, order);
      VectorXd x(ned + xF.size()), b = VectorXd::Zero(ned + xF.size());
      x << VectorXd::Zero(ned), xF;
      b.head(ned) = bE;
      contrib[iT] = b - K * x;
    }
  });

  m_rhs = VectorXd::Zero(m_matrix.rows());
  for (std::size_t iT = 0; iT < nT; ++iT) {
    const Element &T = mesh.element(iT);
    Eigen::Index pos = 0;
    if (!m_condensed) {
      m_rhs.segment(m_element_offset[iT], ned) += contrib[iT].head(ned);
      pos = ned;
    }
    for (std::size_t i = 0; i < T.faces.size(); ++i, pos += nfd) {
      const long off = m_face_offset[T.faces[i]];
      if (off >= 0) m_rhs.segment(off, nfd) += contrib[iT].segment(pos, nfd);
    }
  }
}

void AssembledSystem::set_source(const VectorField &f)
{
  parallel_for(m_mesh->n_elements(), m_opts.threads, [&](std::size_t iT) {
    m_loads[iT] = element_load(*m_mesh, m_ops[iT], m_layout, f, m_rhs_degree);
  });
  update_rhs();
}

void AssembledSystem::set_loads(const std::vector<VectorXd> &loads)
{
  if (loads.size() != m_loads.size()) throw ConfigError("one load vector per element expected");
  m_loads = loads;
  update_rhs();
}

void AssembledSystem::apply_dirichlet(const VectorField &u, const ScalarField &p)
{
  const Mesh &mesh = *m_mesh;
  parallel_for(mesh.n_faces(), m_opts.threads, [&](std::size_t iF) {
    if (!mesh.face(iF).boundary()) return;
    const FaceSpaces fs = build_face_spaces(mesh, iF, m_layout, m_opts.local);
    m_bx.faces[iF] = u ? interpolate_X_face(mesh, iF, fs, u, m_rhs_degree) : VectorXd::Zero(m_layout.x_face());
    if (p) {
      const QuadRule rule = face_rule(mesh, iF, m_rhs_degree);
      VectorXd s(rule.size());
      for (std::size_t q = 0; q < rule.size(); ++q) s(q) = p(rule.points[q]);
      m_by.faces[iF] = project(fs.basis, m_layout.k + 1, rule, s);
    } else {
      m_by.faces[iF] = VectorXd::Zero(m_layout.y_face());
    }
  });
  update_rhs();
}

void AssembledSystem::set_boundary(const HybridVector &ux, const HybridVector &py)
{
  for (std::size_t iF = 0; iF < m_mesh->n_faces(); ++iF)
    if (m_mesh->face(iF).boundary()) {
      m_bx.faces[iF] = ux.faces[iF];
      m_by.faces[iF] = py.faces[iF];
    }
  update_rhs();
}

AssembledSystem::Result AssembledSystem::solve()
{
  const Mesh &mesh = *m_mesh;
  const auto start = std::chrono::steady_clock::now();
  VectorXd x = VectorXd::Zero(m_matrix.rows());
  Result res;
  if (m_matrix.rows() > 0) {
    if (!m_solver) {
      m_solver = make_solver(m_opts.backend);
      m_solver->factorize(m_matrix);
    }
    x = m_solver->solve(m_rhs);
    const double bn = m_rhs.norm();
    const double rn = (m_matrix * x - m_rhs).norm();
    res.residual = bn > 0. ? rn / bn : rn;
    if (!std::isfinite(res.residual) || res.residual > 1e-10) {
      std::ostringstream msg;
      msg << "linear solve residual " << res.residual << " exceeds 1e-10";
      throw NumericalError(msg.str());
    }
  }
  res.solve_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const int nxT = m_layout.x_element(), nyT = m_layout.y_element();
  const int nxF = m_layout.x_face(), nyF = m_layout.y_face();
  const int nfd = nxF + nyF, ned = nxT + nyT;
  res.u = m_bx;
  res.p = m_by;
  for (std::size_t iF = 0; iF < mesh.n_faces(); ++iF) {
    const long off = m_face_offset[iF];
    if (off < 0) continue;
    res.u.faces[iF] = x.segment(off, nxF);
    res.p.faces[iF] = x.segment(off + nxF, nyF);
  }
  parallel_for(mesh.n_elements(), m_opts.threads, [&](std::size_t iT) {
    VectorXd xE;
    if (m_condensed) {
      const Element &T = mesh.element(iT);
      VectorXd xF(Eigen::Index(T.faces.size()) * nfd);
      for (std::size_t i = 0; i < T.faces.size(); ++i) {
        xF.segment(Eigen::Index(i) * nfd, nxF) = res.u.faces[T.faces[i]];
        xF.segment(Eigen::Index(i) * nfd + nxF, nyF) = res.p.faces[T.faces[i]];
      }
      VectorXd bE = VectorXd::Zero(ned);
      bE.head(nxT) = m_loads[iT];
      xE = m_cond[iT].inverse * bE - m_cond[iT].recovery * xF;
    } else {
      xE = x.segment(m_element_offset[iT], ned);
    }
    res.u.elements[iT] = xE.head(nxT);
    res.p.elements[iT] = xE.tail(nyT);
  });
  return res;
}

void AssembledSystem::dump(std::ostream &out) const
{
  out << m_matrix.rows() << " " << m_matrix.cols() << " " << m_matrix.nonZeros() << "\n";
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (int j = 0; j < m_matrix.outerSize(); ++j)
    for (SparseMatrix::InnerIterator it(m_matrix, j); it; ++it) out << it.row() << " " << it.col() << " " << it.value() << "\n";
}

SparseMatrix read_triplets(std::istream &in)
{
  long rows, cols, nnz;
  if (!(in >> rows >> cols >> nnz) || rows < 0 || cols < 0 || nnz < 0) throw ParseError("expected triplet header", 1);
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(std::size_t(nnz));
  for (long i = 0; i < nnz; ++i) {
    long r, c;
    double v;
    if (!(in >> r >> c >> v) || r < 0 || r >= rows || c < 0 || c >= cols)
      throw ParseError("invalid triplet", std::size_t(i + 2));
    t.emplace_back(int(r), int(c), v);
  }
  SparseMatrix A(rows, cols);
  A.setFromTriplets(t.begin(), t.end());
  return A;
}

AssembledSystem assemble_field(const Mesh &mesh, int k, const AssemblyOptions &opts)
{
  return AssembledSystem(mesh, k, Formulation::field, opts);
}

AssembledSystem assemble_potential(const Mesh &mesh, int k, const AssemblyOptions &opts)
{
  return AssembledSystem(mesh, k, Formulation::potential, opts);
}

} // namespace hhomag
