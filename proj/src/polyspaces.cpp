#include <hhomag/polyspaces.hpp>

#include <algorithm>

#include <hhomag/monomials.hpp>

namespace hhomag
{

namespace
{

// Levi-Civita symbol
int levi_civita(int i, int j, int k)
{
  if (i == j || j == k || i == k) return 0;
  return ((i + 1) % 3 == j) ? 1 : -1;
}

MatrixXd monomial_values(const ScalarBasis &b, const QuadRule &rule, int q)
{
  MatrixXd V(rule.size(), b.dim_of(q));
  for (std::size_t p = 0; p < rule.size(); ++p) {
    const Vector3d xi = b.scaled(rule.points[p]);
    V.row(p) = b.on_face() ? eval_monomials2(q, xi.head<2>()).transpose() : eval_monomials3(q, xi).transpose();
  }
  return V;
}

MatrixXd weighted_gram(const MatrixXd &V, const QuadRule &rule)
{
  const Eigen::Map<const VectorXd> w(rule.weights.data(), Eigen::Index(rule.size()));
  return V.transpose() * w.asDiagonal() * V;
}

// Inverse of a lower-triangular Cholesky factor of G, as an explicit matrix
MatrixXd inverse_cholesky_factor(const MatrixXd &G)
{
  Eigen::LLT<MatrixXd> llt(G);
  if (llt.info() != Eigen::Success) throw NumericalError("mass matrix is not positive definite");
  MatrixXd L = llt.matrixL();
  return L.triangularView<Eigen::Lower>().solve(MatrixXd::Identity(G.rows(), G.cols()));
}

} // namespace

//------------------------------------------------------------------------------
// ScalarBasis
//------------------------------------------------------------------------------

ScalarBasis ScalarBasis::element(const Mesh &mesh, std::size_t iT, int q, bool orthonormal)
{
  if (q < 0) throw ConfigError("polynomial degree must be nonnegative");
  const Element &T = mesh.element(iT);
  ScalarBasis b;
  b.m_face = false;
  b.m_cell = iT;
  b.m_degree = q;
  b.m_center = T.center;
  b.m_scale = T.diameter;
  b.m_t1 = Vector3d::UnitX();
  b.m_t2 = Vector3d::UnitY();
  b.finalize(element_rule(mesh, iT, 2 * q), orthonormal);
  return b;
}

ScalarBasis ScalarBasis::face(const Mesh &mesh, std::size_t iF, int q, bool orthonormal)
{
  if (q < 0) throw ConfigError("polynomial degree must be nonnegative");
  const Face &F = mesh.face(iF);
  ScalarBasis b;
  b.m_face = true;
  b.m_cell = iF;
  b.m_degree = q;
  b.m_center = F.centroid;
  b.m_scale = F.diameter;
  b.m_t1 = F.t1;
  b.m_t2 = F.t2;
  b.finalize(face_rule(mesh, iF, 2 * q), orthonormal);
  return b;
}

void ScalarBasis::finalize(const QuadRule &rule, bool orthonormal)
{
  m_orthonormal = orthonormal;
  const int n = dim();
  const MatrixXd V = monomial_values(*this, rule, m_degree);
  if (orthonormal) {
    // two Cholesky passes: the second one removes the rounding left by the first
    m_transform = inverse_cholesky_factor(weighted_gram(V, rule));
    const MatrixXd V1 = V * m_transform.transpose();
    m_transform = inverse_cholesky_factor(weighted_gram(V1, rule)) * m_transform;
    m_transform = m_transform.triangularView<Eigen::Lower>();
  } else {
    m_transform = MatrixXd::Identity(n, n);
  }
  m_inverse = m_transform.triangularView<Eigen::Lower>().solve(MatrixXd::Identity(n, n));
  m_inverse = m_inverse.triangularView<Eigen::Lower>();
  const MatrixXd Phi = V * m_transform.transpose();
  m_mass = weighted_gram(Phi, rule);
  m_mass = 0.5 * (m_mass + m_mass.transpose()).eval();

  m_derivatives.assign(variables(), MatrixXd::Zero(n, n));
  for (int var = 0; var < variables(); ++var)
    for (int j = 0; j < n; ++j) {
      const VectorXd a = m_transform.row(j).transpose();
      const VectorXd da = (m_face ? diff2(a, m_degree, var) : diff3(a, m_degree, var)) / m_scale;
      if (da.size() > 0) m_derivatives[var].col(j).head(da.size()) = from_monomials(da);
    }
}

Vector3d ScalarBasis::scaled(const Vector3d &x) const
{
  if (!m_face) return (x - m_center) / m_scale;
  const Vector3d d = x - m_center;
  return Vector3d(d.dot(m_t1) / m_scale, d.dot(m_t2) / m_scale, 0.);
}

VectorXd ScalarBasis::values(const Vector3d &x) const
{
  const Vector3d xi = scaled(x);
  const VectorXd m = m_face ? eval_monomials2(m_degree, xi.head<2>()) : eval_monomials3(m_degree, xi);
  return m_transform.triangularView<Eigen::Lower>() * m;
}

MatrixXd ScalarBasis::gradients(const Vector3d &x) const
{
  const Vector3d xi = scaled(x);
  const MatrixXd g =
      m_face ? eval_monomial_gradients2(m_degree, xi.head<2>()) : eval_monomial_gradients3(m_degree, xi);
  return (m_transform * g) / m_scale;
}

MatrixXd ScalarBasis::values(const QuadRule &rule) const
{
  return monomial_values(*this, rule, m_degree) * m_transform.transpose();
}

VectorXd ScalarBasis::from_monomials(const VectorXd &a) const
{
  const Eigen::Index n = a.size();
  return m_inverse.topLeftCorner(n, n).transpose().triangularView<Eigen::Upper>() * a;
}

VectorXd ScalarBasis::to_monomials(const VectorXd &c) const
{
  const Eigen::Index n = c.size();
  return m_transform.topLeftCorner(n, n).transpose().triangularView<Eigen::Upper>() * c;
}

//------------------------------------------------------------------------------
// Mass matrices and projections
//------------------------------------------------------------------------------

MatrixXd mass_matrix(const ScalarBasis &basis, const QuadRule &rule, int r)
{
  const MatrixXd Phi = basis.values(rule).leftCols(basis.dim_of(r));
  return weighted_gram(Phi, rule);
}

MatrixXd vector_mass(const ScalarBasis &basis, int r, int ncomp)
{
  const int n = basis.dim_of(r);
  MatrixXd M = MatrixXd::Zero(ncomp * n, ncomp * n);
  for (int c = 0; c < ncomp; ++c) M.block(c * n, c * n, n, n) = basis.mass().topLeftCorner(n, n);
  return M;
}

VectorXd project(const ScalarBasis &basis, int r, const QuadRule &rule, const VectorXd &samples)
{
  const int n = basis.dim_of(r);
  const MatrixXd Phi = basis.values(rule).leftCols(n);
  const Eigen::Map<const VectorXd> w(rule.weights.data(), Eigen::Index(rule.size()));
  const VectorXd rhs = Phi.transpose() * w.cwiseProduct(samples);
  return basis.mass().topLeftCorner(n, n).ldlt().solve(rhs);
}

VectorXd project_vector(const ScalarBasis &basis, int r, const QuadRule &rule, const MatrixXd &samples)
{
  const int n = basis.dim_of(r);
  const int ncomp = int(samples.cols());
  const MatrixXd Phi = basis.values(rule).leftCols(n);
  const Eigen::Map<const VectorXd> w(rule.weights.data(), Eigen::Index(rule.size()));
  const auto ldlt = basis.mass().topLeftCorner(n, n).ldlt();
  VectorXd out(ncomp * n);
  for (int c = 0; c < ncomp; ++c) out.segment(c * n, n) = ldlt.solve(Phi.transpose() * w.cwiseProduct(samples.col(c)));
  return out;
}

VectorXd embed(const VectorXd &c, const ScalarBasis &basis, int r, int s, int ncomp)
{
  const int nr = basis.dim_of(r), ns = basis.dim_of(s);
  VectorXd out = VectorXd::Zero(ncomp * ns);
  const int n = std::min(nr, ns);
  for (int k = 0; k < ncomp; ++k) out.segment(k * ns, n) = c.segment(k * nr, n);
  return out;
}

//------------------------------------------------------------------------------
// Traces and differential operators
//------------------------------------------------------------------------------

namespace
{

// Product of a 2D expansion of degree q with a linear one (coefficients for 1, s, t)
VectorXd times_linear2(const VectorXd &a, int q, const Vector3d &lin)
{
  const auto &P = powers2(q);
  VectorXd out = VectorXd::Zero(dim_p2(q + 1));
  for (std::size_t i = 0; i < P.size(); ++i) {
    if (a(i) == 0.) continue;
    const int s = P[i][0], t = P[i][1];
    out(index2(s, t)) += lin(0) * a(i);
    out(index2(s + 1, t)) += lin(1) * a(i);
    out(index2(s, t + 1)) += lin(2) * a(i);
  }
  return out;
}

} // namespace

MatrixXd trace_matrix(const ScalarBasis &element, const ScalarBasis &face, int r)
{
  const int ne = dim_p3(r), nf = dim_p2(r);
  // scaled element coordinates as affine functions of the scaled face coordinates
  const double ratio = face.scale() / element.scale();
  std::array<Vector3d, 3> lin;
  const Vector3d o = (face.center() - element.center()) / element.scale();
  for (int i = 0; i < 3; ++i) lin[i] = Vector3d(o(i), ratio * face.t1()(i), ratio * face.t2()(i));

  // compose every monomial with the parametrization, reusing lower-degree products
  const auto &P = powers3(r);
  MatrixXd C = MatrixXd::Zero(nf, ne);
  C(0, 0) = 1.;
  for (int i = 1; i < ne; ++i) {
    auto e = P[i];
    const int d = e[0] + e[1] + e[2];
    int var = e[0] > 0 ? 0 : (e[1] > 0 ? 1 : 2);
    --e[var];
    const int prev = index3(e[0], e[1], e[2]);
    const VectorXd lower = C.col(prev).head(dim_p2(d - 1));
    C.col(i).head(dim_p2(d)) = times_linear2(lower, d - 1, lin[var]);
  }
  const MatrixXd Te = element.transform().topLeftCorner(ne, ne);
  MatrixXd Tr(nf, ne);
  for (int j = 0; j < ne; ++j) Tr.col(j) = face.from_monomials(C * Te.row(j).transpose());
  return Tr;
}

MatrixXd tangential_trace_matrix(const ScalarBasis &element, const ScalarBasis &face, int r)
{
  const MatrixXd Tr = trace_matrix(element, face, r);
  const Eigen::Index nf = Tr.rows(), ne = Tr.cols();
  MatrixXd out = MatrixXd::Zero(2 * nf, 3 * ne);
  for (int a = 0; a < 2; ++a) {
    const Vector3d &t = a == 0 ? face.t1() : face.t2();
    for (int c = 0; c < 3; ++c) out.block(a * nf, c * ne, nf, ne) = t(c) * Tr;
  }
  return out;
}

MatrixXd curl_matrix(const ScalarBasis &basis, int r)
{
  const int n = basis.dim_of(r);
  MatrixXd out = MatrixXd::Zero(3 * n, 3 * n);
  for (int i = 0; i < 3; ++i)
    for (int c = 0; c < 3; ++c)
      for (int m = 0; m < 3; ++m) {
        const int eps = levi_civita(i, m, c);
        if (eps != 0) out.block(i * n, c * n, n, n) += eps * basis.derivative(m).topLeftCorner(n, n);
      }
  return out;
}

MatrixXd gradient_matrix(const ScalarBasis &basis, int r)
{
  const int n = basis.dim_of(r);
  MatrixXd out(3 * n, n);
  for (int i = 0; i < 3; ++i) out.block(i * n, 0, n, n) = basis.derivative(i).topLeftCorner(n, n);
  return out;
}

//------------------------------------------------------------------------------
// Subspaces
//------------------------------------------------------------------------------

namespace
{

SubspaceBasis make_subspace(SubspaceTag tag, int q, int ncomp, const ScalarBasis &basis, const MatrixXd &gens,
                            int expected)
{
  SubspaceBasis S;
  S.tag = tag;
  S.degree = q;
  S.ncomp = ncomp;
  const int namb = ncomp * basis.dim_of(q);
  if (expected == 0 || gens.cols() == 0) {
    S.columns = S.generators = MatrixXd::Zero(namb, 0);
    S.gram = S.to_generators = MatrixXd::Zero(0, 0);
    return S;
  }
  const MatrixXd M = vector_mass(basis, q, ncomp);
  const MatrixXd L = M.llt().matrixL();
  Eigen::ColPivHouseholderQR<MatrixXd> qr(L.transpose() * gens);
  qr.setThreshold(1e-10);
  const int rank = int(qr.rank());
  if (rank != expected)
    throw NumericalError("subspace rank " + std::to_string(rank) + " differs from expected dimension " +
                         std::to_string(expected));
  const auto &perm = qr.colsPermutation().indices();
  S.generator_ids.assign(perm.data(), perm.data() + rank);
  std::sort(S.generator_ids.begin(), S.generator_ids.end());
  S.generators.resize(namb, rank);
  for (int j = 0; j < rank; ++j) S.generators.col(j) = gens.col(S.generator_ids[j]);

  if (basis.orthonormal()) {
    const MatrixXd G = S.generators.transpose() * M * S.generators;
    S.to_generators = inverse_cholesky_factor(G).transpose();
  } else {
    S.to_generators = MatrixXd::Identity(rank, rank);
  }
  S.columns = S.generators * S.to_generators;
  S.gram = S.columns.transpose() * M * S.columns;
  S.gram = 0.5 * (S.gram + S.gram.transpose()).eval();
  return S;
}

// Ambient coordinates (degree q) of a vector polynomial given by monomial coefficients per component
VectorXd vector_from_monomials(const ScalarBasis &basis, const std::vector<VectorXd> &comps, int q)
{
  const int n = basis.dim_of(q);
  VectorXd out = VectorXd::Zero(comps.size() * n);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const VectorXd a = basis.on_face() ? resize2(comps[c], q) : resize3(comps[c], q);
    out.segment(c * n, n) = basis.from_monomials(a);
  }
  return out;
}

} // namespace

SubspaceBasis subspace_grad_T(const ScalarBasis &basis, int q)
{
  const int nm = dim_p3(q + 1);
  MatrixXd gens(3 * basis.dim_of(q), nm);
  gens.col(0).setZero(); // constant monomial has zero gradient
  for (int a = 1; a < nm; ++a) {
    VectorXd e = VectorXd::Unit(nm, a);
    std::vector<VectorXd> comps;
    for (int i = 0; i < 3; ++i) comps.push_back(diff3(e, q + 1, i) / basis.scale());
    gens.col(a) = vector_from_monomials(basis, comps, q);
  }
  SubspaceBasis S = make_subspace(SubspaceTag::grad_element, q, 3, basis, gens.rightCols(nm - 1), dim_grad_element(q));
  for (auto &id : S.generator_ids) ++id; // ids refer to monomials of degree <= q+1
  return S;
}

SubspaceBasis subspace_rot_T(const ScalarBasis &basis, int q)
{
  if (q < 0) return make_subspace(SubspaceTag::rot_element, q, 3, basis, MatrixXd(), 0);
  const int nm = dim_p3(q + 1);
  MatrixXd gens(3 * basis.dim_of(q), 3 * nm);
  for (int c = 0; c < 3; ++c)
    for (int a = 0; a < nm; ++a) {
      const VectorXd e = VectorXd::Unit(nm, a);
      std::array<VectorXd, 3> d;
      for (int m = 0; m < 3; ++m) d[m] = diff3(e, q + 1, m) / basis.scale();
      std::vector<VectorXd> comps(3, VectorXd::Zero(dim_p3(q)));
      for (int i = 0; i < 3; ++i)
        for (int m = 0; m < 3; ++m) {
          const int eps = levi_civita(i, m, c);
          if (eps != 0 && d[m].size() > 0) comps[i] += eps * d[m];
        }
      gens.col(c * nm + a) = vector_from_monomials(basis, comps, q);
    }
  return make_subspace(SubspaceTag::rot_element, q, 3, basis, gens, dim_rot_element(q));
}

SubspaceBasis subspace_grad_F(const ScalarBasis &basis, int q)
{
  const int nm = dim_p2(q + 1);
  MatrixXd gens(2 * basis.dim_of(q), nm - 1);
  for (int a = 1; a < nm; ++a) {
    const VectorXd e = VectorXd::Unit(nm, a);
    std::vector<VectorXd> comps;
    for (int i = 0; i < 2; ++i) comps.push_back(diff2(e, q + 1, i) / basis.scale());
    gens.col(a - 1) = vector_from_monomials(basis, comps, q);
  }
  SubspaceBasis S = make_subspace(SubspaceTag::grad_face, q, 2, basis, gens, dim_grad_face(q));
  for (auto &id : S.generator_ids) ++id;
  return S;
}

SubspaceBasis subspace_pflat_F(const ScalarBasis &basis, int q)
{
  if (q < 0) return make_subspace(SubspaceTag::pflat_face, q, 2, basis, MatrixXd(), 0);
  const int n = basis.dim_of(q);
  const int nlow = dim_p2(q - 1);
  MatrixXd gens = MatrixXd::Zero(2 * n, 2 * nlow + q + 2);
  for (int c = 0; c < 2; ++c)
    for (int j = 0; j < nlow; ++j) gens(c * n + j, c * nlow + j) = 1.;
  const int nm = dim_p2(q + 1);
  for (int h = 0; h <= q + 1; ++h) {
    // homogeneous monomials of degree q+1, in graded order
    const int a = index2(q + 1 - h, h);
    const VectorXd e = VectorXd::Unit(nm, a);
    std::vector<VectorXd> comps;
    for (int i = 0; i < 2; ++i) comps.push_back(diff2(e, q + 1, i) / basis.scale());
    gens.col(2 * nlow + h) = vector_from_monomials(basis, comps, q);
  }
  return make_subspace(SubspaceTag::pflat_face, q, 2, basis, gens, dim_pflat_face(q));
}

VectorXd project_subspace(const SubspaceBasis &S, const ScalarBasis &basis, const VectorXd &ambient)
{
  const MatrixXd M = vector_mass(basis, S.degree, S.ncomp);
  return S.gram.ldlt().solve(S.columns.transpose() * (M * ambient));
}

//------------------------------------------------------------------------------
// Decomposition
//------------------------------------------------------------------------------

Decomposition decompose_polynomial(const ScalarBasis &basis, const VectorXd &p, int q)
{
  const int n = basis.dim_of(q);
  if (p.size() != 3 * n) throw ConfigError("decompose_polynomial: coefficient vector has wrong size");
  const SubspaceBasis G = subspace_grad_T(basis, q);
  const SubspaceBasis R = subspace_rot_T(basis, q - 1);

  // (x - x_T) x r = h_T (xi x r) for each basis vector r of R^{q-1}
  MatrixXd X(3 * n, R.dim());
  const int nr = basis.dim_of(q - 1);
  for (int m = 0; m < R.dim(); ++m) {
    std::array<VectorXd, 3> r;
    for (int k = 0; k < 3; ++k) r[k] = basis.to_monomials(R.columns.col(m).segment(k * nr, nr));
    std::vector<VectorXd> comps(3, VectorXd::Zero(dim_p3(q)));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          const int eps = levi_civita(i, j, k);
          if (eps != 0) comps[i] += eps * basis.scale() * mulvar3(r[k], q - 1, j);
        }
    X.col(m) = vector_from_monomials(basis, comps, q);
  }

  MatrixXd A(3 * n, G.dim() + R.dim());
  A << G.columns, X;
  if (A.cols() != A.rows()) throw NumericalError("decomposition system is not square");
  Eigen::FullPivLU<MatrixXd> lu(A);
  if (!lu.isInvertible()) throw NumericalError("decomposition system is singular");
  const VectorXd y = lu.solve(p);

  Decomposition D;
  const VectorXd yg = y.head(G.dim()), yr = y.tail(R.dim());
  D.grad_part = G.columns * yg;
  D.rot_part = X * yr;
  D.g = VectorXd::Zero(dim_p3(q + 1));
  const VectorXd wg = G.to_generators * yg;
  for (int i = 0; i < int(G.generator_ids.size()); ++i) D.g(G.generator_ids[i]) += wg(i);
  for (auto &c : D.c) c = VectorXd::Zero(dim_p3(q));
  if (R.dim() > 0) {
    const VectorXd wr = R.to_generators * yr;
    const int nm = dim_p3(q);
    for (int i = 0; i < int(R.generator_ids.size()); ++i) {
      const int id = R.generator_ids[i];
      D.c[id / nm](id % nm) += wr(i);
    }
  }
  return D;
}

double eval_monomial_expansion(const ScalarBasis &basis, const VectorXd &a, int q, const Vector3d &x)
{
  return eval_monomials3(q, basis.scaled(x)).dot(a);
}

Vector3d grad_monomial_expansion(const ScalarBasis &basis, const VectorXd &a, int q, const Vector3d &x)
{
  return eval_monomial_gradients3(q, basis.scaled(x)).transpose() * a / basis.scale();
}

} // namespace hhomag
