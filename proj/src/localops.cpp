#include <hhomag/localops.hpp>

namespace hhomag
{

const char *to_string(Formulation f) { return f == Formulation::field ? "field" : "potential"; }

const char *to_string(Stabilization s)
{
  switch (s) {
  case Stabilization::ch: return "ch";
  case Stabilization::dh: return "dh";
  default: return "none";
  }
}

Formulation parse_formulation(const std::string &s)
{
  if (s == "field") return Formulation::field;
  if (s == "potential") return Formulation::potential;
  throw ConfigError("unknown formulation '" + s + "' (expected field or potential)");
}

Stabilization parse_stabilization(const std::string &s)
{
  if (s == "ch") return Stabilization::ch;
  if (s == "dh") return Stabilization::dh;
  if (s == "none") return Stabilization::none;
  throw ConfigError("unknown stabilization '" + s + "' (expected ch, dh or none)");
}

//------------------------------------------------------------------------------
// HybridVector
//------------------------------------------------------------------------------

HybridVector HybridVector::zeros(const Mesh &mesh, int element_size, int face_size)
{
  HybridVector v;
  v.elements.assign(mesh.n_elements(), VectorXd::Zero(element_size));
  v.faces.assign(mesh.n_faces(), VectorXd::Zero(face_size));
  v.boundary.resize(mesh.n_faces());
  for (std::size_t i = 0; i < mesh.n_faces(); ++i) v.boundary[i] = mesh.face(i).boundary();
  return v;
}

VectorXd HybridVector::local(const Mesh &mesh, std::size_t iT) const
{
  const Element &T = mesh.element(iT);
  const Eigen::Index ne = elements[iT].size();
  const Eigen::Index nf = faces.empty() ? 0 : faces[0].size();
  VectorXd out(ne + Eigen::Index(T.faces.size()) * nf);
  out.head(ne) = elements[iT];
  for (std::size_t i = 0; i < T.faces.size(); ++i) out.segment(ne + Eigen::Index(i) * nf, nf) = faces[T.faces[i]];
  return out;
}

void HybridVector::clear_boundary()
{
  for (std::size_t i = 0; i < faces.size(); ++i)
    if (boundary[i]) faces[i].setZero();
}

double HybridVector::coefficient_norm() const
{
  double s = 0.;
  for (const auto &e : elements) s += e.squaredNorm();
  for (const auto &f : faces) s += f.squaredNorm();
  return std::sqrt(s);
}

HybridVector HybridVector::operator-(const HybridVector &o) const
{
  HybridVector r = *this;
  for (std::size_t i = 0; i < elements.size(); ++i) r.elements[i] -= o.elements[i];
  for (std::size_t i = 0; i < faces.size(); ++i) r.faces[i] -= o.faces[i];
  return r;
}

//------------------------------------------------------------------------------
// Local spaces and operators
//------------------------------------------------------------------------------

FaceSpaces build_face_spaces(const Mesh &mesh, std::size_t iF, const DofLayout &layout, const LocalOptions &opts)
{
  FaceSpaces fs;
  fs.basis = ScalarBasis::face(mesh, iF, layout.k + 1, opts.orthonormal);
  fs.xspace = layout.formulation == Formulation::field ? subspace_grad_F(fs.basis, layout.k + 1)
                                                       : subspace_pflat_F(fs.basis, layout.k + 1);
  fs.vector_mass = vector_mass(fs.basis, layout.k + 1, 2);
  return fs;
}

namespace
{

// Matrix of w -> w x n on (P^r)^3 coordinates with n points
MatrixXd cross_matrix(const Vector3d &n, int nb)
{
  Eigen::Matrix3d X;
  X << 0., n(2), -n(1), -n(2), 0., n(0), n(1), -n(0), 0.; // X w = w x n
  MatrixXd out = MatrixXd::Zero(3 * nb, 3 * nb);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (X(i, j) != 0.) out.block(i * nb, j * nb, nb, nb) = X(i, j) * MatrixXd::Identity(nb, nb);
  return out;
}

} // namespace

LocalOperatorSet build_local_operators(const Mesh &mesh, std::size_t iT, const DofLayout &layout,
                                       const LocalOptions &opts)
{
  const Element &T = mesh.element(iT);
  const int k = layout.k;
  const std::size_t nF = T.faces.size();
  LocalOperatorSet ops;
  ops.element = iT;
  ops.basis = ScalarBasis::element(mesh, iT, k + 1, opts.orthonormal);
  for (auto f : T.faces) ops.faces.push_back(build_face_spaces(mesh, f, layout, opts));

  const ScalarBasis &B = ops.basis;
  const int N = B.dim();         // P^{k+1}(T)
  const int Nk = B.dim_of(k);    // P^k(T)
  const int nxT = layout.x_element(), nxF = layout.x_face();
  const int nyT = layout.y_element(), nyF = layout.y_face();
  const int nx = layout.x_local(nF), ny = layout.y_local(nF);
  const MatrixXd &Ms = B.mass();

  ops.vector_mass = vector_mass(B, k + 1, 3);
  const auto mv_ldlt = ops.vector_mass.ldlt();
  const MatrixXd curlM = curl_matrix(B, k + 1);

  // traces on each face (degree k+1 on both sides)
  std::vector<MatrixXd> tr(nF), ttr(nF);
  for (std::size_t i = 0; i < nF; ++i) {
    tr[i] = trace_matrix(B, ops.faces[i].basis, k + 1);
    ttr[i] = tangential_trace_matrix(B, ops.faces[i].basis, k + 1);
  }

  // gradient reconstruction: (G q, w) = -(q_T, div w) + sum_F (q_F, w.n_TF)_F
  MatrixXd BG = MatrixXd::Zero(nxT, ny);
  {
    MatrixXd div(N, 3 * N);
    for (int c = 0; c < 3; ++c) div.block(0, c * N, N, N) = B.derivative(c);
    BG.leftCols(nyT) = -(Ms.leftCols(Nk).transpose() * div).transpose();
    for (std::size_t i = 0; i < nF; ++i) {
      const Vector3d n = mesh.outward_normal(iT, i);
      const int nfb = ops.faces[i].basis.dim();
      MatrixXd Nn(nfb, 3 * N);
      for (int c = 0; c < 3; ++c) Nn.block(0, c * N, nfb, N) = n(c) * tr[i];
      BG.middleCols(nyT + int(i) * nyF, nyF) = (ops.faces[i].basis.mass() * Nn).transpose();
    }
  }
  ops.grad = mv_ldlt.solve(BG);
  ops.b = MatrixXd::Zero(nx, ny);
  ops.b.topRows(nxT) = BG;

  // curl of the element unknown
  ops.curl_element = MatrixXd::Zero(3 * N, nx);
  ops.curl_element.leftCols(nxT) = curlM;

  // stabilization of the tangential trace jumps
  ops.stab = MatrixXd::Zero(nx, nx);
  for (std::size_t i = 0; i < nF; ++i) {
    const FaceSpaces &fs = ops.faces[i];
    const double hF = mesh.face(T.faces[i]).diameter;
    MatrixXd D = MatrixXd::Zero(nxF, nx);
    D.leftCols(nxT) = fs.xspace.gram.ldlt().solve(fs.xspace.columns.transpose() * fs.vector_mass * ttr[i]);
    D.middleCols(nxT + int(i) * nxF, nxF) = -MatrixXd::Identity(nxF, nxF);
    ops.stab += (D.transpose() * fs.xspace.gram * D) / hF;
  }
  ops.stab = 0.5 * (ops.stab + ops.stab.transpose()).eval();

  if (layout.formulation == Formulation::potential) {
    // curl reconstruction in R^k(T) (or (P^k(T))^3), embedded in (P^{k+1}(T))^3 coordinates
    MatrixXd space;
    if (opts.curl_full_space) {
      space = MatrixXd::Zero(3 * N, 3 * Nk);
      for (int c = 0; c < 3; ++c) space.block(c * N, c * Nk, Nk, Nk) = MatrixXd::Identity(Nk, Nk);
    } else {
      const SubspaceBasis R = subspace_rot_T(B, k);
      space.resize(3 * N, R.dim());
      for (int j = 0; j < R.dim(); ++j) space.col(j) = embed(R.columns.col(j), B, k, k + 1, 3);
    }
    const int nr = int(space.cols());
    ops.curl_space = space;
    ops.curl_gram = space.transpose() * ops.vector_mass * space;
    MatrixXd BC = MatrixXd::Zero(nr, nx);
    BC.leftCols(nxT) = space.transpose() * curlM.transpose() * ops.vector_mass;
    for (std::size_t i = 0; i < nF; ++i) {
      const FaceSpaces &fs = ops.faces[i];
      const MatrixXd X = cross_matrix(mesh.outward_normal(iT, i), N);
      BC.middleCols(nxT + int(i) * nxF, nxF) =
          (fs.xspace.columns.transpose() * fs.vector_mass * ttr[i] * X * space).transpose();
    }
    ops.curl = ops.curl_gram.ldlt().solve(BC);
    ops.a = ops.curl.transpose() * ops.curl_gram * ops.curl + ops.stab;
  } else {
    ops.a = ops.stab;
    ops.a.topLeftCorner(nxT, nxT) += curlM.transpose() * ops.vector_mass * curlM;
  }
  ops.a = 0.5 * (ops.a + ops.a.transpose()).eval();

  // Lagrange multiplier forms
  ops.c = MatrixXd::Zero(ny, ny);
  ops.d = MatrixXd::Zero(ny, ny);
  ops.c.topLeftCorner(nyT, nyT) = Ms.topLeftCorner(Nk, Nk);
  for (std::size_t i = 0; i < nF; ++i) {
    const MatrixXd &MF = ops.faces[i].basis.mass();
    const double hF = mesh.face(T.faces[i]).diameter;
    const int off = nyT + int(i) * nyF;
    ops.c.block(off, off, nyF, nyF) = hF * MF;
    MatrixXd E = MatrixXd::Zero(nyF, ny);
    E.leftCols(nyT) = -tr[i].leftCols(Nk);
    E.middleCols(off, nyF) = MatrixXd::Identity(nyF, nyF);
    ops.d += hF * E.transpose() * MF * E;
  }
  ops.d = 0.5 * (ops.d + ops.d.transpose()).eval();

  const MatrixXd gradY = gradient_matrix(B, k + 1).leftCols(Nk);
  ops.grad_element_y = gradY.transpose() * ops.vector_mass * gradY;
  return ops;
}

VectorXd element_load(const Mesh &mesh, const LocalOperatorSet &ops, const DofLayout &layout, const VectorField &f,
                      int degree)
{
  const QuadRule rule = element_rule(mesh, ops.element, degree);
  const MatrixXd Phi = ops.basis.values(rule);
  const int N = ops.basis.dim();
  VectorXd load = VectorXd::Zero(3 * N);
  for (std::size_t p = 0; p < rule.size(); ++p) {
    const Vector3d fx = rule.weights[p] * f(rule.points[p]);
    for (int c = 0; c < 3; ++c) load.segment(c * N, N) += fx(c) * Phi.row(p).transpose();
  }
  // (f, curl w) = sum_i curl(w)_i (f, b_i)
  if (layout.formulation == Formulation::field) return ops.curl_element.leftCols(layout.x_element()).transpose() * load;
  return load;
}

VectorXd interpolate_X_face(const Mesh &mesh, std::size_t iF, const FaceSpaces &fs, const VectorField &v, int degree)
{
  const QuadRule rule = face_rule(mesh, iF, degree);
  MatrixXd samples(rule.size(), 2);
  const Face &F = mesh.face(iF);
  for (std::size_t p = 0; p < rule.size(); ++p) {
    const Vector3d vx = v(rule.points[p]);
    samples(p, 0) = vx.dot(F.t1);
    samples(p, 1) = vx.dot(F.t2);
  }
  const VectorXd amb = project_vector(fs.basis, fs.basis.degree(), rule, samples);
  return project_subspace(fs.xspace, fs.basis, amb);
}

HybridVector interpolate_X(const Mesh &mesh, const DofLayout &layout, const VectorField &v, int degree,
                           const LocalOptions &opts, int threads)
{
  HybridVector out = HybridVector::zeros(mesh, layout.x_element(), layout.x_face());
  parallel_for(mesh.n_elements(), threads, [&](std::size_t iT) {
    const ScalarBasis B = ScalarBasis::element(mesh, iT, layout.k + 1, opts.orthonormal);
    const QuadRule rule = element_rule(mesh, iT, degree);
    MatrixXd samples(rule.size(), 3);
    for (std::size_t p = 0; p < rule.size(); ++p) samples.row(p) = v(rule.points[p]).transpose();
    out.elements[iT] = project_vector(B, layout.k + 1, rule, samples);
  });
  parallel_for(mesh.n_faces(), threads, [&](std::size_t iF) {
    const FaceSpaces fs = build_face_spaces(mesh, iF, layout, opts);
    out.faces[iF] = interpolate_X_face(mesh, iF, fs, v, degree);
  });
  return out;
}

HybridVector interpolate_Y(const Mesh &mesh, const DofLayout &layout, const ScalarField &q, int degree,
                           const LocalOptions &opts, int threads)
{
  HybridVector out = HybridVector::zeros(mesh, layout.y_element(), layout.y_face());
  parallel_for(mesh.n_elements(), threads, [&](std::size_t iT) {
    const ScalarBasis B = ScalarBasis::element(mesh, iT, layout.k + 1, opts.orthonormal);
    const QuadRule rule = element_rule(mesh, iT, degree);
    VectorXd samples(rule.size());
    for (std::size_t p = 0; p < rule.size(); ++p) samples(p) = q(rule.points[p]);
    out.elements[iT] = project(B, layout.k, rule, samples);
  });
  parallel_for(mesh.n_faces(), threads, [&](std::size_t iF) {
    const ScalarBasis B = ScalarBasis::face(mesh, iF, layout.k + 1, opts.orthonormal);
    const QuadRule rule = face_rule(mesh, iF, degree);
    VectorXd samples(rule.size());
    for (std::size_t p = 0; p < rule.size(); ++p) samples(p) = q(rule.points[p]);
    out.faces[iF] = project(B, layout.k + 1, rule, samples);
  });
  return out;
}

} // namespace hhomag
