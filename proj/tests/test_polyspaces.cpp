#include <doctest.h>

#include <cmath>

#include <hhomag/monomials.hpp>
#include <hhomag/polyspaces.hpp>
#include <hhomag/verification.hpp>

using namespace hhomag;

namespace
{

VectorXd random_vector(SplitMix64 &rng, int n)
{
  VectorXd v(n);
  for (auto &x : v) x = rng.uniform(-1., 1.);
  return v;
}

double mnorm(const MatrixXd &M, const VectorXd &v) { return std::sqrt(v.dot(M * v)); }

std::vector<std::pair<std::string, Mesh>> cells()
{
  auto c = sample_cells();
  c.emplace_back("kuhn tetrahedron", generate_tetrahedral(1));
  return c;
}

} // namespace

TEST_CASE("basis dimensions")
{
  const Mesh m = generate_cubic(1);
  CHECK(ScalarBasis::element(m, 0, 2).dim() == 10);
  CHECK(ScalarBasis::face(m, 0, 1).dim() == 3);
  CHECK(vector_mass(ScalarBasis::element(m, 0, 2), 2, 3).rows() == 30);
  for (int q = 0; q <= 4; ++q) {
    CHECK(ScalarBasis::element(m, 0, q).dim() == (q + 1) * (q + 2) * (q + 3) / 6);
    CHECK(ScalarBasis::face(m, 0, q).dim() == (q + 1) * (q + 2) / 2);
    CHECK(int(powers3(q).size()) == dim_p3(q));
    CHECK(int(powers2(q).size()) == dim_p2(q));
  }
  for (int q = 0; q <= 3; ++q)
    for (int i = 0; i < dim_p3(q); ++i) {
      const auto &p = powers3(q)[i];
      CHECK(index3(p[0], p[1], p[2]) == i);
    }
}

TEST_CASE("orthonormal bases have identity mass")
{
  for (const auto &[name, m] : cells()) {
    CAPTURE(name);
    for (int q : {0, 2, 4}) {
      const ScalarBasis B = ScalarBasis::element(m, 0, q);
      const MatrixXd M = mass_matrix(B, element_rule(m, 0, 2 * q + 2), q);
      CHECK((M - MatrixXd::Identity(B.dim(), B.dim())).cwiseAbs().maxCoeff() <= 1e-10);
      CHECK((B.mass() - MatrixXd::Identity(B.dim(), B.dim())).cwiseAbs().maxCoeff() <= 1e-10);
      for (std::size_t iF = 0; iF < m.n_faces(); ++iF) {
        const ScalarBasis F = ScalarBasis::face(m, iF, q);
        const MatrixXd MF = mass_matrix(F, face_rule(m, iF, 2 * q), q);
        CHECK((MF - MatrixXd::Identity(F.dim(), F.dim())).cwiseAbs().maxCoeff() <= 1e-10);
      }
      // raw scaled monomials: symmetric positive definite
      const ScalarBasis raw = ScalarBasis::element(m, 0, q, false);
      const MatrixXd Mr = raw.mass();
      CHECK((Mr - Mr.transpose()).norm() <= 1e-14 * Mr.norm());
      CHECK(Eigen::SelfAdjointEigenSolver<MatrixXd>(Mr).eigenvalues().minCoeff() > 0.);
    }
  }
}

TEST_CASE("hierarchical basis and monomial conversion")
{
  const auto c = cells();
  const Mesh &m = c[2].second;
  const ScalarBasis B = ScalarBasis::element(m, 0, 3);
  SplitMix64 rng(7);
  const VectorXd a = random_vector(rng, dim_p3(2));
  const VectorXd coords = B.from_monomials(a);
  CHECK(coords.size() == dim_p3(2));
  CHECK((B.to_monomials(coords) - a).norm() <= 1e-11 * a.norm());
  const Vector3d x(0.3, 0.6, 0.9);
  CHECK(std::abs(B.values(x).head(dim_p3(2)).dot(coords) - eval_monomial_expansion(B, a, 2, x)) <= 1e-12);
  // derivative matrices against the monomial gradient
  const VectorXd full = B.from_monomials(resize3(a, 3));
  for (int v = 0; v < 3; ++v) {
    const double d = B.values(x).dot(B.derivative(v) * full);
    CHECK(std::abs(d - grad_monomial_expansion(B, a, 2, x)(v)) <= 1e-11);
  }
}

TEST_CASE("projection properties")
{
  SplitMix64 rng(11);
  for (const auto &[name, m] : cells()) {
    CAPTURE(name);
    const ScalarBasis B = ScalarBasis::element(m, 0, 3);
    const QuadRule R = element_rule(m, 0, 10);
    const MatrixXd V = B.values(R);

    // idempotence on the target space
    const VectorXd c = random_vector(rng, B.dim_of(2));
    const VectorXd pc = project(B, 2, R, V.leftCols(B.dim_of(2)) * c);
    CHECK((pc - c).cwiseAbs().maxCoeff() <= 1e-12 * c.cwiseAbs().maxCoeff());

    // x^3 onto P^1: residual orthogonal to P^1
    const Vector3d xc = B.center();
    VectorXd cube(R.size()), smooth(R.size());
    for (std::size_t i = 0; i < R.size(); ++i) {
      const double s = (R.points[i](0) - xc(0)) / B.scale();
      cube(i) = s * s * s;
      smooth(i) = std::exp(R.points[i](0)) * std::sin(2. * R.points[i](1) + R.points[i](2));
    }
    const VectorXd p1 = project(B, 1, R, cube);
    const VectorXd res = cube - V.leftCols(B.dim_of(1)) * p1;
    const VectorXd w = Eigen::Map<const VectorXd>(R.weights.data(), R.size());
    const double scale = std::sqrt(w.dot(cube.cwiseProduct(cube)) * m.element(0).volume);
    for (int j = 0; j < B.dim_of(1); ++j) CHECK(std::abs(w.dot(res.cwiseProduct(V.col(j)))) <= 1e-11 * scale);

    // contraction
    for (int r = 0; r <= 3; ++r) {
      const VectorXd p = project(B, r, R, smooth);
      CHECK(p.norm() <= std::sqrt(w.dot(smooth.cwiseProduct(smooth))) * (1. + 1e-12));
    }

    // vector projection is componentwise
    MatrixXd S(R.size(), 3);
    S << smooth, cube, smooth + cube;
    const VectorXd pv = project_vector(B, 2, R, S);
    const int n = B.dim_of(2);
    CHECK((pv.segment(0, n) - project(B, 2, R, smooth)).norm() <= 1e-13);
    CHECK((pv.segment(2 * n, n) - pv.segment(0, n) - pv.segment(n, n)).norm() <= 1e-12);
  }
}

TEST_CASE("traces: composition against direct face projection")
{
  SplitMix64 rng(13);
  for (const auto &[name, m] : cells()) {
    CAPTURE(name);
    for (int r : {0, 1, 2}) {
      const ScalarBasis B = ScalarBasis::element(m, 0, r);
      const VectorXd s = random_vector(rng, B.dim());
      VectorXd v(3 * B.dim());
      for (auto &x : v) x = rng.uniform(-1., 1.);
      for (std::size_t i = 0; i < m.element(0).faces.size(); ++i) {
        const std::size_t iF = m.element(0).faces[i];
        const Face &F = m.face(iF);
        const ScalarBasis FB = ScalarBasis::face(m, iF, r);
        const QuadRule R = face_rule(m, iF, 2 * r + 2);
        VectorXd vals(R.size());
        MatrixXd tang(R.size(), 2);
        for (std::size_t p = 0; p < R.size(); ++p) {
          const VectorXd phi = B.values(R.points[p]);
          vals(p) = phi.dot(s);
          Vector3d u;
          for (int c = 0; c < 3; ++c) u(c) = phi.dot(v.segment(c * B.dim(), B.dim()));
          tang.row(p) << u.dot(F.t1), u.dot(F.t2);
        }
        const VectorXd direct = project(FB, r, R, vals);
        const VectorXd composed = trace_matrix(B, FB, r) * s;
        CHECK((direct - composed).norm() <= 1e-12 * std::max(1., direct.norm()));
        const VectorXd tdirect = project_vector(FB, r, R, tang);
        const VectorXd tcomposed = tangential_trace_matrix(B, FB, r) * v;
        CHECK((tdirect - tcomposed).norm() <= 1e-12 * std::max(1., tdirect.norm()));
      }
    }
  }
}

TEST_CASE("subspace dimensions")
{
  for (const auto &[name, m] : cells()) {
    CAPTURE(name);
    const ScalarBasis B = ScalarBasis::element(m, 0, 4);
    const ScalarBasis F = ScalarBasis::face(m, 0, 5);
    for (int q = 0; q <= 3; ++q) {
      CAPTURE(q);
      CHECK(subspace_grad_T(B, q).dim() == dim_p3(q + 1) - 1);
      CHECK(subspace_rot_T(B, q).dim() == 3 * dim_p3(q + 1) - (dim_p3(q + 2) - 1));
      // direct sum: grad P^{q+1} + (x - x_T) x R^{q-1} fills (P^q)^3
      CHECK(subspace_grad_T(B, q).dim() + (q > 0 ? subspace_rot_T(B, q - 1).dim() : 0) == 3 * dim_p3(q));
      CHECK(subspace_grad_F(F, q + 1).dim() == (q + 3) * (q + 4) / 2 - 1);
      CHECK(subspace_pflat_F(F, q + 1).dim() == (q + 1) * (q + 2) + (q + 3));
    }
    CHECK(subspace_rot_T(B, 2).dim() == 26);
    CHECK(subspace_rot_T(B, 0).dim() == 3);
    CHECK(subspace_grad_F(F, 1).dim() == 5);
    CHECK(subspace_pflat_F(F, 1).dim() == 5);
    CHECK(subspace_pflat_F(F, 2).dim() == 10);
  }
}

TEST_CASE("gradient face space lies in the flat face space")
{
  for (const auto &[name, m] : cells()) {
    for (int k = 0; k <= 3; ++k) {
      const ScalarBasis F = ScalarBasis::face(m, 0, k + 1);
      const SubspaceBasis G = subspace_grad_F(F, k + 1), P = subspace_pflat_F(F, k + 1);
      const MatrixXd M = vector_mass(F, k + 1, 2);
      for (int j = 0; j < G.dim(); ++j) {
        const VectorXd g = G.columns.col(j);
        const VectorXd back = P.columns * project_subspace(P, F, g);
        CHECK(mnorm(M, back - g) <= 1e-11 * mnorm(M, g));
      }
      // and the flat space is a proper superspace
      CHECK(P.dim() >= G.dim());
    }
  }
}

TEST_CASE("gradient and curl subspaces come from exact derivatives")
{
  const Mesh m = generate_tetrahedral(1);
  const ScalarBasis B = ScalarBasis::element(m, 2, 3);
  const MatrixXd C = curl_matrix(B, 3), G = gradient_matrix(B, 3);
  // curl grad = 0 exactly
  CHECK((C * G).cwiseAbs().maxCoeff() <= 1e-11);
  // image of the curl on (P^{q+1})^3 has the rank of R^q
  for (int q = 0; q <= 2; ++q) {
    const int n = B.dim_of(q + 1);
    MatrixXd Cq(3 * B.dim(), 3 * n);
    for (int c = 0; c < 3; ++c) Cq.middleCols(c * n, n) = C.middleCols(c * B.dim(), n);
    Eigen::JacobiSVD<MatrixXd> svd(Cq);
    const VectorXd s = svd.singularValues();
    int rank = 0;
    for (int i = 0; i < s.size(); ++i) rank += s(i) > 1e-10 * s(0);
    CHECK(rank == dim_rot_element(q));
  }
}

TEST_CASE("polynomial decomposition")
{
  SplitMix64 rng(17);
  const auto c = cells();
  for (const auto &[name, m] : c) {
    CAPTURE(name);
    const double hT = m.element(0).diameter;
    for (int q = 0; q <= 3; ++q) {
      CAPTURE(q);
      const ScalarBasis B = ScalarBasis::element(m, 0, q + 1);
      const int n = B.dim_of(q);

      // constant vector: all gradient
      VectorXd p = VectorXd::Zero(3 * n);
      const Vector3d cst(0.3, -1.2, 0.7);
      for (int i = 0; i < 3; ++i) p(i * n) = cst(i) / B.values(B.center())(0);
      Decomposition D = decompose_polynomial(B, p, q);
      CHECK(D.rot_part.norm() <= 1e-12 * p.norm());
      CHECK((D.grad_part - p).norm() <= 1e-12 * p.norm());

      // gradient of a random scalar of degree q + 1
      const VectorXd a = random_vector(rng, dim_p3(q + 1));
      VectorXd gp(3 * n);
      {
        const QuadRule R = element_rule(m, 0, 2 * q + 2);
        MatrixXd S(R.size(), 3);
        for (std::size_t i = 0; i < R.size(); ++i) S.row(i) = grad_monomial_expansion(B, a, q + 1, R.points[i]);
        gp = project_vector(B, q, R, S);
      }
      D = decompose_polynomial(B, gp, q);
      CHECK(D.rot_part.norm() <= 1e-10 * gp.norm());
      CHECK((D.grad_part - gp).norm() <= 1e-10 * gp.norm());
      // g equals a up to a constant
      VectorXd dg = D.g - a;
      dg(0) = 0.;
      CHECK(dg.norm() <= 1e-10 * a.norm());

      // random p against a least-squares oracle at sample points
      p = random_vector(rng, 3 * n);
      D = decompose_polynomial(B, p, q);
      const int ng = dim_p3(q + 1) - 1, nc = q > 0 ? 3 * dim_p3(q) : 0;
      const QuadRule R = element_rule(m, 0, 2 * q + 2);
      MatrixXd A(3 * R.size(), ng + nc);
      VectorXd rhs(3 * R.size());
      for (std::size_t i = 0; i < R.size(); ++i) {
        const Vector3d xi = B.scaled(R.points[i]);
        const MatrixXd dm = eval_monomial_gradients3(q + 1, xi);
        for (int j = 0; j < ng; ++j) A.block(3 * i, j, 3, 1) = dm.row(j + 1).transpose();
        if (q > 0) {
          const MatrixXd dc = eval_monomial_gradients3(q, xi);
          for (int comp = 0; comp < 3; ++comp)
            for (int j = 0; j < dim_p3(q); ++j) {
              const Vector3d curl = Vector3d(dc.row(j).transpose()).cross(Vector3d::Unit(comp));
              A.block(3 * i, ng + comp * dim_p3(q) + j, 3, 1) = xi.cross(curl);
            }
        }
        const VectorXd phi = B.values(R.points[i]).head(n);
        for (int comp = 0; comp < 3; ++comp) rhs(3 * i + comp) = phi.dot(p.segment(comp * n, n));
      }
      const VectorXd y = A.completeOrthogonalDecomposition().solve(rhs);
      CHECK((A * y - rhs).norm() <= 1e-10 * rhs.norm());
      const VectorXd grad_oracle = A.leftCols(ng) * y.head(ng);
      double err = 0., rot = 0., curl = 0.;
      for (std::size_t i = 0; i < R.size(); ++i) {
        const VectorXd phi = B.values(R.points[i]).head(n);
        const MatrixXd dphi = B.gradients(R.points[i]).topRows(n);
        Vector3d gv, pv, cp = Vector3d::Zero();
        for (int comp = 0; comp < 3; ++comp) {
          gv(comp) = phi.dot(D.grad_part.segment(comp * n, n));
          pv(comp) = phi.dot(p.segment(comp * n, n));
          cp += Vector3d(dphi.transpose() * p.segment(comp * n, n)).cross(Vector3d::Unit(comp));
        }
        err += R.weights[i] * (gv - grad_oracle.segment(3 * i, 3)).squaredNorm();
        rot += R.weights[i] * (pv - gv).squaredNorm();
        curl += R.weights[i] * cp.squaredNorm();
      }
      CHECK(std::sqrt(err) <= 1e-9 * p.norm() * std::sqrt(m.element(0).volume));
      CHECK(std::sqrt(rot) <= 2. * hT * std::sqrt(curl) * (1. + 1e-12));
    }
  }
}

TEST_CASE("decomposition check over random samples")
{
  const CheckResult r = check_decomposition(2, 5, 3);
  CAPTURE(r.detail);
  CHECK(r.passed);
}
