#include <doctest.h>

#include <cmath>

#include <hhomag/localops.hpp>
#include <hhomag/monomials.hpp>
#include <hhomag/schemes.hpp>
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

std::vector<std::pair<std::string, Mesh>> cells()
{
  auto c = sample_cells();
  c.emplace_back("kuhn tetrahedron", generate_tetrahedral(1));
  return c;
}

Vector3d eval_vector(const ScalarBasis &B, const VectorXd &coef, const Vector3d &x)
{
  const VectorXd phi = B.values(x);
  const int n = int(coef.size()) / 3;
  return Vector3d(phi.head(n).dot(coef.segment(0, n)), phi.head(n).dot(coef.segment(n, n)),
                  phi.head(n).dot(coef.segment(2 * n, n)));
}

Vector2d eval_face_vector(const FaceSpaces &fs, const VectorXd &block, const Vector3d &x)
{
  const VectorXd amb = fs.xspace.columns * block;
  const VectorXd phi = fs.basis.values(x);
  const int n = fs.basis.dim();
  return Vector2d(phi.dot(amb.head(n)), phi.dot(amb.tail(n)));
}

bool symmetric_psd(const MatrixXd &A, double tol)
{
  if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-13 * std::max(1., A.cwiseAbs().maxCoeff())) return false;
  return Eigen::SelfAdjointEigenSolver<MatrixXd>(A).eigenvalues().minCoeff() >= -tol * A.norm();
}

// quadratic form at roundoff level relative to |v|^2 |A|
bool negligible(const MatrixXd &A, const VectorXd &v) { return std::abs(v.dot(A * v)) <= 1e-13 * v.squaredNorm() * A.norm(); }

// x -> (x1 + 2 x2 - x3 + 0.5 x1 x3, ...) of degree 2
VectorField quadratic_field()
{
  return [](const Vector3d &x) {
    return Vector3d(0.3 + x(0) + 2. * x(1) - x(2) + 0.5 * x(0) * x(2), -1. + x(1) * x(1) - x(0) * x(2),
                    0.7 + x(0) * x(1) + 0.2 * x(2) * x(2));
  };
}

} // namespace

TEST_CASE("dof layout sizes")
{
  const DofLayout f0{Formulation::field, 0}, p0{Formulation::potential, 0}, p1{Formulation::potential, 1};
  CHECK(f0.x_element() == 12);
  CHECK(f0.x_face() == 5);
  CHECK(f0.y_element() == 1);
  CHECK(f0.y_face() == 3);
  CHECK(p0.x_face() == 5);
  CHECK(p1.x_face() == 10);
  CHECK(f0.x_local(6) == 12 + 6 * 5);
  for (int k = 0; k <= 3; ++k) {
    CHECK(DofLayout{Formulation::field, k}.x_face() == (k + 3) * (k + 4) / 2 - 1);
    CHECK(DofLayout{Formulation::potential, k}.x_face() == (k + 1) * (k + 2) + (k + 3));
  }
}

TEST_CASE("interpolators reproduce constants and polynomials")
{
  const Mesh m = generate_tetrahedral(1);
  const Vector3d c(0.4, -1.1, 2.);
  for (auto form : {Formulation::field, Formulation::potential})
    for (int k = 0; k <= 2; ++k) {
      const DofLayout L{form, k};
      const HybridVector I = interpolate_X(m, L, [&](const Vector3d &) { return c; }, 2 * k + 4);
      for (std::size_t iT = 0; iT < m.n_elements(); ++iT) {
        const LocalOperatorSet ops = build_local_operators(m, iT, L);
        for (const Vector3d &x : {m.element(iT).center, m.vertex(m.element(iT).vertices[0])})
          CHECK((eval_vector(ops.basis, I.elements[iT], x) - c).norm() <= 1e-12);
        for (std::size_t i = 0; i < ops.faces.size(); ++i) {
          const std::size_t iF = m.element(iT).faces[i];
          const Face &F = m.face(iF);
          const Vector2d t = eval_face_vector(ops.faces[i], I.faces[iF], F.centroid);
          CHECK((t - Vector2d(c.dot(F.t1), c.dot(F.t2))).norm() <= 1e-12);
        }
        // reconstructions vanish on constants
        CHECK((ops.curl_element * I.local(m, iT)).norm() <= 1e-12);
        if (form == Formulation::potential) CHECK((ops.curl * I.local(m, iT)).norm() <= 1e-11);
        CHECK(negligible(ops.stab, I.local(m, iT)));
      }

      // globally polynomial field of degree k + 1 (here <= 2)
      if (k >= 1) {
        const VectorField v = quadratic_field();
        const HybridVector Iv = interpolate_X(m, L, v, 2 * k + 4);
        for (std::size_t iT = 0; iT < m.n_elements(); ++iT) {
          const LocalOperatorSet ops = build_local_operators(m, iT, L);
          const Vector3d x = 0.5 * (m.element(iT).center + m.vertex(m.element(iT).vertices[1]));
          CHECK((eval_vector(ops.basis, Iv.elements[iT], x) - v(x)).norm() <= 1e-12);
          const VectorXd loc = Iv.local(m, iT);
          CHECK(negligible(ops.stab, loc));
        }
      }

      const ScalarField q = [](const Vector3d &x) { return 1.5 - x(0) + 2. * x(1) * x(2); };
      const HybridVector Iq = interpolate_Y(m, L, q, 2 * k + 4);
      const HybridVector I1 = interpolate_Y(m, L, [](const Vector3d &) { return 3.; }, 2);
      for (std::size_t iT = 0; iT < m.n_elements(); ++iT) {
        const LocalOperatorSet ops = build_local_operators(m, iT, L);
        const VectorXd one = I1.local(m, iT);
        CHECK((ops.grad * one).norm() <= 1e-12);
        CHECK(negligible(ops.d, one));
        CHECK(std::abs(ops.basis.values(m.element(iT).center).head(L.y_element()).dot(I1.elements[iT]) - 3.) <= 1e-12);
        if (k >= 2) {
          const Vector3d x = m.vertex(m.element(iT).vertices[2]);
          CHECK(std::abs(ops.basis.values(x).head(L.y_element()).dot(Iq.elements[iT]) - q(x)) <= 1e-12);
          // matching traces: d vanishes
          const VectorXd loc = Iq.local(m, iT);
          CHECK(negligible(ops.d, loc));
        }
      }
    }
}

TEST_CASE("gradient reconstruction satisfies its defining identity")
{
  SplitMix64 rng(21);
  for (const auto &[name, m] : cells()) {
    CAPTURE(name);
    for (int k : {0, 2}) {
      const DofLayout L{Formulation::field, k};
      const LocalOperatorSet ops = build_local_operators(m, 0, L);
      const ScalarBasis &B = ops.basis;
      const int N = B.dim(), Nk = B.dim_of(k);
      const VectorXd q = random_vector(rng, ops.ny());
      const VectorXd G = ops.grad * q;
      const QuadRule R = element_rule(m, 0, 2 * k + 2);
      const Element &T = m.element(0);
      for (int comp = 0; comp < 3; ++comp)
        for (int j = 0; j < N; ++j) {
          double lhs = 0., rhs = 0.;
          for (std::size_t p = 0; p < R.size(); ++p) {
            const VectorXd phi = B.values(R.points[p]);
            lhs += R.weights[p] * eval_vector(B, G, R.points[p])(comp) * phi(j);
            rhs -= R.weights[p] * phi.head(Nk).dot(q.head(Nk)) * B.gradients(R.points[p])(j, comp);
          }
          for (std::size_t i = 0; i < T.faces.size(); ++i) {
            const QuadRule RF = face_rule(m, T.faces[i], 2 * k + 2);
            const Vector3d n = m.outward_normal(0, i);
            const VectorXd qF = q.segment(L.y_element() + int(i) * L.y_face(), L.y_face());
            for (std::size_t p = 0; p < RF.size(); ++p)
              rhs += RF.weights[p] * ops.faces[i].basis.values(RF.points[p]).dot(qF) * B.values(RF.points[p])(j) * n(comp);
          }
          CHECK(std::abs(lhs - rhs) <= 1e-11 * std::max(1., q.norm()));
        }
    }
  }
}

TEST_CASE("curl reconstruction satisfies its defining identity")
{
  SplitMix64 rng(23);
  for (const auto &[name, m] : cells()) {
    CAPTURE(name);
    for (int k : {0, 1, 2}) {
      const DofLayout L{Formulation::potential, k};
      const LocalOperatorSet ops = build_local_operators(m, 0, L);
      const ScalarBasis &B = ops.basis;
      const VectorXd v = random_vector(rng, ops.nx());
      const VectorXd Cv = ops.curl_space * (ops.curl * v);
      const VectorXd vT = v.head(L.x_element());
      const QuadRule R = element_rule(m, 0, 2 * k + 2);
      const Element &T = m.element(0);
      const MatrixXd curlM = curl_matrix(B, k + 1);
      for (int j = 0; j < ops.curl_space.cols(); ++j) {
        const VectorXd w = ops.curl_space.col(j);
        const VectorXd cw = curlM * w;
        double lhs = 0., rhs = 0.;
        for (std::size_t p = 0; p < R.size(); ++p) {
          const Vector3d &x = R.points[p];
          lhs += R.weights[p] * eval_vector(B, Cv, x).dot(eval_vector(B, w, x));
          rhs += R.weights[p] * eval_vector(B, vT, x).dot(eval_vector(B, cw, x));
        }
        for (std::size_t i = 0; i < T.faces.size(); ++i) {
          const Face &F = m.face(T.faces[i]);
          const QuadRule RF = face_rule(m, T.faces[i], 2 * k + 2);
          const Vector3d n = m.outward_normal(0, i);
          const VectorXd vF = v.segment(L.x_element() + int(i) * L.x_face(), L.x_face());
          for (std::size_t p = 0; p < RF.size(); ++p) {
            const Vector3d wxn = eval_vector(B, w, RF.points[p]).cross(n);
            rhs += RF.weights[p] * eval_face_vector(ops.faces[i], vF, RF.points[p]).dot(Vector2d(wxn.dot(F.t1), wxn.dot(F.t2)));
          }
        }
        CHECK(std::abs(lhs - rhs) <= 1e-11 * std::max(1., v.norm()));
      }
    }
  }
}

TEST_CASE("commutation check")
{
  const CheckResult r = check_commutation(2, 2, 5);
  CAPTURE(r.detail);
  CHECK(r.passed);
}

TEST_CASE("local forms are symmetric positive semi-definite")
{
  for (const auto &[name, m] : cells()) {
    CAPTURE(name);
    for (auto form : {Formulation::field, Formulation::potential})
      for (int k = 0; k <= 2; ++k) {
        const LocalOperatorSet ops = build_local_operators(m, 0, DofLayout{form, k});
        CHECK(symmetric_psd(ops.stab, 1e-13));
        CHECK(symmetric_psd(ops.d, 1e-13));
        CHECK(symmetric_psd(ops.a, 1e-13));
        CHECK(symmetric_psd(ops.c, 1e-13));
        // c is definite
        const VectorXd ev = Eigen::SelfAdjointEigenSolver<MatrixXd>(ops.c).eigenvalues();
        CHECK(ev.minCoeff() > 1e-8 * ev.maxCoeff());
      }
  }
}

TEST_CASE("field form is the curl seminorm plus stabilization")
{
  SplitMix64 rng(29);
  for (const auto &[name, m] : cells()) {
    for (int k = 0; k <= 2; ++k) {
      const LocalOperatorSet ops = build_local_operators(m, 0, DofLayout{Formulation::field, k});
      const VectorXd v = random_vector(rng, ops.nx());
      const VectorXd cv = ops.curl_element * v;
      // curl of v_T by quadrature
      const QuadRule R = element_rule(m, 0, 2 * k + 2);
      double curl2 = 0.;
      const int N = ops.basis.dim();
      for (std::size_t p = 0; p < R.size(); ++p) {
        const MatrixXd g = ops.basis.gradients(R.points[p]);
        Vector3d c = Vector3d::Zero();
        for (int comp = 0; comp < 3; ++comp)
          c += Vector3d(g.transpose() * v.segment(comp * N, N)).cross(Vector3d::Unit(comp));
        curl2 += R.weights[p] * c.squaredNorm();
      }
      CHECK(std::abs(cv.dot(ops.vector_mass * cv) - curl2) <= 1e-12 * curl2);
      const double a = v.dot(ops.a * v);
      CHECK(std::abs(a - curl2 - v.dot(ops.stab * v)) <= 1e-12 * a);
      // b(w, q) = (w_T, G_T q)
      const VectorXd q = random_vector(rng, ops.ny());
      const VectorXd wT = v.head(DofLayout{Formulation::field, k}.x_element());
      CHECK(std::abs(v.dot(ops.b * q) - wT.dot(ops.vector_mass * (ops.grad * q))) <= 1e-12 * v.norm() * q.norm());
    }
  }
}

TEST_CASE("operators do not depend on the basis normalization")
{
  const auto c = cells();
  LocalOptions raw;
  raw.orthonormal = false;
  const VectorField v = [](const Vector3d &x) {
    return Vector3d(std::sin(x(1) + 0.3), x(0) * std::cos(x(2)), std::exp(0.5 * x(0) - x(1)));
  };
  const ScalarField q = [](const Vector3d &x) { return std::cos(x(0) + 2. * x(1)) * x(2); };
  for (const auto &[name, m] : c) {
    CAPTURE(name);
    for (auto form : {Formulation::field, Formulation::potential})
      for (int k = 0; k <= 2; ++k) {
        const DofLayout L{form, k};
        const LocalOperatorSet o1 = build_local_operators(m, 0, L), o2 = build_local_operators(m, 0, L, raw);
        const VectorXd v1 = interpolate_X(m, L, v, 12).local(m, 0), v2 = interpolate_X(m, L, v, 12, raw).local(m, 0);
        const VectorXd q1 = interpolate_Y(m, L, q, 12).local(m, 0), q2 = interpolate_Y(m, L, q, 12, raw).local(m, 0);
        auto rel = [](double x, double y) { return std::abs(x - y) / std::max({std::abs(x), std::abs(y), 1e-300}); };
        CHECK(rel(v1.dot(o1.a * v1), v2.dot(o2.a * v2)) <= 1e-9);
        // the interpolant nearly annihilates s: compare against the full form
        CHECK(std::abs(v1.dot(o1.stab * v1) - v2.dot(o2.stab * v2)) <= 1e-9 * v1.dot(o1.a * v1));
        CHECK(rel(q1.dot(o1.c * q1), q2.dot(o2.c * q2)) <= 1e-9);
        CHECK(rel(q1.dot(o1.d * q1), q2.dot(o2.d * q2)) <= 1e-9);
        CHECK(rel(v1.dot(o1.b * q1), v2.dot(o2.b * q2)) <= 1e-9);
        // reconstructed gradients agree pointwise
        const Vector3d x = m.element(0).center + 0.1 * Vector3d(1., -1., 0.5);
        const Vector3d g1 = eval_vector(o1.basis, o1.grad * q1, x), g2 = eval_vector(o2.basis, o2.grad * q2, x);
        CHECK((g1 - g2).norm() <= 1e-9 * g1.norm());
      }
  }
}

TEST_CASE("potential energy and flat seminorm stay equivalent under refinement")
{
  SplitMix64 rng(31);
  double lo0 = 0., hi0 = 0.;
  for (int n : {1, 2, 4}) {
    const Mesh m = generate_tetrahedral(n);
    AssemblyOptions ao;
    ao.stabilization = Stabilization::dh;
    const AssembledSystem sys(m, 0, Formulation::potential, ao);
    const DiscreteNorms N{sys};
    const DofLayout &L = sys.layout();
    double lo = 1e300, hi = 0.;
    for (int it = 0; it < 6; ++it) {
      HybridVector z = HybridVector::zeros(m, L.x_element(), L.x_face());
      for (auto &b : z.elements) b = random_vector(rng, int(b.size()));
      for (auto &b : z.faces) b = random_vector(rng, int(b.size()));
      const double r = std::pow(N.x_energy(z) / N.x_norm(z), 2);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    if (n == 1) {
      lo0 = lo;
      hi0 = hi;
    }
    CHECK(lo >= lo0 / 2.);
    CHECK(hi <= 2. * hi0);
  }
}

TEST_CASE("element load of the field formulation tests against the curl")
{
  const Mesh m = generate_cubic(1);
  const DofLayout L{Formulation::field, 1};
  const LocalOperatorSet ops = build_local_operators(m, 0, L);
  const Vector3d f0(1., 2., 3.);
  const VectorXd l = element_load(m, ops, L, [&](const Vector3d &) { return f0; }, 4);
  // (f0, curl w) = sum_F (f0, n x w)_F for constant f0; gradients have zero curl
  const VectorXd g = gradient_matrix(ops.basis, 2).leftCols(ops.basis.dim()) * VectorXd::Unit(ops.basis.dim(), 4);
  const VectorXd gT = g.head(L.x_element());
  CHECK(std::abs(gT.dot(l)) <= 1e-13);
  const DofLayout P{Formulation::potential, 1};
  const LocalOperatorSet pops = build_local_operators(m, 0, P);
  const VectorXd lp = element_load(m, pops, P, [&](const Vector3d &) { return f0; }, 4);
  // constant basis function of component c integrates to |T| / phi_0 = phi_0 with an orthonormal basis
  const double phi0 = pops.basis.values(m.element(0).center)(0);
  for (int comp = 0; comp < 3; ++comp) CHECK(std::abs(lp(comp * pops.basis.dim()) - f0(comp) / phi0) <= 1e-13);
}
