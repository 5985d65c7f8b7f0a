#include <hhomag/verification.hpp>

#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include <hhomag/monomials.hpp>

namespace hhomag
{

namespace
{

std::string format(const char *what, double v)
{
  std::ostringstream s;
  s << what << " " << v;
  return s.str();
}

CheckResult make_result(const std::string &name, double value, double tol, std::string detail = {})
{
  CheckResult r;
  r.name = name;
  r.value = value;
  r.tolerance = tol;
  r.passed = std::isfinite(value) && value <= tol;
  r.detail = std::move(detail);
  return r;
}

double factorial(int n)
{
  double f = 1.;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Mesh single_cell(std::vector<Vector3d> vertices, std::vector<std::vector<std::size_t>> loops)
{
  std::vector<SignedFace> faces;
  for (std::size_t i = 0; i < loops.size(); ++i) faces.emplace_back(i, 1);
  return Mesh(std::move(vertices), std::move(loops), {faces});
}

double mass_norm(const MatrixXd &M, const VectorXd &v) { return std::sqrt(std::max(0., v.dot(M * v))); }

} // namespace

std::vector<std::pair<std::string, Mesh>> sample_cells()
{
  std::vector<std::pair<std::string, Mesh>> cells;
  cells.emplace_back("cube", generate_cubic(1));
  cells.emplace_back("tetrahedron", single_cell({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
                                                {{0, 2, 1}, {0, 1, 3}, {0, 3, 2}, {1, 2, 3}}));
  cells.emplace_back("house", single_cell({{0, 0, 0},
                                           {1, 0, 0},
                                           {1, 1, 0},
                                           {0, 1, 0},
                                           {0, 0, 1},
                                           {1, 0, 1},
                                           {1, 1, 1},
                                           {0, 1, 1},
                                           {0.5, 0.5, 1.5}},
                                          {{0, 3, 2, 1},
                                           {0, 1, 5, 4},
                                           {1, 2, 6, 5},
                                           {2, 3, 7, 6},
                                           {3, 0, 4, 7},
                                           {4, 5, 8},
                                           {5, 6, 8},
                                           {6, 7, 8},
                                           {7, 4, 8}}));
  std::vector<Vector3d> pv;
  for (double z : {0., 0.6})
    for (int i = 0; i < 6; ++i) {
      const double t = 2. * std::numbers::pi * i / 6.;
      pv.emplace_back(0.5 + 0.5 * std::cos(t), 0.5 + 0.5 * std::sin(t), z);
    }
  std::vector<std::vector<std::size_t>> loops{{5, 4, 3, 2, 1, 0}, {6, 7, 8, 9, 10, 11}};
  for (std::size_t i = 0; i < 6; ++i) loops.push_back({i, (i + 1) % 6, 6 + (i + 1) % 6, 6 + i});
  cells.emplace_back("hexagonal prism", single_cell(pv, loops));
  return cells;
}

//------------------------------------------------------------------------------
// Quadrature
//------------------------------------------------------------------------------

VectorXd simplex_moments(const std::vector<VectorXd> &coords, double measure, int q)
{
  const int nv = int(coords.size());
  const int dim = nv - 1;
  using Exponent = std::array<int, 4>;
  using Poly = std::map<Exponent, double>;

  // polynomial in the barycentric coordinates equal to the monomial of exponent alpha
  std::map<std::vector<int>, Poly> cache;
  const std::vector<int> zero(dim, 0);
  cache[zero] = Poly{{Exponent{0, 0, 0, 0}, 1.}};
  std::function<const Poly &(const std::vector<int> &)> expand = [&](const std::vector<int> &alpha) -> const Poly & {
    auto it = cache.find(alpha);
    if (it != cache.end()) return it->second;
    int c = 0;
    while (alpha[c] == 0) ++c;
    std::vector<int> prev = alpha;
    --prev[c];
    const Poly &P = expand(prev);
    Poly R;
    for (const auto &[e, v] : P)
      for (int i = 0; i < nv; ++i) {
        Exponent f = e;
        ++f[i];
        R[f] += v * coords[i](c);
      }
    return cache[alpha] = std::move(R);
  };

  auto integrate = [&](const Poly &P) {
    double s = 0.;
    for (const auto &[e, v] : P) {
      int total = 0;
      double num = 1.;
      for (int i = 0; i < nv; ++i) {
        total += e[i];
        num *= factorial(e[i]);
      }
      s += v * num / factorial(total + dim);
    }
    return s * factorial(dim) * measure;
  };

  VectorXd out;
  if (dim == 3) {
    const auto &pw = powers3(q);
    out.resize(pw.size());
    for (std::size_t j = 0; j < pw.size(); ++j) out(j) = integrate(expand({pw[j][0], pw[j][1], pw[j][2]}));
  } else {
    const auto &pw = powers2(q);
    out.resize(pw.size());
    for (std::size_t j = 0; j < pw.size(); ++j) out(j) = integrate(expand({pw[j][0], pw[j][1]}));
  }
  return out;
}

namespace
{

// relative error of each moment; moments that vanish by symmetry are compared to the measure
double moment_defect(const VectorXd &quad, const VectorXd &exact, double measure)
{
  double worst = 0.;
  for (Eigen::Index j = 0; j < exact.size(); ++j)
    worst = std::max(worst, std::abs(quad(j) - exact(j)) / std::max(std::abs(exact(j)), 1e-3 * std::abs(measure)));
  return worst;
}

VectorXd cell_oracle(const Mesh &mesh, std::size_t iT, int q)
{
  const Element &T = mesh.element(iT);
  const Vector3d apex = mesh.vertex(T.vertices.front());
  auto scaled = [&](const Vector3d &x) -> VectorXd { return (x - T.center) / T.diameter; };
  VectorXd sum = VectorXd::Zero(dim_p3(q));
  for (std::size_t i = 0; i < T.faces.size(); ++i) {
    std::vector<std::size_t> loop = mesh.face(T.faces[i]).vertices;
    if (T.orientations[i] < 0) std::reverse(loop.begin(), loop.end());
    for (std::size_t j = 1; j + 1 < loop.size(); ++j) {
      const Vector3d &a = mesh.vertex(loop[0]), &b = mesh.vertex(loop[j]), &c = mesh.vertex(loop[j + 1]);
      const double vol = (a - apex).dot((b - apex).cross(c - apex)) / 6.;
      if (vol == 0.) continue;
      sum += simplex_moments({scaled(apex), scaled(a), scaled(b), scaled(c)}, vol, q);
    }
  }
  return sum;
}

VectorXd face_oracle(const Mesh &mesh, std::size_t iF, int q)
{
  const Face &F = mesh.face(iF);
  auto local = [&](std::size_t v) -> VectorXd {
    const Vector3d d = mesh.vertex(v) - F.centroid;
    return Vector2d(d.dot(F.t1), d.dot(F.t2)) / F.diameter;
  };
  VectorXd sum = VectorXd::Zero(dim_p2(q));
  for (std::size_t j = 1; j + 1 < F.vertices.size(); ++j) {
    const VectorXd a = local(F.vertices[0]), b = local(F.vertices[j]), c = local(F.vertices[j + 1]);
    const double area = 0.5 * ((b(0) - a(0)) * (c(1) - a(1)) - (b(1) - a(1)) * (c(0) - a(0))) * F.diameter * F.diameter;
    sum += simplex_moments({a, b, c}, area, q);
  }
  return sum;
}

} // namespace

CheckResult check_quadrature(int kmax, double tol)
{
  const int D = 2 * (kmax + 2) + 2;
  double worst = 0.;
  std::string where;
  auto record = [&](double d, const std::string &w) {
    if (d > worst || !std::isfinite(d)) {
      worst = std::isfinite(d) ? d : INFINITY;
      where = w;
    }
  };

  for (int d = 0; d <= D; ++d) {
    const QuadRule tet = reference_tetrahedron_rule(d);
    VectorXd q = VectorXd::Zero(dim_p3(d));
    for (std::size_t p = 0; p < tet.size(); ++p) q += tet.weights[p] * eval_monomials3(d, tet.points[p]);
    const VectorXd e = simplex_moments({Vector3d(0, 0, 0), Vector3d(1, 0, 0), Vector3d(0, 1, 0), Vector3d(0, 0, 1)},
                                       1. / 6., d);
    record(moment_defect(q, e, 1. / 6.), "reference tetrahedron, degree " + std::to_string(d));

    const QuadRule tri = reference_triangle_rule(d);
    VectorXd qt = VectorXd::Zero(dim_p2(d));
    for (std::size_t p = 0; p < tri.size(); ++p) qt += tri.weights[p] * eval_monomials2(d, tri.points[p].head<2>());
    const VectorXd et = simplex_moments({Vector2d(0, 0), Vector2d(1, 0), Vector2d(0, 1)}, 0.5, d);
    record(moment_defect(qt, et, 0.5), "reference triangle, degree " + std::to_string(d));
  }

  std::vector<std::pair<std::string, Mesh>> meshes = sample_cells();
  meshes.emplace_back("tetrahedral mesh", generate_tetrahedral(1));
  for (const auto &[name, mesh] : meshes) {
    for (std::size_t iT = 0; iT < mesh.n_elements(); ++iT) {
      const Element &T = mesh.element(iT);
      const VectorXd exact = cell_oracle(mesh, iT, D);
      for (int d : {D / 2, D}) {
        const QuadRule rule = element_rule(mesh, iT, d);
        VectorXd q = VectorXd::Zero(dim_p3(d));
        for (std::size_t p = 0; p < rule.size(); ++p)
          q += rule.weights[p] * eval_monomials3(d, (rule.points[p] - T.center) / T.diameter);
        record(moment_defect(q, exact.head(q.size()), T.volume), name + ", element " + std::to_string(iT));
      }
    }
    for (std::size_t iF = 0; iF < mesh.n_faces(); ++iF) {
      const Face &F = mesh.face(iF);
      const VectorXd exact = face_oracle(mesh, iF, D);
      const QuadRule rule = face_rule(mesh, iF, D);
      VectorXd q = VectorXd::Zero(dim_p2(D));
      for (std::size_t p = 0; p < rule.size(); ++p) q += rule.weights[p] * eval_monomials2(D, rule.local[p] / F.diameter);
      record(moment_defect(q, exact, F.area), name + ", face " + std::to_string(iF));
    }
  }
  return make_result("quadrature oracles", worst, tol, "worst: " + where);
}

//------------------------------------------------------------------------------
// Spaces
//------------------------------------------------------------------------------

CheckResult check_dimensions(int kmax, double tol)
{
  std::ostringstream bad;
  double worst = 0.;
  auto expect = [&](int got, int want, const std::string &what) {
    if (got != want) bad << what << ": " << got << " != " << want << "; ";
  };
  for (const auto &[name, mesh] : sample_cells()) {
    // the documented instance
    const ScalarBasis B3 = ScalarBasis::element(mesh, 0, 3);
    expect(subspace_rot_T(B3, 2).dim(), 26, name + " rot degree 2");
    expect(3 * B3.dim_of(2), 30, name + " (P^2)^3");
    for (int k = 0; k <= kmax; ++k) {
      const ScalarBasis B = ScalarBasis::element(mesh, 0, k + 2);
      expect(subspace_rot_T(B, k).dim(), dim_rot_element(k), name + " rot k=" + std::to_string(k));
      expect(subspace_grad_T(B, k + 1).dim(), dim_p3(k + 2) - 1, name + " grad k=" + std::to_string(k));
      for (std::size_t iF = 0; iF < mesh.n_faces(); ++iF) {
        const ScalarBasis FB = ScalarBasis::face(mesh, iF, k + 1);
        const SubspaceBasis G = subspace_grad_F(FB, k + 1);
        const SubspaceBasis P = subspace_pflat_F(FB, k + 1);
        expect(G.dim(), (k + 3) * (k + 4) / 2 - 1, name + " face grad k=" + std::to_string(k));
        expect(P.dim(), (k + 1) * (k + 2) + (k + 3), name + " face flat k=" + std::to_string(k));
        const MatrixXd M = vector_mass(FB, k + 1, 2);
        for (int j = 0; j < G.dim(); ++j) {
          const VectorXd g = G.columns.col(j);
          const VectorXd r = g - P.columns * project_subspace(P, FB, g);
          worst = std::max(worst, mass_norm(M, r) / mass_norm(M, g));
        }
      }
    }
  }
  CheckResult r = make_result("dimensions and face space inclusion", worst, tol, bad.str());
  if (!bad.str().empty()) r.passed = false;
  return r;
}

CheckResult check_commutation(int kmax, int samples, std::uint64_t seed, double tol)
{
  SplitMix64 rng(seed);
  double worst = 0.;
  std::string where;
  for (const auto &[name, mesh] : sample_cells()) {
    for (int k = 0; k <= kmax; ++k) {
      const int deg = 2 * k + 6;
      const DofLayout LY{Formulation::field, k};
      const DofLayout LX{Formulation::potential, k};
      const LocalOperatorSet ops = build_local_operators(mesh, 0, LY);
      LocalOptions full;
      full.curl_full_space = true;
      const LocalOperatorSet ops_r = build_local_operators(mesh, 0, LX);
      const LocalOperatorSet ops_p = build_local_operators(mesh, 0, LX, full);
      const ScalarBasis &B = ops.basis;
      const QuadRule rule = element_rule(mesh, 0, deg);
      const MatrixXd &M = ops.vector_mass;

      for (int s = 0; s < samples; ++s) {
        // gradient: q in P^{k+2}
        VectorXd a(dim_p3(k + 2));
        for (auto &x : a) x = rng.uniform(-1., 1.);
        const ScalarField q = [&](const Vector3d &x) { return eval_monomial_expansion(B, a, k + 2, x); };
        const VectorXd Iq = interpolate_Y(mesh, LY, q, deg).local(mesh, 0);
        MatrixXd gs(rule.size(), 3);
        for (std::size_t p = 0; p < rule.size(); ++p)
          gs.row(p) = grad_monomial_expansion(B, a, k + 2, rule.points[p]).transpose();
        const VectorXd gref = project_vector(B, k + 1, rule, gs);
        const double eg = mass_norm(M, ops.grad * Iq - gref) / mass_norm(M, gref);
        if (eg > worst) {
          worst = eg;
          where = name + ", gradient, k=" + std::to_string(k);
        }

        // curl: v in (P^{k+1})^3
        std::array<VectorXd, 3> c;
        for (auto &cc : c) {
          cc.resize(dim_p3(k + 1));
          for (auto &x : cc) x = rng.uniform(-1., 1.);
        }
        const VectorField v = [&](const Vector3d &x) {
          return Vector3d(eval_monomial_expansion(B, c[0], k + 1, x), eval_monomial_expansion(B, c[1], k + 1, x),
                          eval_monomial_expansion(B, c[2], k + 1, x));
        };
        MatrixXd cs(rule.size(), 3);
        for (std::size_t p = 0; p < rule.size(); ++p) {
          Eigen::Matrix3d J;
          for (int i = 0; i < 3; ++i) J.row(i) = grad_monomial_expansion(B, c[i], k + 1, rule.points[p]).transpose();
          cs.row(p) << J(2, 1) - J(1, 2), J(0, 2) - J(2, 0), J(1, 0) - J(0, 1);
        }
        const VectorXd cref = project_vector(B, k + 1, rule, cs);
        for (const LocalOperatorSet *o : {&ops_r, &ops_p}) {
          const VectorXd Iv = interpolate_X(mesh, LX, v, deg, o == &ops_p ? full : LocalOptions{}).local(mesh, 0);
          const double ec = mass_norm(M, o->curl_space * (o->curl * Iv) - cref) / mass_norm(M, cref);
          if (ec > worst) {
            worst = ec;
            where = name + ", curl" + (o == &ops_p ? " (full space)" : "") + ", k=" + std::to_string(k);
          }
        }
      }
    }
  }
  return make_result("commutation of gradient and curl reconstructions", worst, tol, "worst: " + where);
}

CheckResult check_decomposition(int qmax, int samples, std::uint64_t seed, double tol)
{
  SplitMix64 rng(seed);
  double worst = 0., worst_ratio = 0.;
  std::string where;
  for (const auto &[name, mesh] : sample_cells()) {
    const Element &T = mesh.element(0);
    for (int q = 0; q <= qmax; ++q) {
      const ScalarBasis B = ScalarBasis::element(mesh, 0, q + 1);
      const QuadRule rule = element_rule(mesh, 0, 2 * q + 2);
      const int n = B.dim_of(q);
      for (int s = 0; s < samples; ++s) {
        VectorXd p(3 * n);
        for (auto &x : p) x = rng.uniform(-1., 1.);
        const Decomposition D = decompose_polynomial(B, p, q);
        double res = 0., nrm = 0., rot = 0., curl = 0.;
        for (std::size_t i = 0; i < rule.size(); ++i) {
          const Vector3d &x = rule.points[i];
          const VectorXd phi = B.values(x).head(n);
          const MatrixXd dphi = B.gradients(x).topRows(n);
          Vector3d pv, cp = Vector3d::Zero(), cc = Vector3d::Zero();
          for (int c = 0; c < 3; ++c) {
            pv(c) = phi.dot(p.segment(c * n, n));
            const Vector3d gp = dphi.transpose() * p.segment(c * n, n);
            cp += gp.cross(Vector3d::Unit(c));
            if (q > 0) cc += grad_monomial_expansion(B, D.c[c], q, x).cross(Vector3d::Unit(c));
          }
          const Vector3d gg = grad_monomial_expansion(B, D.g, q + 1, x);
          const Vector3d r = pv - gg - (x - B.center()).cross(cc);
          const double w = rule.weights[i];
          res += w * r.squaredNorm();
          nrm += w * pv.squaredNorm();
          rot += w * (pv - gg).squaredNorm();
          curl += w * cp.squaredNorm();
        }
        const double e = std::sqrt(res / nrm);
        if (e > worst) {
          worst = e;
          where = name + ", q=" + std::to_string(q);
        }
        const double bound = 2. * T.diameter * std::sqrt(curl);
        const double excess = std::sqrt(rot) - bound;
        if (excess > tol * std::sqrt(nrm)) worst_ratio = std::max(worst_ratio, std::sqrt(rot) / bound);
      }
    }
  }
  std::string detail = "worst reassembly: " + where;
  if (worst_ratio > 0.) detail += format("; bound violated, ratio", worst_ratio);
  CheckResult r = make_result("polynomial decomposition", worst, tol, detail);
  if (worst_ratio > 0.) r.passed = false;
  return r;
}

//------------------------------------------------------------------------------
// Mesh and scheme
//------------------------------------------------------------------------------

CheckResult check_closure(const Mesh &mesh, double tol)
{
  const DofLayout L{Formulation::field, 0};
  double worst = 0.;
  std::size_t where = 0;
  for (std::size_t iT = 0; iT < mesh.n_elements(); ++iT) {
    const Element &T = mesh.element(iT);
    Vector3d s = Vector3d::Zero();
    double area = 0.;
    for (std::size_t i = 0; i < T.faces.size(); ++i) {
      s += mesh.face(T.faces[i]).area * mesh.outward_normal(iT, i);
      area += mesh.face(T.faces[i]).area;
    }
    double d = s.norm() / area;
    try {
      const LocalOperatorSet ops = build_local_operators(mesh, iT, L);
      // constant 1: the first basis function of each hierarchical basis is constant
      VectorXd one = VectorXd::Zero(ops.ny());
      one(0) = 1. / ops.basis.values(T.center)(0);
      for (std::size_t i = 0; i < T.faces.size(); ++i)
        one(L.y_element() + int(i) * L.y_face()) =
            1. / ops.faces[i].basis.values(mesh.face(T.faces[i]).centroid)(0);
      const VectorXd g = ops.grad * one;
      d = std::max(d, T.diameter * mass_norm(ops.vector_mass, g) / std::sqrt(T.volume));
    } catch (const GeometryError &) {
      // a wrongly oriented face can fold the sub-tetrahedra of the element
      d = std::numeric_limits<double>::infinity();
    }
    if (d > worst) {
      worst = d;
      where = iT;
    }
  }
  return make_result("divergence closure", worst, tol, "worst element " + std::to_string(where));
}

CheckResult check_coercivity(const Mesh &mesh, int k, int nprobes, std::uint64_t seed, double tol)
{
  AssemblyOptions ao;
  ao.stabilization = Stabilization::ch;
  const AssembledSystem sys(mesh, k, Formulation::field, ao);
  const DofLayout &L = sys.layout();
  const DiscreteNorms N{sys};
  SplitMix64 rng(seed);
  double worst = 0.;
  for (int it = 0; it < nprobes; ++it) {
    HybridVector zx = HybridVector::zeros(mesh, L.x_element(), L.x_face());
    HybridVector zy = HybridVector::zeros(mesh, L.y_element(), L.y_face());
    for (auto *z : {&zx, &zy}) {
      for (auto &b : z->elements)
        for (auto &x : b) x = rng.uniform(-1., 1.);
      for (std::size_t f = 0; f < z->faces.size(); ++f)
        for (auto &x : z->faces[f]) x = z->boundary[f] ? 0. : rng.uniform(-1., 1.);
    }
    double A = 0.;
    for (std::size_t iT = 0; iT < mesh.n_elements(); ++iT) {
      VectorXd z(sys.operators()[iT].nx() + sys.operators()[iT].ny());
      z << zx.local(mesh, iT), zy.local(mesh, iT);
      A += z.dot(sys.local_matrix(iT) * z);
    }
    const double x = N.x_norm(zx), y = N.y_c(zy);
    const double Z = x * x + y * y;
    worst = std::max(worst, std::abs(A - Z) / Z);
  }
  return make_result("coercivity identity, k=" + std::to_string(k), worst, tol);
}

CheckResult check_a_priori_bound(const Mesh &mesh, int k)
{
  ManufacturedCase mc = field_cos_case();
  mc.boundary = BoundaryMode::homogeneous;
  RunOptions opts;
  const ErrorReport r = run_case(mesh, k, mc, opts);
  return make_result("a priori bound, k=" + std::to_string(k), r.solution_z_norm / r.source_norm, 1. + 1e-12,
                     format("|(u_h, p_h)|_Z =", r.solution_z_norm) + format(", |f| =", r.source_norm));
}

CheckResult check_condensation(const Mesh &mesh, int k, Formulation formulation, double tol)
{
  const ManufacturedCase mc = formulation == Formulation::field ? field_cos_case() : potential_sin_case();
  RunOptions opts;
  opts.assembly.stabilization = default_stabilization(formulation);
  const AssembledSystem::Result a = solve_case(mesh, k, mc, opts).solution;
  opts.assembly.condense = false;
  const AssembledSystem::Result b = solve_case(mesh, k, mc, opts).solution;
  const double du = (a.u - b.u).coefficient_norm(), dp = (a.p - b.p).coefficient_norm();
  const double nu = a.u.coefficient_norm(), np = a.p.coefficient_norm();
  const double rel = std::sqrt(du * du + dp * dp) / std::sqrt(nu * nu + np * np);
  return make_result(std::string("condensation equivalence, ") + to_string(formulation) + ", k=" + std::to_string(k),
                     rel, tol);
}

CheckResult check_structure(int n, int k, int quad_elevation, double tol)
{
  const Mesh mesh = generate_tetrahedral(n);
  const ManufacturedCase mc = potential_gradient_case();
  RunOptions opts;
  opts.assembly.stabilization = Stabilization::none;
  opts.quad_elevation = quad_elevation;
  const CaseSolution run = solve_case(mesh, k, mc, opts);
  const ErrorReport &r = run.report;
  const AssembledSystem::Result &sol = run.solution;
  const DofLayout L{Formulation::potential, k};
  const HybridVector Ip = interpolate_Y(mesh, L, mc.p, default_rhs_degree(k) + quad_elevation);
  const double u_rel = sol.u.coefficient_norm() / Ip.coefficient_norm();
  const double p_rel = r.grad_measure_error / r.grad_measure_norm;
  return make_result("structure preservation, k=" + std::to_string(k), std::max(u_rel, p_rel), tol,
                     format("|u_h| / |I_Y psi| =", u_rel) + format(", gradient measure of p_h - I_Y psi =", p_rel));
}

std::vector<CheckResult> run_self_checks(std::uint64_t seed)
{
  std::vector<CheckResult> out;
  out.push_back(check_quadrature(3));
  out.push_back(check_dimensions(3));
  out.push_back(check_commutation(3, 2, seed));
  out.push_back(check_decomposition(3, 10, seed));
  for (const Mesh &m : {generate_cubic(2), generate_tetrahedral(2)}) out.push_back(check_closure(m));
  for (const auto &cell : sample_cells()) out.push_back(check_closure(cell.second));
  out.push_back(check_coercivity(generate_cubic(2), 1, 3, seed));
  out.push_back(check_coercivity(generate_tetrahedral(2), 0, 3, seed));
  out.push_back(check_a_priori_bound(generate_cubic(2), 1));
  for (int k : {0, 1})
    for (Formulation f : {Formulation::field, Formulation::potential})
      out.push_back(check_condensation(generate_cubic(2), k, f));
  out.push_back(check_structure(2, 0, 16));
  return out;
}

} // namespace hhomag
