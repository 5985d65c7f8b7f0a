#ifndef HHOMAG_SCHEMES_HPP
#define HHOMAG_SCHEMES_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>

#include <hhomag/assembly.hpp>

namespace hhomag
{

/// Seed of the randomized probes unless overridden
constexpr std::uint64_t default_seed = 20211022;

enum class BoundaryMode
{
  homogeneous,
  from_exact
};

/// Exact solution and data of a test problem
struct ManufacturedCase
{
  std::string name;
  Formulation formulation = Formulation::field;
  VectorField u, curl_u, curl_curl_u;
  ScalarField div_u;
  ScalarField p;
  VectorField grad_p;
  VectorField f;
  BoundaryMode boundary = BoundaryMode::from_exact;
};

/// u = (cos(pi y) cos(pi z), cos(pi x) cos(pi z), cos(pi x) cos(pi y)), p = 0, f = curl u
ManufacturedCase field_cos_case();
/// u = (sin(pi y) sin(pi z), sin(pi x) sin(pi z), sin(pi x) sin(pi y)), p = sin(pi x) sin(pi y) sin(pi z),
/// f = curl curl u + grad p
ManufacturedCase potential_sin_case();
/// u = 0, p = psi = sin(pi x) sin(pi y) sin(pi z), f = grad psi
ManufacturedCase potential_gradient_case();
/// Divergence-free polynomial field reproduced exactly at degree k, p = 0
ManufacturedCase field_polynomial_case(int k);

struct RunOptions
{
  AssemblyOptions assembly;
  int quad_elevation = 0; ///< added to the default load and norm quadrature degree
};

/// Default stabilization of a formulation (ch for the field, dh for the potential)
Stabilization default_stabilization(Formulation f);

struct ErrorReport
{
  Formulation formulation = Formulation::field;
  Stabilization stabilization = Stabilization::ch;
  double meshsize = 0.;
  std::size_t n_dofs = 0;
  double solve_time = 0.;
  double residual = 0.;

  double energy_error = 0., energy_norm = 0.;       ///< |u_h - I_X u| and |I_X u| in the X norm
  double l2_error = 0., l2_norm = 0.;               ///< broken L2 on elements, vs pi^{k+1} u
  double lagrange_error = 0., lagrange_norm = 0.;   ///< Y norm (field) or flat Y norm (potential)
  double grad_measure_error = 0., grad_measure_norm = 0.; ///< (sum h_T^2 |G_T(.)|^2)^{1/2}
  double solution_z_norm = 0.;  ///< (|u_h|_X^2 + |p_h|_Y^2)^{1/2}
  double source_norm = 0.;      ///< |f| on the domain
  double two_way_defect = 0.;   ///< max relative gap between matrix and quadrature norm evaluations

  double rel_energy() const { return energy_error / energy_norm; }
  double rel_l2() const { return l2_error / l2_norm; }
  /// Multiplier error used in reports, absolute: Y norm (field), flat Y norm (potential),
  /// or the gradient measure when the potential scheme has no multiplier penalty.
  /// The reference norms of I_Y p shrink like h, so relative values lose one order.
  double lagrange_reported() const;
};

/// Assembled system, discrete solution and error report of one run
struct CaseSolution
{
  AssembledSystem system;
  AssembledSystem::Result solution;
  ErrorReport report;
};

/// Assembles, solves and measures the errors of one case on one mesh
CaseSolution solve_case(const Mesh &mesh, int k, const ManufacturedCase &mc, const RunOptions &opts);
/// Same, keeping the report only
ErrorReport run_case(const Mesh &mesh, int k, const ManufacturedCase &mc, const RunOptions &opts);

/// Norms of hybrid vectors through the local operators
struct DiscreteNorms
{
  const AssembledSystem &system;
  double x_norm(const HybridVector &v) const;    ///< (|curl_h v_T|^2 + s_h(v, v))^{1/2}
  double x_energy(const HybridVector &v) const;  ///< a_h(v, v)^{1/2}
  double l2(const HybridVector &v) const;        ///< |v_T| on the domain
  double y_c(const HybridVector &q) const;       ///< c_h(q, q)^{1/2}
  double y_flat(const HybridVector &q) const;    ///< (sum h_T^2 |grad q_T|^2 + d_h(q, q))^{1/2}
  double grad_measure(const HybridVector &q) const;
  /// Quadratic form of the multiplier penalty of the assembled scheme, square-rooted
  double y_stab(const HybridVector &q) const;
};

/// Experimental order of convergence
double eoc(double e1, double e2, double h1, double h2);

/// Weber probe result
struct WeberProbe
{
  bool degenerate = false;  ///< no interior faces: the constrained space is trivial
  double ratio = 0.;        ///< max over probes
  std::vector<double> ratios;
};

/// Max over discrete solutions of the field scheme (zero boundary data, random smooth sources)
/// of |v_T| / (|v|_X^2 + c_h(r, r))^{1/2}
WeberProbe estimate_weber_ratio(const Mesh &mesh, int k, int nprobes = 6, std::uint64_t seed = default_seed,
                                int threads = 1);

/// Random smooth vector field drawn from a seeded generator
VectorField random_smooth_field(std::uint64_t seed);

/// Consistency probe: max over random zero-boundary test vectors z of |l_h(z)| / |z|_Z,
/// where l_h(z) is the load minus A_h(interpolant of the exact solution, z)
double consistency_probe(const Mesh &mesh, int k, const ManufacturedCase &mc, const RunOptions &opts, int nprobes,
                         std::uint64_t seed);

/// Element unknowns of a solution as scaled-monomial expansions.
/// On element T, u_c(x) = sum_j u[c](j) m_j((x - center) / scale) and p(x) = sum_j p(j) m_j(...),
/// with m_j the monomials of degree <= k + 1 (resp. k) in graded lexicographic order.
struct ElementPolynomials
{
  Vector3d center = Vector3d::Zero();
  double scale = 1.;
  std::array<VectorXd, 3> u;
  VectorXd p;
};

struct SolutionDump
{
  Formulation formulation = Formulation::field;
  int k = 0;
  std::vector<ElementPolynomials> elements;

  Vector3d u(std::size_t iT, const Vector3d &x) const;
  double p(std::size_t iT, const Vector3d &x) const;
};

SolutionDump make_solution_dump(const AssembledSystem &system, const AssembledSystem::Result &solution);

/// Text layout:
///   hhomag-solution v1
///   formulation <field|potential> k <k> elements <N>
///   then per element:
///   element <i> center <x> <y> <z> scale <h>
///   u1 <dim_p3(k+1) coefficients>
///   u2 ...
///   u3 ...
///   p <dim_p3(k) coefficients>
void write_solution(std::ostream &out, const SolutionDump &dump);
SolutionDump read_solution(std::istream &in);

} // namespace hhomag

#endif
