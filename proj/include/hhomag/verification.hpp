#ifndef HHOMAG_VERIFICATION_HPP
#define HHOMAG_VERIFICATION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <hhomag/schemes.hpp>

namespace hhomag
{

/// Outcome of one property check: the measured quantity against its tolerance
struct CheckResult
{
  std::string name;
  bool passed = false;
  double value = 0.;
  double tolerance = 0.;
  std::string detail;
};

/// Single-cell meshes used by the local checks: a cube, a tetrahedron, a pyramid-roofed cube
/// and a hexagonal prism
std::vector<std::pair<std::string, Mesh>> sample_cells();

/// Exact integrals over a simplex (3 or 4 vertices) of all monomials of degree <= q in the coordinates
/// coords[i] of its vertices (graded-lex order), by expansion in barycentric coordinates.
/// `measure` is the signed area or volume.
VectorXd simplex_moments(const std::vector<VectorXd> &coords, double measure, int q);

/// Monomial integrals of degree <= 2(k + 2) + 2 on cells and faces against closed-form simplex oracles
CheckResult check_quadrature(int kmax, double tol = 1e-12);

/// Dimensions of the constrained spaces and inclusion of the face spaces of both formulations
CheckResult check_dimensions(int kmax, double tol = 1e-11);

/// G_T(I_Y q) = grad q on P^{k+2}(T) and C_T(I_X v) = curl v on (P^{k+1}(T))^3, random samples
CheckResult check_commutation(int kmax, int samples, std::uint64_t seed, double tol = 1e-10);

/// p = grad g + (x - x_T) x curl c with |p - grad g| <= 2 h_T |curl p|, random samples per cell and degree
CheckResult check_decomposition(int qmax, int samples, std::uint64_t seed, double tol = 1e-10);

/// Per element: sum_F |F| n_TF = 0 and G_T(I_Y 1) = 0
CheckResult check_closure(const Mesh &mesh, double tol = 1e-10);

/// Field scheme: A_h(z, z) = |z|_Z^2 for random zero-boundary vectors
CheckResult check_coercivity(const Mesh &mesh, int k, int nprobes, std::uint64_t seed, double tol = 1e-12);

/// Field scheme, cos case with homogeneous data: |(u_h, p_h)|_Z <= |f|
CheckResult check_a_priori_bound(const Mesh &mesh, int k);

/// Condensed and uncondensed solves agree
CheckResult check_condensation(const Mesh &mesh, int k, Formulation formulation, double tol = 1e-9);

/// Potential scheme without multiplier penalty on a matching tetrahedral mesh, f = grad psi:
/// u_h vanishes and p_h = I_Y psi
CheckResult check_structure(int n, int k, int quad_elevation, double tol = 1e-8);

/// Fast version of all checks, as run by the `verify` command
std::vector<CheckResult> run_self_checks(std::uint64_t seed = default_seed);

} // namespace hhomag

#endif
