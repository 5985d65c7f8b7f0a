#ifndef HHOMAG_MONOMIALS_HPP
#define HHOMAG_MONOMIALS_HPP

#include <array>
#include <vector>

#include <hhomag/common.hpp>

namespace hhomag
{

/// Exponents of the monomials in three variables of degree <= q, graded lexicographic order:
/// by degree, then by decreasing power of x, then of y.
const std::vector<std::array<int, 3>> &powers3(int q);
/// Same in two variables
const std::vector<std::array<int, 2>> &powers2(int q);

/// Position of x^a y^b z^c in the graded order
inline int index3(int a, int b, int c)
{
  const int d = a + b + c;
  return dim_p3(d - 1) + (d - a) * (d - a + 1) / 2 + (d - a - b);
}
inline int index2(int a, int b)
{
  const int d = a + b;
  return dim_p2(d - 1) + (d - a);
}

/// Values of all monomials of degree <= q at the (scaled) point xi
VectorXd eval_monomials3(int q, const Vector3d &xi);
VectorXd eval_monomials2(int q, const Vector2d &xi);
/// Partial derivatives (rows: monomials, columns: variables) at xi
MatrixXd eval_monomial_gradients3(int q, const Vector3d &xi);
MatrixXd eval_monomial_gradients2(int q, const Vector2d &xi);

/// Symbolic operations on coefficient vectors in the monomial basis.
/// Input has dim_p*(q) entries. Differentiation gives degree q-1, multiplication by a variable
/// gives degree q+1.
VectorXd diff3(const VectorXd &a, int q, int var);
VectorXd diff2(const VectorXd &a, int q, int var);
VectorXd mulvar3(const VectorXd &a, int q, int var);
/// Resizes a coefficient vector from degree q to degree r (truncation must drop zeros only)
VectorXd resize3(const VectorXd &a, int r);
VectorXd resize2(const VectorXd &a, int r);

} // namespace hhomag

#endif
