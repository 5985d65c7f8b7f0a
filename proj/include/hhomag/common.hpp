#ifndef HHOMAG_COMMON_HPP
#define HHOMAG_COMMON_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace hhomag
{

using Eigen::MatrixXd;
using Eigen::Vector2d;
using Eigen::Vector3d;
using Eigen::VectorXd;

using ScalarField = std::function<double(const Vector3d &)>;
using VectorField = std::function<Vector3d(const Vector3d &)>;

/// Invalid mesh geometry or topology.
class GeometryError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text; carries the offending line number.
class ParseError : public std::runtime_error
{
public:
  ParseError(const std::string &msg, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), m_line(line) {}
  std::size_t line() const { return m_line; }

private:
  std::size_t m_line;
};

/// Incompatible user options (maps to CLI exit code 2).
class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Singular or ill-conditioned algebra (maps to CLI exit code 1).
class NumericalError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Dimension of P^q in three variables
inline int dim_p3(int q) { return q < 0 ? 0 : (q + 1) * (q + 2) * (q + 3) / 6; }
/// Dimension of P^q in two variables
inline int dim_p2(int q) { return q < 0 ? 0 : (q + 1) * (q + 2) / 2; }

/// Closed-form dimensions of the constrained subspaces
inline int dim_grad_element(int q) { return dim_p3(q + 1) - 1; }
inline int dim_rot_element(int q) { return q < 0 ? 0 : 3 * dim_p3(q + 1) - (dim_p3(q + 2) - 1); }
inline int dim_grad_face(int q) { return dim_p2(q + 1) - 1; }
inline int dim_pflat_face(int q) { return q < 0 ? 0 : 2 * dim_p2(q - 1) + (q + 2); }

/// SplitMix64 generator: small, portable and reproducible across standard libraries
class SplitMix64
{
public:
  explicit SplitMix64(std::uint64_t seed) : m_state(seed) {}
  std::uint64_t next()
  {
    std::uint64_t z = (m_state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  /// Uniform in [0, 1)
  double uniform() { return double(next() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

private:
  std::uint64_t m_state;
};

/// Runs body(i) for i in [0, n) on up to nthreads workers.
/// Each index is processed exactly once; callers write results to per-index slots.
void parallel_for(std::size_t n, int nthreads, const std::function<void(std::size_t)> &body);

} // namespace hhomag

#endif
