#include <hhomag/monomials.hpp>

#include <map>
#include <mutex>
#include <thread>
#include <atomic>

namespace hhomag
{

namespace
{
std::mutex powers_mutex;
}

const std::vector<std::array<int, 3>> &powers3(int q)
{
  static std::map<int, std::vector<std::array<int, 3>>> cache;
  std::lock_guard<std::mutex> lock(powers_mutex);
  auto it = cache.find(q);
  if (it != cache.end()) return it->second;
  std::vector<std::array<int, 3>> p;
  for (int d = 0; d <= q; ++d)
    for (int a = d; a >= 0; --a)
      for (int b = d - a; b >= 0; --b) p.push_back({a, b, d - a - b});
  return cache.emplace(q, std::move(p)).first->second;
}

const std::vector<std::array<int, 2>> &powers2(int q)
{
  static std::map<int, std::vector<std::array<int, 2>>> cache;
  std::lock_guard<std::mutex> lock(powers_mutex);
  auto it = cache.find(q);
  if (it != cache.end()) return it->second;
  std::vector<std::array<int, 2>> p;
  for (int d = 0; d <= q; ++d)
    for (int a = d; a >= 0; --a) p.push_back({a, d - a});
  return cache.emplace(q, std::move(p)).first->second;
}

namespace
{
// ipow[v][e] = xi_v^e
template <int D>
std::array<std::vector<double>, D> power_table(int q, const Eigen::Matrix<double, D, 1> &xi)
{
  std::array<std::vector<double>, D> t;
  for (int v = 0; v < D; ++v) {
    t[v].resize(q + 1);
    t[v][0] = 1.;
    for (int e = 1; e <= q; ++e) t[v][e] = t[v][e - 1] * xi(v);
  }
  return t;
}
} // namespace

VectorXd eval_monomials3(int q, const Vector3d &xi)
{
  const auto &P = powers3(q);
  const auto t = power_table<3>(q, xi);
  VectorXd out(P.size());
  for (std::size_t i = 0; i < P.size(); ++i) out(i) = t[0][P[i][0]] * t[1][P[i][1]] * t[2][P[i][2]];
  return out;
}

VectorXd eval_monomials2(int q, const Vector2d &xi)
{
  const auto &P = powers2(q);
  const auto t = power_table<2>(q, xi);
  VectorXd out(P.size());
  for (std::size_t i = 0; i < P.size(); ++i) out(i) = t[0][P[i][0]] * t[1][P[i][1]];
  return out;
}

MatrixXd eval_monomial_gradients3(int q, const Vector3d &xi)
{
  const auto &P = powers3(q);
  const auto t = power_table<3>(q, xi);
  MatrixXd out = MatrixXd::Zero(P.size(), 3);
  for (std::size_t i = 0; i < P.size(); ++i) {
    const auto &e = P[i];
    if (e[0] > 0) out(i, 0) = e[0] * t[0][e[0] - 1] * t[1][e[1]] * t[2][e[2]];
    if (e[1] > 0) out(i, 1) = e[1] * t[0][e[0]] * t[1][e[1] - 1] * t[2][e[2]];
    if (e[2] > 0) out(i, 2) = e[2] * t[0][e[0]] * t[1][e[1]] * t[2][e[2] - 1];
  }
  return out;
}

MatrixXd eval_monomial_gradients2(int q, const Vector2d &xi)
{
  const auto &P = powers2(q);
  const auto t = power_table<2>(q, xi);
  MatrixXd out = MatrixXd::Zero(P.size(), 2);
  for (std::size_t i = 0; i < P.size(); ++i) {
    const auto &e = P[i];
    if (e[0] > 0) out(i, 0) = e[0] * t[0][e[0] - 1] * t[1][e[1]];
    if (e[1] > 0) out(i, 1) = e[1] * t[0][e[0]] * t[1][e[1] - 1];
  }
  return out;
}

VectorXd diff3(const VectorXd &a, int q, int var)
{
  const auto &P = powers3(q);
  VectorXd out = VectorXd::Zero(dim_p3(q - 1));
  for (std::size_t i = 0; i < P.size(); ++i) {
    auto e = P[i];
    if (e[var] == 0 || a(i) == 0.) continue;
    const double c = e[var] * a(i);
    --e[var];
    out(index3(e[0], e[1], e[2])) += c;
  }
  return out;
}

VectorXd diff2(const VectorXd &a, int q, int var)
{
  const auto &P = powers2(q);
  VectorXd out = VectorXd::Zero(dim_p2(q - 1));
  for (std::size_t i = 0; i < P.size(); ++i) {
    auto e = P[i];
    if (e[var] == 0 || a(i) == 0.) continue;
    const double c = e[var] * a(i);
    --e[var];
    out(index2(e[0], e[1])) += c;
  }
  return out;
}

VectorXd mulvar3(const VectorXd &a, int q, int var)
{
  const auto &P = powers3(q);
  VectorXd out = VectorXd::Zero(dim_p3(q + 1));
  for (std::size_t i = 0; i < P.size(); ++i) {
    auto e = P[i];
    ++e[var];
    out(index3(e[0], e[1], e[2])) += a(i);
  }
  return out;
}

VectorXd resize3(const VectorXd &a, int r)
{
  VectorXd out = VectorXd::Zero(dim_p3(r));
  const Eigen::Index n = std::min<Eigen::Index>(a.size(), out.size());
  out.head(n) = a.head(n);
  return out;
}

VectorXd resize2(const VectorXd &a, int r)
{
  VectorXd out = VectorXd::Zero(dim_p2(r));
  const Eigen::Index n = std::min<Eigen::Index>(a.size(), out.size());
  out.head(n) = a.head(n);
  return out;
}

void parallel_for(std::size_t n, int nthreads, const std::function<void(std::size_t)> &body)
{
  const std::size_t nt = std::min<std::size_t>(std::max(1, nthreads), std::max<std::size_t>(n, 1));
  if (nt <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> workers;
  for (std::size_t t = 0; t < nt; ++t)
    workers.emplace_back([&] {
      for (;;) {
        const std::size_t i = next++;
        if (i >= n) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          next = n;
        }
      }
    });
  for (auto &w : workers) w.join();
  if (error) std::rethrow_exception(error);
}

} // namespace hhomag
