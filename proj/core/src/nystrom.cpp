#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include <boost/multiprecision/float128.hpp>
#include <Eigen/Dense>

#include "grkhs/error.hpp"
#include "grkhs/quadrature.hpp"
#include "quadrature_detail.hpp"

using boost::multiprecision::float128;

namespace Eigen {
template <>
struct NumTraits<float128> : GenericNumTraits<float128> {
  using Real = float128;
  using NonInteger = float128;
  using Literal = float128;
  using Nested = float128;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 8
  };
  static Real epsilon() { return std::numeric_limits<float128>::epsilon(); }
  static Real dummy_precision() { return Real(1e-30); }
  static Real highest() { return (std::numeric_limits<float128>::max)(); }
  static Real lowest() { return std::numeric_limits<float128>::lowest(); }
  static Real infinity() { return std::numeric_limits<float128>::infinity(); }
  static Real quiet_NaN() { return std::numeric_limits<float128>::quiet_NaN(); }
  static int digits10() { return std::numeric_limits<float128>::digits10; }
};
}  // namespace Eigen

namespace grkhs {
namespace {

// Orthonormal Hermite values r_{m-1}(x), r_m(x) up to a common positive factor.
std::pair<float128, float128> hermite_pair(std::size_t m, float128 x) {
  float128 prev = 0;
  float128 cur = 1;
  for (std::size_t n = 0; n < m; ++n) {
    const float128 nd = static_cast<float128>(static_cast<double>(n));
    const float128 next = sqrt(float128(2) / (nd + 1)) * x * cur - sqrt(nd / (nd + 1)) * prev;
    prev = cur;
    cur = next;
    const float128 mag = abs(cur);
    if (mag > float128(1e100)) {
      prev /= mag;
      cur /= mag;
    }
  }
  return {prev, cur};
}

// Gauss-Hermite nodes polished to quad precision by Newton's method on r_m,
// whose derivative is sqrt(2m) r_{m-1}.
std::vector<float128> quad_nodes(std::size_t m) {
  const QuadratureRule seed = gauss_hermite(m);
  std::vector<float128> nodes(m);
  const float128 slope = sqrt(float128(2 * static_cast<double>(m)));
  for (std::size_t a = 0; a < m; ++a) {
    float128 x = seed.nodes[a];
    if (x != 0) {
      for (int it = 0; it < 4; ++it) {
        auto [rm1, rm] = hermite_pair(m, x);
        x -= rm / (slope * rm1);
      }
    }
    nodes[a] = x;
  }
  for (std::size_t a = 0; a < m / 2; ++a) nodes[m - 1 - a] = -nodes[a];
  return nodes;
}

template <typename Real>
std::vector<double> top_eigenvalues(const Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>& a,
                                    std::size_t k) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>> es(
      a, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();  // ascending
  const auto m = static_cast<std::size_t>(ev.size());
  std::vector<double> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(static_cast<double>(ev(static_cast<Eigen::Index>(m - 1 - i))));
  return out;
}

}  // namespace

constexpr double kAutoQuadRatio = 1e-10;

std::vector<double> nystrom_eigs(double gamma, std::size_t m, std::size_t k, const NystromOptions& options) {
  if (!(std::isfinite(gamma) && gamma > 0.0)) throw InvalidArgument("nystrom_eigs: gamma must be positive");
  if (m < 1 || m > kMaxQuadratureNodes) throw InvalidArgument("nystrom_eigs: m out of range");
  if (options.all) k = m;
  if (k < 1 || k > m) throw InvalidArgument("nystrom_eigs: need 1 <= k <= m");
  const double scale = options.node_scale > 0.0 ? options.node_scale : 1.0 / std::sqrt(1.0 + gamma);
  const auto n = static_cast<Eigen::Index>(m);

  if (options.precision != NystromPrecision::kQuad) {
    const QuadratureRule rule = scaled_gauss_hermite(m, scale);
    Eigen::MatrixXd a(n, n);
    const double g2 = gamma * gamma;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double ti = rule.nodes[static_cast<std::size_t>(i)];
      const double wi = std::sqrt(rule.weights[static_cast<std::size_t>(i)]);
      for (Eigen::Index j = 0; j <= i; ++j) {
        const double diff = ti - rule.nodes[static_cast<std::size_t>(j)];
        const double v = wi * std::sqrt(rule.weights[static_cast<std::size_t>(j)]) * std::exp(-g2 * diff * diff);
        a(i, j) = v;
        a(j, i) = v;
      }
    }
    std::vector<double> top = top_eigenvalues(a, k);
    if (options.precision == NystromPrecision::kDouble || top.back() >= kAutoQuadRatio * top.front()) return top;
  }

  const std::vector<float128> x = quad_nodes(m);
  const float128 s = scale;
  std::vector<float128> t(m);
  std::vector<float128> sqrt_w(m);
  for (std::size_t a = 0; a < m; ++a) {
    const float128 log_w = detail::log_christoffel_weight<float128>(m, x[a]);
    sqrt_w[a] = exp((log_w + (1 - s * s) * x[a] * x[a]) / 2) * sqrt(s);
    t[a] = s * x[a];
  }
  const float128 g2 = float128(gamma) * float128(gamma);
  Eigen::Matrix<float128, Eigen::Dynamic, Eigen::Dynamic> a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const auto si = static_cast<std::size_t>(i);
      const auto sj = static_cast<std::size_t>(j);
      const float128 diff = t[si] - t[sj];
      const float128 v = sqrt_w[si] * sqrt_w[sj] * exp(-g2 * diff * diff);
      a(i, j) = v;
      a(j, i) = v;
    }
  }
  return top_eigenvalues(a, k);
}

}  // namespace grkhs
