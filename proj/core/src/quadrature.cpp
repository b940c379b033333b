#include "grkhs/quadrature.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "grkhs/error.hpp"
#include "quadrature_detail.hpp"

namespace grkhs {
namespace {

void check_rule_size(std::size_t m) {
  if (m < 1 || m > kMaxQuadratureNodes) {
    throw InvalidArgument("quadrature size must lie in [1, " + std::to_string(kMaxQuadratureNodes) +
                          "], got " + std::to_string(m));
  }
}

std::vector<double> hermite_nodes(std::size_t m) {
  const auto n = static_cast<Eigen::Index>(m);
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(std::max<Eigen::Index>(n - 1, 0));
  for (Eigen::Index k = 1; k < n; ++k) sub(k - 1) = std::sqrt(static_cast<double>(k) / 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  std::vector<double> nodes(m);
  for (std::size_t a = 0; a < m; ++a) nodes[a] = es.eigenvalues()(static_cast<Eigen::Index>(a));
  // exact symmetry about the origin
  for (std::size_t a = 0; a < m / 2; ++a) {
    const double h = 0.5 * (nodes[m - 1 - a] - nodes[a]);
    nodes[a] = -h;
    nodes[m - 1 - a] = h;
  }
  if (m % 2 == 1) nodes[m / 2] = 0.0;
  return nodes;
}

}  // namespace

QuadratureRule scaled_gauss_hermite(std::size_t m, double scale) {
  check_rule_size(m);
  if (!(std::isfinite(scale) && scale > 0.0)) throw InvalidArgument("node scale must be positive");
  QuadratureRule rule;
  rule.nodes = hermite_nodes(m);
  rule.weights.resize(m);
  for (std::size_t a = 0; a < m; ++a) {
    const double x = rule.nodes[a];
    // int g(t) rho_1(t) dt = int g(s x) s exp((1 - s^2) x^2) rho_1(x) dx
    const double log_w = detail::log_christoffel_weight(m, x);
    rule.weights[a] = scale * std::exp(log_w + (1.0 - scale * scale) * x * x);
    rule.nodes[a] = scale * x;
  }
  return rule;
}

QuadratureRule gauss_hermite(std::size_t m) { return scaled_gauss_hermite(m, 1.0); }

TensorGrid tensor_grid(const QuadratureRule& rule, std::size_t d, std::size_t max_points) {
  if (d == 0) throw InvalidArgument("tensor grid dimension must be positive");
  const std::size_t m = rule.size();
  std::size_t total = 1;
  for (std::size_t l = 0; l < d; ++l) {
    if (total > max_points / m) {
      throw ResourceLimit("tensor grid of " + std::to_string(m) + "^" + std::to_string(d) +
                          " points exceeds the limit of " + std::to_string(max_points));
    }
    total *= m;
  }
  TensorGrid grid;
  grid.dimension = d;
  grid.coordinates.resize(total * d);
  grid.weights.resize(total);
  std::vector<std::size_t> digit(d, 0);
  for (std::size_t i = 0; i < total; ++i) {
    double w = 1.0;
    for (std::size_t l = 0; l < d; ++l) {
      grid.coordinates[i * d + l] = rule.nodes[digit[l]];
      w *= rule.weights[digit[l]];
    }
    grid.weights[i] = w;
    for (std::size_t l = d; l-- > 0;) {
      if (++digit[l] < m) break;
      digit[l] = 0;
    }
  }
  return grid;
}

double integrate(std::size_t d, std::size_t m, const std::function<double(std::span<const double>)>& g) {
  if (d == 0 || d > 4) throw InvalidArgument("tensor quadrature supports 1 <= d <= 4");
  const QuadratureRule rule = gauss_hermite(m);
  std::size_t total = 1;
  for (std::size_t l = 0; l < d; ++l) {
    if (total > kMaxTensorGridPoints / m) {
      throw ResourceLimit("tensor grid of " + std::to_string(m) + "^" + std::to_string(d) +
                          " points exceeds the limit of " + std::to_string(kMaxTensorGridPoints));
    }
    total *= m;
  }
  std::vector<std::size_t> digit(d, 0);
  std::vector<double> point(d);
  double sum = 0.0;
  for (std::size_t i = 0; i < total; ++i) {
    double w = 1.0;
    for (std::size_t l = 0; l < d; ++l) {
      point[l] = rule.nodes[digit[l]];
      w *= rule.weights[digit[l]];
    }
    if (w != 0.0) sum += w * g(point);
    for (std::size_t l = d; l-- > 0;) {
      if (++digit[l] < m) break;
      digit[l] = 0;
    }
  }
  return sum;
}

}  // namespace grkhs
