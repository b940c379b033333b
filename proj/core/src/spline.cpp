#include "grkhs/spline.hpp"

#include <algorithm>
#include <cmath>

#include <boost/multiprecision/float128.hpp>
#include <Eigen/Eigenvalues>

#include "grkhs/error.hpp"
#include "grkhs/quadrature.hpp"

namespace grkhs {
namespace {

void check_design(const Design& design, std::size_t d) {
  if (design.dimension != d) throw InvalidArgument("design dimension does not match d");
  for (const auto& p : design.points) {
    if (p.size() != d) throw InvalidArgument("design point has the wrong dimension");
  }
}

using boost::multiprecision::float128;

// Pivots below this (relative to K(x,x) = 1) carry no information at quad precision.
constexpr double kPivotFloor = 1e-30;

float128 kernel_quad(const std::vector<double>& gamma_sq, std::span<const double> x, std::span<const double> t) {
  float128 s = 0;
  for (std::size_t l = 0; l < x.size(); ++l) {
    const float128 diff = float128(x[l]) - float128(t[l]);
    s += float128(gamma_sq[l]) * diff * diff;
  }
  return exp(-s);
}

// Values at the grid nodes of an H-orthonormal basis of span{K(., x_i)}, one
// row per basis function, from a pivoted Cholesky of the design in quad
// precision. Rows are bounded by 1 in every column, so K_gg - Z^T Z can be
// formed in double. No eigenvalue clipping: this is the exact interpolant.
Eigen::MatrixXd power_basis(const std::vector<double>& gamma_sq, const Design& design, const TensorGrid& grid) {
  const std::size_t n = design.size();
  const std::size_t big_m = grid.size();
  std::vector<float128> residual(n, float128(1));
  std::vector<bool> used(n, false);
  std::vector<std::vector<float128>> l_design;  // per step, column over design points
  std::vector<std::vector<float128>> l_grid;    // per step, column over grid nodes
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t p = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!used[i] && (p == n || residual[i] > residual[p])) p = i;
    }
    if (p == n || residual[p] <= float128(kPivotFloor)) break;
    used[p] = true;
    const float128 pivot = sqrt(residual[p]);
    std::vector<float128> cd(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i] && i != p) continue;
      float128 v = kernel_quad(gamma_sq, design.points[i], design.points[p]);
      for (std::size_t k = 0; k < step; ++k) v -= l_design[k][i] * l_design[k][p];
      cd[i] = v / pivot;
      residual[i] -= cd[i] * cd[i];
    }
    std::vector<float128> cg(big_m);
    for (std::size_t a = 0; a < big_m; ++a) {
      float128 v = kernel_quad(gamma_sq, grid.point(a), design.points[p]);
      for (std::size_t k = 0; k < step; ++k) v -= l_grid[k][a] * l_design[k][p];
      cg[a] = v / pivot;
    }
    l_design.push_back(std::move(cd));
    l_grid.push_back(std::move(cg));
  }
  Eigen::MatrixXd z(static_cast<Eigen::Index>(l_grid.size()), static_cast<Eigen::Index>(big_m));
  for (std::size_t k = 0; k < l_grid.size(); ++k) {
    for (std::size_t a = 0; a < big_m; ++a) {
      z(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(a)) = static_cast<double>(l_grid[k][a]);
    }
  }
  return z;
}

}  // namespace

GramPseudoInverse::GramPseudoInverse(const ShapeSequence& shape, const Design& design, double clip_relative)
    : design_(design) {
  const std::size_t d = design.dimension;
  shape.require_dimension(d);
  check_design(design, d);
  for (double g : shape.gammas(d)) gamma_sq_.push_back(g * g);
  if (design.empty()) {
    basis_.resize(0, 0);
    retained_.resize(0);
    return;
  }
  const GramMatrix gram = gram_matrix(shape, d, design.points);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram.matrix());
  const Eigen::VectorXd& ev = es.eigenvalues();  // ascending
  const Eigen::Index n = ev.size();
  lambda_max_ = ev(n - 1);
  lambda_min_ = ev(0);
  threshold_ = clip_relative * lambda_max_;
  Eigen::Index first = 0;
  while (first < n && ev(first) < threshold_) ++first;
  const Eigen::Index r = n - first;
  basis_ = es.eigenvectors().rightCols(r);
  retained_ = ev.tail(r);
}

Eigen::VectorXd GramPseudoInverse::solve(const Eigen::VectorXd& y) const {
  if (static_cast<std::size_t>(y.size()) != design_.size()) throw InvalidArgument("data vector length mismatch");
  if (retained_.size() == 0) return Eigen::VectorXd::Zero(y.size());
  const Eigen::VectorXd projected = basis_.transpose() * y;
  return basis_ * projected.cwiseQuotient(retained_);
}

Eigen::VectorXd GramPseudoInverse::kernel_vector(std::span<const double> x) const {
  if (x.size() != design_.dimension) throw InvalidArgument("evaluation point dimension mismatch");
  Eigen::VectorXd k(static_cast<Eigen::Index>(design_.size()));
  for (std::size_t i = 0; i < design_.size(); ++i) {
    k(static_cast<Eigen::Index>(i)) = kernel_eval_sq(gamma_sq_, design_.points[i], x);
  }
  return k;
}

Eigen::VectorXd GramPseudoInverse::whiten(std::span<const double> x) const {
  if (retained_.size() == 0) return Eigen::VectorXd();
  const Eigen::VectorXd projected = basis_.transpose() * kernel_vector(x);
  return projected.cwiseQuotient(retained_.cwiseSqrt());
}

SplineModel::SplineModel(const ShapeSequence& shape, Design design, const Eigen::VectorXd& y, double clip_relative)
    : gram_(shape, design, clip_relative), coefficients_(gram_.solve(y)) {}

double SplineModel::operator()(std::span<const double> x) const {
  if (coefficients_.size() == 0) return 0.0;
  return gram_.kernel_vector(x).dot(coefficients_);
}

SplineModel spline_fit(const ShapeSequence& shape, std::size_t d, Design design, const std::vector<double>& y) {
  if (design.empty()) throw InvalidArgument("spline_fit: design is empty");
  if (y.size() != design.size()) throw InvalidArgument("spline_fit: data length differs from design size");
  check_design(design, d);
  const Eigen::VectorXd data = Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size()));
  return SplineModel(shape, std::move(design), data);
}

double power_function(const GramPseudoInverse& gram, std::span<const double> x) {
  if (x.size() != gram.design().dimension) throw InvalidArgument("power_function: point dimension mismatch");
  const Eigen::VectorXd z = gram.whiten(x);
  const double explained = z.size() == 0 ? 0.0 : z.squaredNorm();
  return std::sqrt(std::clamp(1.0 - explained, 0.0, 1.0));
}

double power_function(const ShapeSequence& shape, std::size_t d, const Design& design, std::span<const double> x) {
  check_design(design, d);
  return power_function(GramPseudoInverse(shape, design), x);
}

double spline_worst_case_error(const ShapeSequence& shape, std::size_t d, const Design& design, std::size_t m,
                               SplineErrorMethod method) {
  if (d == 0 || d > 4) throw InvalidArgument("spline_worst_case_error supports 1 <= d <= 4");
  check_design(design, d);
  shape.require_dimension(d);
  const QuadratureRule rule = gauss_hermite(m);
  const TensorGrid grid = tensor_grid(rule, d, kMaxSplineGridPoints);
  const auto big_m = static_cast<Eigen::Index>(grid.size());
  std::vector<double> gamma_sq;
  for (double g : shape.gammas(d)) gamma_sq.push_back(g * g);
  const Eigen::MatrixXd z = power_basis(gamma_sq, design, grid);
  const Eigen::Index r = z.rows();

  if (method == SplineErrorMethod::kTraceBound) {
    double s = 0.0;
    for (Eigen::Index a = 0; a < big_m; ++a) {
      const double g = 1.0 - (r > 0 ? z.col(a).squaredNorm() : 0.0);
      s += grid.weights[static_cast<std::size_t>(a)] * std::max(g, 0.0);
    }
    return std::sqrt(s);
  }

  Eigen::VectorXd sqrt_w(big_m);
  for (Eigen::Index a = 0; a < big_m; ++a) sqrt_w(a) = std::sqrt(grid.weights[static_cast<std::size_t>(a)]);
  Eigen::MatrixXd b(big_m, big_m);
  for (Eigen::Index a = 0; a < big_m; ++a) {
    for (Eigen::Index c = 0; c <= a; ++c) {
      const double k = kernel_eval_sq(gamma_sq, grid.point(static_cast<std::size_t>(a)),
                                      grid.point(static_cast<std::size_t>(c)));
      b(a, c) = k;
      b(c, a) = k;
    }
  }
  if (r > 0) b.noalias() -= z.transpose() * z;
  b = sqrt_w.asDiagonal() * b * sqrt_w.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(es.eigenvalues()(big_m - 1), 0.0));
}

}  // namespace grkhs
