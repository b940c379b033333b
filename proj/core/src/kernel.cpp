#include "grkhs/kernel.hpp"
#include "grkhs/tensor_spectrum.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "grkhs/error.hpp"
#include "grkhs/spectrum.hpp"

namespace grkhs {

double GaussianWeight::density(std::span<const double> t) const {
  if (t.size() != dimension) throw InvalidArgument("point dimension does not match weight dimension");
  double sq = 0.0;
  for (double v : t) sq += v * v;
  return std::pow(std::numbers::pi, -0.5 * static_cast<double>(dimension)) * std::exp(-sq);
}

double kernel_eval_sq(std::span<const double> gamma_sq, std::span<const double> x,
                      std::span<const double> t) {
  double s = 0.0;
  for (std::size_t l = 0; l < gamma_sq.size(); ++l) {
    const double diff = x[l] - t[l];
    s += gamma_sq[l] * diff * diff;
  }
  return std::exp(-s);
}

double kernel_eval(const ShapeSequence& shape, std::size_t d, std::span<const double> x,
                   std::span<const double> t) {
  shape.require_dimension(d);
  if (x.size() != d || t.size() != d) {
    throw InvalidArgument("kernel_eval: points must have dimension " + std::to_string(d));
  }
  double s = 0.0;
  for (std::size_t l = 0; l < d; ++l) {
    const double g = shape.gamma(l + 1);
    const double diff = x[l] - t[l];
    s += g * g * diff * diff;
  }
  return std::exp(-s);
}

Eigen::VectorXd GramMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(entries_, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

GramMatrix gram_matrix(const ShapeSequence& shape, std::size_t d, const std::vector<Point>& points) {
  if (points.empty()) throw InvalidArgument("gram_matrix: empty point list");
  shape.require_dimension(d);
  for (const auto& p : points) {
    if (p.size() != d) throw InvalidArgument("gram_matrix: point dimension mismatch");
  }
  std::vector<double> gamma_sq;
  gamma_sq.reserve(d);
  for (double g : shape.gammas(d)) gamma_sq.push_back(g * g);

  const auto n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    k(i, i) = 1.0;
    for (Eigen::Index j = 0; j < i; ++j) {
      const double v = kernel_eval_sq(gamma_sq, points[static_cast<std::size_t>(i)],
                                      points[static_cast<std::size_t>(j)]);
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  return GramMatrix(std::move(k));
}

double initial_error(const ShapeSequence& shape, std::size_t d) {
  // same summation as the enumerator's first value
  return std::exp(0.5 * TensorSpectrum(shape, d).log_top());
}

}  // namespace grkhs
