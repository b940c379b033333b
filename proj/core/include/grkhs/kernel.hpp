#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "grkhs/shape.hpp"

namespace grkhs {

/// A point of R^d, dense coordinates.
using Point = std::vector<double>;

/// Isotropic product Gaussian density rho_d(t) = pi^(-d/2) exp(-|t|^2):
/// mean zero, variance 1/2 per coordinate.
struct GaussianWeight {
  std::size_t dimension = 1;

  double density(std::span<const double> t) const;
  static constexpr double coordinate_variance() { return 0.5; }
};

/// K_d(x, t) = exp(-sum_l gamma_l^2 (x_l - t_l)^2).
double kernel_eval(const ShapeSequence& shape, std::size_t d, std::span<const double> x,
                   std::span<const double> t);

/// Same, with the squared shape parameters already materialised.
double kernel_eval_sq(std::span<const double> gamma_sq, std::span<const double> x,
                      std::span<const double> t);

/// Symmetric matrix of kernel values on a finite point set.
class GramMatrix {
 public:
  explicit GramMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {}

  const Eigen::MatrixXd& matrix() const noexcept { return entries_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  /// Eigenvalues ascending.
  Eigen::VectorXd eigenvalues() const;

 private:
  Eigen::MatrixXd entries_;
};

GramMatrix gram_matrix(const ShapeSequence& shape, std::size_t d, const std::vector<Point>& points);

/// Embedding norm |I_d| of H(K_d) into L2(rho_d): the worst-case error of the
/// zero algorithm. Equals sqrt(prod_l lambda_1(gamma_l)) <= 1.
double initial_error(const ShapeSequence& shape, std::size_t d);

}  // namespace grkhs
