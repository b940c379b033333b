#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "grkhs/kernel.hpp"
#include "grkhs/shape.hpp"

namespace grkhs {

/// Data sites x_1, ..., x_n (all of dimension d).
struct Design {
  std::size_t dimension = 0;
  std::vector<Point> points;

  std::size_t size() const noexcept { return points.size(); }
  bool empty() const noexcept { return points.empty(); }
};

/// Relative spectral clipping threshold for Gram pseudo-inverses.
inline constexpr double kGramClipRelative = 1e-12;

/// Pseudo-inverse of the Gram matrix of a design, from its symmetric
/// eigendecomposition with eigenvalues below clip_relative * lambda_max set
/// to zero. Shared by the spline and the power function.
class GramPseudoInverse {
 public:
  GramPseudoInverse(const ShapeSequence& shape, const Design& design,
                    double clip_relative = kGramClipRelative);

  const Design& design() const noexcept { return design_; }
  std::size_t rank() const noexcept { return static_cast<std::size_t>(retained_.size()); }
  double threshold() const noexcept { return threshold_; }
  double lambda_max() const noexcept { return lambda_max_; }
  double lambda_min() const noexcept { return lambda_min_; }

  /// K^+ y (the minimal Euclidean norm solution of K c = y on the retained
  /// spectrum).
  Eigen::VectorXd solve(const Eigen::VectorXd& y) const;

  /// k(x) = (K(x_i, x))_i.
  Eigen::VectorXd kernel_vector(std::span<const double> x) const;

  /// Whitened coordinates Lambda_r^(-1/2) V_r^T k(x); k(x)^T K^+ k(t) is the
  /// dot product of two of these.
  Eigen::VectorXd whiten(std::span<const double> x) const;

  const std::vector<double>& gamma_sq() const noexcept { return gamma_sq_; }

 private:
  Design design_;
  std::vector<double> gamma_sq_;
  Eigen::MatrixXd basis_;     // retained eigenvectors, n x r
  Eigen::VectorXd retained_;  // retained eigenvalues
  double threshold_ = 0.0;
  double lambda_max_ = 0.0;
  double lambda_min_ = 0.0;
};

/// Minimal-norm interpolant S_n(f)(x) = k(x)^T K^+ y.
class SplineModel {
 public:
  SplineModel(const ShapeSequence& shape, Design design, const Eigen::VectorXd& y,
              double clip_relative = kGramClipRelative);

  const Design& design() const noexcept { return gram_.design(); }
  const Eigen::VectorXd& coefficients() const noexcept { return coefficients_; }
  double clip_threshold() const noexcept { return gram_.threshold(); }
  const GramPseudoInverse& gram() const noexcept { return gram_; }

  double operator()(std::span<const double> x) const;

 private:
  GramPseudoInverse gram_;
  Eigen::VectorXd coefficients_;
};

SplineModel spline_fit(const ShapeSequence& shape, std::size_t d, Design design,
                       const std::vector<double>& y);

/// sqrt(max(0, K(x,x) - k(x)^T K^+ k(x))): the largest |f(x) - S_n(f)(x)| over
/// the unit ball of H_d. Equals 1 for an empty design.
double power_function(const ShapeSequence& shape, std::size_t d, const Design& design,
                      std::span<const double> x);

/// Same, reusing a factorised design.
double power_function(const GramPseudoInverse& gram, std::span<const double> x);

enum class SplineErrorMethod {
  /// sqrt(lambda_max) of the power-kernel integral operator (the worst-case
  /// error itself, up to Nystrom discretisation).
  kSpectral,
  /// sqrt(int G(t,t) rho_d(t) dt): a cheap upper bound.
  kTraceBound,
};

inline constexpr std::size_t kMaxSplineGridPoints = 6000;

/// Worst-case L2(rho_d) error of the spline on `design`, from the power kernel
/// G(x,t) = K(x,t) - k(x)^T K^+ k(t) discretised on the m^d tensor
/// Gauss-Hermite grid. d <= 4.
///
/// Unlike spline_fit, K^+ here is not clipped at kGramClipRelative: the design
/// is orthonormalised by a pivoted Cholesky in quad precision, so the value
/// belongs to the exact interpolant and never grows when a point is added.
double spline_worst_case_error(const ShapeSequence& shape, std::size_t d, const Design& design,
                               std::size_t m, SplineErrorMethod method = SplineErrorMethod::kSpectral);

}  // namespace grkhs
