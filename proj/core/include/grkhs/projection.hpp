#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "grkhs/kernel.hpp"
#include "grkhs/shape.hpp"
#include "grkhs/tensor_spectrum.hpp"

namespace grkhs {

/// Product eigenfunction prod_l phi_{j_l}(gamma_l; x_l).
double tensor_eigenfunction(const TensorSpectrum& spectrum, const MultiIndex& index,
                            std::span<const double> x);

/// Finite expansion f = sum_k c_k e_k in the H_d-orthonormal basis
/// e_k = sqrt(lambda_k) phi_k. Used to describe f exactly when d is too large
/// for quadrature.
struct EigenExpansion {
  struct Term {
    MultiIndex index;
    double coefficient;
  };
  std::vector<Term> terms;
};

/// A_n for Lambda^all: L2 projection onto the eigenfunctions of the n largest
/// eigenvalues of W_d. Holds the basis together with the L2 coefficients
/// <f, phi_k> of the function it was applied to.
class EigenProjector {
 public:
  EigenProjector(ShapeSequence shape, std::size_t d, TensorEigenList basis);

  std::size_t n() const noexcept { return basis_.entries.size(); }
  std::size_t dimension() const noexcept { return d_; }
  const TensorEigenList& basis() const noexcept { return basis_; }
  const std::vector<double>& coefficients() const noexcept { return coefficients_; }
  const TensorSpectrum& spectrum() const noexcept { return spectrum_; }

  /// Coefficients <f, phi_k>_{L2} by tensor Gauss-Hermite quadrature with m
  /// nodes per coordinate (d <= 4).
  void fit(const std::function<double(std::span<const double>)>& f, std::size_t m);

  /// Coefficients read off an exact eigen-expansion (any d).
  void fit(const EigenExpansion& f);

  /// Evaluate A_n(f) at x.
  double operator()(std::span<const double> x) const;

 private:
  ShapeSequence shape_;
  std::size_t d_;
  TensorEigenList basis_;
  TensorSpectrum spectrum_;
  std::vector<double> coefficients_;
};

/// Builds the projector on the top-n basis and applies it to a black-box f.
EigenProjector eigen_projection(const ShapeSequence& shape, std::size_t d, std::size_t n,
                                const std::function<double(std::span<const double>)>& f,
                                std::size_t m);

/// Same for f given as an eigen-expansion.
EigenProjector eigen_projection(const ShapeSequence& shape, std::size_t d, std::size_t n,
                                const EigenExpansion& f);

/// |f - A_n f|_{L2} for an eigen-expansion, by Parseval: sqrt(sum over terms
/// outside the top-n set of lambda_k c_k^2).
double projection_error(const ShapeSequence& shape, std::size_t d, std::size_t n,
                        const EigenExpansion& f);

/// n-th minimal worst-case error for Lambda^all: sqrt of the (n+1)-st largest
/// eigenvalue of W_d. n = 0 gives initial_error.
double minimal_error_all(const ShapeSequence& shape, std::size_t d, std::size_t n);

}  // namespace grkhs
