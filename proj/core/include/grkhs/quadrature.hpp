#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace grkhs {

/// Quadrature rule for integrals against rho_1(t) = pi^(-1/2) exp(-t^2).
/// Weights are normalised to the probability density, so they sum to one.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }
};

inline constexpr std::size_t kMaxQuadratureNodes = 512;
inline constexpr std::size_t kMaxTensorGridPoints = 10'000'000;

/// m-point Gauss-Hermite rule normalised to rho_1; exact for polynomials of
/// degree <= 2m-1. Nodes come from the Jacobi matrix of the Hermite three-term
/// recurrence. 1 <= m <= 512.
QuadratureRule gauss_hermite(std::size_t m);

/// Gauss-Hermite rule whose nodes are the standard ones multiplied by `scale`,
/// reweighted so that it still integrates against rho_1. The rule is exact for
/// p(t) exp(-(1/scale^2 - 1) t^2) with deg p <= 2m-1; scale < 1 concentrates
/// nodes where narrow kernels need resolution.
QuadratureRule scaled_gauss_hermite(std::size_t m, double scale);

/// Tensor-product approximation of the integral of g against rho_d using the
/// m-point rule in every coordinate. d <= 4 and m^d <= kMaxTensorGridPoints.
double integrate(std::size_t d, std::size_t m, const std::function<double(std::span<const double>)>& g);

/// Tensor grid of a univariate rule: points (row-major, d coordinates each)
/// and product weights.
struct TensorGrid {
  std::size_t dimension = 0;
  std::vector<double> coordinates;  // size() * dimension
  std::vector<double> weights;

  std::size_t size() const noexcept { return weights.size(); }
  std::span<const double> point(std::size_t i) const {
    return {coordinates.data() + i * dimension, dimension};
  }
};

TensorGrid tensor_grid(const QuadratureRule& rule, std::size_t d,
                       std::size_t max_points = kMaxTensorGridPoints);

enum class NystromPrecision {
  /// Double first; repeated in quad when the k-th eigenvalue is below 1e-10
  /// of the first.
  kAuto,
  kDouble,
  /// 113-bit significand; needed when the requested eigenvalues span more than
  /// ~12 decades (narrow spectra, small gamma).
  kQuad,
};

struct NystromOptions {
  /// Node scale handed to scaled_gauss_hermite; <= 0 selects the default
  /// 1/sqrt(1 + gamma), which keeps node spacing below the kernel width.
  double node_scale = 0.0;
  NystromPrecision precision = NystromPrecision::kAuto;
  /// Return the full spectrum (k is then ignored).
  bool all = false;
};

/// Largest k eigenvalues, descending, of the m x m matrix
/// A_ab = sqrt(w_a w_b) K_1(t_a, t_b) built on a Gauss-Hermite rule. This is
/// the quadrature (Nystrom) discretisation of the integral operator
/// (W f)(x) = int K_1(x, t) f(t) rho_1(t) dt and is used as an independent
/// check of the closed-form spectrum.
std::vector<double> nystrom_eigs(double gamma, std::size_t m, std::size_t k,
                                 const NystromOptions& options = {});

}  // namespace grkhs
