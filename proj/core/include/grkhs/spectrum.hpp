#pragma once

#include <cstddef>
#include <vector>

namespace grkhs {

/// Closed-form eigen-structure of the univariate Gaussian-kernel integral
/// operator on L2(rho_1):
///   lambda_j = (1 - omega) omega^(j-1),
///   phi_j(x) = sqrt(beta / (2^(j-1) (j-1)!)) exp(-delta2 x^2) H_(j-1)(beta x),
/// with beta = (1 + 4 gamma^2)^(1/4), delta2 = (beta^2 - 1) / 2 and
/// omega = 2 gamma^2 / (1 + 2 gamma^2 + beta^2).
class UnivariateSpectrum {
 public:
  /// Throws InvalidArgument unless gamma > 0 and finite.
  explicit UnivariateSpectrum(double gamma);

  double gamma() const noexcept { return gamma_; }
  double omega() const noexcept { return omega_; }
  double delta_sq() const noexcept { return delta_sq_; }
  double beta() const noexcept { return beta_; }

  /// log(omega) and log(1 - omega), computed without cancellation.
  double log_omega() const noexcept { return log_omega_; }
  double log_one_minus_omega() const noexcept { return log1m_omega_; }

  /// lambda_j for j >= 1.
  double eigenvalue(std::size_t j) const;

  /// sum_{i <= j} lambda_i = 1 - omega^j.
  double partial_trace(std::size_t j) const;

  /// phi_j(x), orthonormal in L2(rho_1). Throws EvaluationOverflow when the
  /// Gaussian envelope overflows for extreme |x|.
  double eigenfunction(std::size_t j, double x) const;

  /// phi_1(x), ..., phi_count(x) from one pass of the recurrence.
  std::vector<double> eigenfunctions(std::size_t count, double x) const;

 private:
  double gamma_;
  double omega_;
  double delta_sq_;
  double beta_;
  double log_omega_;
  double log1m_omega_;
};

inline UnivariateSpectrum univariate_spectrum(double gamma) { return UnivariateSpectrum(gamma); }

inline double univariate_eigenfunction(const UnivariateSpectrum& spec, std::size_t j, double x) {
  return spec.eigenfunction(j, x);
}

/// Truncated Mercer series sum_{j <= terms} lambda_j phi_j(x) phi_j(t); tends to
/// K_1(x, t) as terms grows.
double mercer_check(const UnivariateSpectrum& spec, double x, double t, std::size_t terms);

}  // namespace grkhs
