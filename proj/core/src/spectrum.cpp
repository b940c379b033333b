#include "grkhs/spectrum.hpp"

#include <cmath>
#include <string>

#include "grkhs/error.hpp"

namespace grkhs {
namespace {

// Values of the orthonormal Hermite recurrence
//   r_0 = 1, r_1 = sqrt(2) y, r_{n+1} = sqrt(2/(n+1)) y r_n - sqrt(n/(n+1)) r_{n-1},
// i.e. r_n = H_n(y) / sqrt(2^n n!). Returned as mantissa * exp(log_scale) so
// large degrees at large |y| do not overflow.
struct ScaledValue {
  double mantissa;
  double log_scale;
};

template <typename Sink>
void orthonormal_hermite(std::size_t count, double y, Sink&& sink) {
  if (count == 0) return;
  double prev = 0.0;
  double cur = 1.0;
  double log_scale = 0.0;
  sink(0, ScaledValue{cur, log_scale});
  for (std::size_t n = 0; n + 1 < count; ++n) {
    const double nd = static_cast<double>(n);
    const double next = std::sqrt(2.0 / (nd + 1.0)) * y * cur - std::sqrt(nd / (nd + 1.0)) * prev;
    prev = cur;
    cur = next;
    const double mag = std::abs(cur);
    if (mag > 1e150) {
      prev /= mag;
      cur /= mag;
      log_scale += std::log(mag);
    }
    sink(n + 1, ScaledValue{cur, log_scale});
  }
}

}  // namespace

UnivariateSpectrum::UnivariateSpectrum(double gamma) : gamma_(gamma) {
  if (!(std::isfinite(gamma) && gamma > 0.0)) {
    throw InvalidArgument("shape parameter must be positive and finite");
  }
  const double g2 = gamma * gamma;
  const double root = std::sqrt(1.0 + 4.0 * g2);
  const double denom = 1.0 + 2.0 * g2 + root;
  omega_ = 2.0 * g2 / denom;
  delta_sq_ = 2.0 * g2 / (root + 1.0);
  beta_ = std::sqrt(root);
  log_omega_ = std::log(2.0 * g2) - std::log(denom);
  log1m_omega_ = std::log1p(root) - std::log(denom);
}

double UnivariateSpectrum::eigenvalue(std::size_t j) const {
  if (j == 0) throw InvalidArgument("eigenvalue index is 1-based");
  return std::exp(log1m_omega_ + static_cast<double>(j - 1) * log_omega_);
}

double UnivariateSpectrum::partial_trace(std::size_t j) const {
  return -std::expm1(static_cast<double>(j) * log_omega_);
}

double UnivariateSpectrum::eigenfunction(std::size_t j, double x) const {
  if (j == 0) throw InvalidArgument("eigenfunction index is 1-based");
  ScaledValue last{0.0, 0.0};
  orthonormal_hermite(j, beta_ * x, [&](std::size_t, ScaledValue v) { last = v; });
  if (last.mantissa == 0.0) return 0.0;
  const double value =
      std::sqrt(beta_) * last.mantissa * std::exp(last.log_scale - delta_sq_ * x * x);
  if (!std::isfinite(value)) {
    throw EvaluationOverflow("phi_" + std::to_string(j) + "(" + std::to_string(x) + ") overflows");
  }
  return value;
}

std::vector<double> UnivariateSpectrum::eigenfunctions(std::size_t count, double x) const {
  std::vector<double> out(count);
  const double envelope = -delta_sq_ * x * x;
  const double amp = std::sqrt(beta_);
  orthonormal_hermite(count, beta_ * x, [&](std::size_t n, ScaledValue v) {
    out[n] = v.mantissa == 0.0 ? 0.0 : amp * v.mantissa * std::exp(v.log_scale + envelope);
    if (!std::isfinite(out[n])) {
      throw EvaluationOverflow("phi_" + std::to_string(n + 1) + "(" + std::to_string(x) + ") overflows");
    }
  });
  return out;
}

double mercer_check(const UnivariateSpectrum& spec, double x, double t, std::size_t terms) {
  if (terms == 0) throw InvalidArgument("mercer_check needs at least one term");
  const auto px = spec.eigenfunctions(terms, x);
  const auto pt = spec.eigenfunctions(terms, t);
  double sum = 0.0;
  // smallest terms first
  for (std::size_t j = terms; j-- > 0;) sum += spec.eigenvalue(j + 1) * px[j] * pt[j];
  return sum;
}

}  // namespace grkhs
