#pragma once

#include <cmath>
#include <cstddef>

namespace grkhs::detail {

/// log of the Gauss-Hermite weight (normalised to rho_1) at node x of the
/// m-point rule, via the Christoffel function 1 / sum_{k<m} p_k(x)^2 of the
/// orthonormal Hermite polynomials. Works in log space so extreme nodes keep
/// full relative accuracy. Real may be double or a quad-precision type.
template <typename Real>
Real log_christoffel_weight(std::size_t m, Real x) {
  using std::log;
  using std::sqrt;
  using std::abs;
  Real prev = 0;
  Real cur = 1;
  Real log_scale = 0;  // values are cur * exp(log_scale)
  Real sum = 1;        // sum of squares in units of exp(2 log_scale)
  for (std::size_t n = 0; n + 1 < m; ++n) {
    const Real nd = static_cast<Real>(static_cast<double>(n));
    const Real next = sqrt(Real(2) / (nd + 1)) * x * cur - sqrt(nd / (nd + 1)) * prev;
    prev = cur;
    cur = next;
    sum += cur * cur;
    const Real mag = abs(cur);
    if (mag > Real(1e100)) {
      prev /= mag;
      cur /= mag;
      sum /= mag * mag;
      log_scale += log(mag);
    }
  }
  return -log(sum) - 2 * log_scale;
}

}  // namespace grkhs::detail
