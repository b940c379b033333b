#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "grkhs/error.hpp"
#include "grkhs/kernel.hpp"
#include "grkhs/quadrature.hpp"
#include "grkhs/spectrum.hpp"

using namespace grkhs;

// E[t^p] under rho_1: 0 for odd p, (p-1)!! / 2^(p/2) for even p.
static double gaussian_moment(int p) {
  if (p % 2) return 0.0;
  double v = 1.0;
  for (int k = p - 1; k > 0; k -= 2) v *= k;
  return v / std::pow(2.0, p / 2);
}

TEST_CASE("gauss_hermite small rules") {
  const QuadratureRule one = gauss_hermite(1);
  REQUIRE(one.size() == 1);
  CHECK(one.nodes[0] == 0.0);
  CHECK(one.weights[0] == doctest::Approx(1.0).epsilon(1e-15));

  const QuadratureRule two = gauss_hermite(2);
  REQUIRE(two.size() == 2);
  CHECK(std::abs(two.nodes[0]) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(two.nodes[0] == -two.nodes[1]);
  CHECK(two.weights[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(two.weights[1] == doctest::Approx(0.5).epsilon(1e-14));
  double var = 0.0;
  for (std::size_t a = 0; a < 2; ++a) var += two.weights[a] * two.nodes[a] * two.nodes[a];
  CHECK(var == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("gauss_hermite rejects m out of range") {
  CHECK_THROWS_AS(gauss_hermite(0), InvalidArgument);
  CHECK_THROWS_AS(gauss_hermite(513), InvalidArgument);
  CHECK_NOTHROW(gauss_hermite(512));
}

TEST_CASE("weights are positive, sum to one, nodes symmetric") {
  for (std::size_t m : {1, 2, 3, 7, 20, 64, 200, 512}) {
    const QuadratureRule r = gauss_hermite(m);
    CHECK(std::accumulate(r.weights.begin(), r.weights.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-13));
    // outermost weights of very large rules underflow (about exp(-x^2), x ~ sqrt(2m))
    CHECK(std::all_of(r.weights.begin(), r.weights.end(), [&](double w) { return m <= 200 ? w > 0.0 : w >= 0.0; }));
    CHECK(std::is_sorted(r.nodes.begin(), r.nodes.end()));
    for (std::size_t a = 0; a < m; ++a) CHECK(r.nodes[a] == -r.nodes[m - 1 - a]);
  }
}

TEST_CASE("exact on monomials up to degree 2m-1") {
  for (std::size_t m : {1, 2, 3, 5, 8, 12}) {
    const QuadratureRule r = gauss_hermite(m);
    for (int p = 0; p <= static_cast<int>(2 * m - 1); ++p) {
      double s = 0.0, mag = 0.0;
      for (std::size_t a = 0; a < m; ++a) {
        s += r.weights[a] * std::pow(r.nodes[a], p);
        mag += r.weights[a] * std::abs(std::pow(r.nodes[a], p));
      }
      // odd moments cancel; judge against the size of the terms
      CHECK(std::abs(s - gaussian_moment(p)) <= 1e-13 * mag);
    }
    // and not, in general, at degree 2m
    double s = 0.0;
    for (std::size_t a = 0; a < m; ++a) s += r.weights[a] * std::pow(r.nodes[a], 2 * static_cast<int>(m));
    CHECK(std::abs(s - gaussian_moment(2 * static_cast<int>(m))) > 1e-6);
  }
}

TEST_CASE("scaled rule integrates against the same weight") {
  for (double s : {0.3, 0.7, 1.0}) {
    const QuadratureRule r = scaled_gauss_hermite(80, s);
    double mass = 0.0, var = 0.0, k = 0.0;
    for (std::size_t a = 0; a < r.size(); ++a) {
      mass += r.weights[a];
      var += r.weights[a] * r.nodes[a] * r.nodes[a];
      k += r.weights[a] * std::exp(-2.0 * r.nodes[a] * r.nodes[a]);
    }
    // with scale 0.3 the outermost node is ~3.7, so the t^2 tail beyond it is ~1e-6
    const double tol = s < 0.5 ? 1e-5 : 1e-10;
    CHECK(mass == doctest::Approx(1.0).epsilon(tol));
    CHECK(var == doctest::Approx(0.5).epsilon(tol));
    CHECK(k == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-10));
  }
}

TEST_CASE("integrate examples") {
  for (std::size_t d = 1; d <= 4; ++d) {
    CHECK(integrate(d, 5, [](std::span<const double>) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK(integrate(2, 4, [](std::span<const double> t) { return t[0] * t[0]; }) == doctest::Approx(0.5).epsilon(1e-14));

  // int K(t,0)^2 rho = 1/sqrt(3) for gamma = 1, and the Mercer sum of
  // lambda_j^2 phi_j(0)^2
  const auto iso = ShapeSequence::isotropic(1.0);
  const double q = integrate(1, 64, [&](std::span<const double> t) {
    const double k = kernel_eval(iso, 1, t, std::vector<double>{0.0});
    return k * k;
  });
  const UnivariateSpectrum s(1.0);
  double mercer = 0.0;
  for (std::size_t j = 50; j >= 1; --j) {
    const double p = s.eigenfunction(j, 0.0);
    mercer += s.eigenvalue(j) * s.eigenvalue(j) * p * p;
  }
  CHECK(std::abs(q - mercer) <= 1e-10);
  CHECK(std::abs(q - 1.0 / std::sqrt(3.0)) <= 1e-12);
}

TEST_CASE("integrate guards") {
  CHECK_THROWS_AS(integrate(5, 2, [](std::span<const double>) { return 1.0; }), InvalidArgument);
  CHECK_THROWS_AS(tensor_grid(gauss_hermite(512), 3), ResourceLimit);
}

TEST_CASE("nystrom_eigs on gamma = 1") {
  const auto full = nystrom_eigs(1.0, 200, 0, NystromOptions{.node_scale = 1.0, .precision = NystromPrecision::kDouble, .all = true});
  REQUIRE(full.size() == 200);
  CHECK(std::accumulate(full.begin(), full.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(*std::min_element(full.begin(), full.end()) >= -1e-12);
  CHECK(std::is_sorted(full.rbegin(), full.rend()));

  const double omega = (3.0 - std::sqrt(5.0)) / 2.0;
  const auto top = nystrom_eigs(1.0, 200, 10);
  for (std::size_t j = 0; j < 10; ++j) {
    const double exact = (1.0 - omega) * std::pow(omega, static_cast<double>(j));
    CHECK(std::abs(top[j] - exact) <= 1e-6 * exact);
  }
}

TEST_CASE("nystrom_eigs converges monotonically in m") {
  // the plain rule converges from below for each fixed index
  for (std::size_t j : {0, 2, 4}) {
    double prev = 0.0;
    for (std::size_t m : {8, 12, 16, 24, 32}) {
      const double v =
          nystrom_eigs(1.0, m, 6, NystromOptions{.node_scale = 1.0, .precision = NystromPrecision::kDouble})[j];
      CHECK(v >= prev - 1e-15);
      prev = v;
    }
  }
}

TEST_CASE("nystrom_eigs precondition checks") {
  CHECK_THROWS_AS(nystrom_eigs(0.0, 10, 1), InvalidArgument);
  CHECK_THROWS_AS(nystrom_eigs(1.0, 10, 11), InvalidArgument);
  CHECK_THROWS_AS(nystrom_eigs(1.0, 0, 1), InvalidArgument);
}

TEST_CASE("quad precision resolves narrow spectra") {
  // gamma = 0.1: lambda_10 ~ 1e-18 of lambda_1, out of reach in double
  const UnivariateSpectrum s(0.1);
  const auto q = nystrom_eigs(0.1, 200, 10, NystromOptions{.precision = NystromPrecision::kQuad});
  for (std::size_t j = 1; j <= 10; ++j) CHECK(std::abs(q[j - 1] - s.eigenvalue(j)) <= 1e-6 * s.eigenvalue(j));
  const auto dbl = nystrom_eigs(0.1, 200, 10, NystromOptions{.precision = NystromPrecision::kDouble});
  CHECK(std::abs(dbl[9] - s.eigenvalue(10)) > 1e-6 * s.eigenvalue(10));
}
