#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "grkhs/error.hpp"
#include "grkhs/kernel.hpp"
#include "grkhs/limits.hpp"
#include "grkhs/quadrature.hpp"
#include "grkhs/spectrum.hpp"
#include "grkhs/tensor_spectrum.hpp"

using namespace grkhs;

TEST_CASE("univariate spectrum closed forms") {
  const UnivariateSpectrum s1(1.0);
  CHECK(s1.omega() == doctest::Approx((3.0 - std::sqrt(5.0)) / 2.0).epsilon(1e-15));
  CHECK(s1.eigenvalue(1) == doctest::Approx(0.6180340).epsilon(1e-7));
  const UnivariateSpectrum s01(0.1);
  CHECK(s01.omega() == doctest::Approx(0.02 / (1.02 + std::sqrt(1.04))).epsilon(1e-14));
  CHECK(s01.omega() == doctest::Approx(0.0098049).epsilon(1e-5));
  CHECK_THROWS_AS(UnivariateSpectrum(0.0), InvalidArgument);
  CHECK_THROWS_AS(UnivariateSpectrum(-2.0), InvalidArgument);
}

TEST_CASE("univariate invariants") {
  double prev_omega = 0.0;
  for (double g : {1e-3, 0.1, 0.5, 1.0, 2.0, 10.0, 100.0}) {
    const UnivariateSpectrum s(g);
    CHECK(s.omega() > prev_omega);
    CHECK(s.omega() < 1.0);
    prev_omega = s.omega();
    CHECK(s.delta_sq() * (1.0 + s.delta_sq()) == doctest::Approx(g * g).epsilon(1e-13));
    CHECK(s.beta() == doctest::Approx(std::pow(1.0 + 4.0 * g * g, 0.25)).epsilon(1e-15));
    for (std::size_t j : {1, 2, 10, 100, 2000}) {
      double sum = 0.0;
      for (std::size_t k = j; k >= 1; --k) sum += s.eigenvalue(k);
      CHECK(std::abs(sum - (1.0 - std::pow(s.omega(), static_cast<double>(j)))) <= 1e-12);
      CHECK(s.partial_trace(j) == doctest::Approx(sum).epsilon(1e-13));
    }
  }
}

// phi_j from the physicists' Hermite recurrence in long double with the
// explicit normalisation, independent of the library's scaled recurrence.
static long double phi_reference(double gamma, std::size_t j, double x) {
  const long double g2 = static_cast<long double>(gamma) * gamma;
  const long double beta = std::pow(1.0L + 4.0L * g2, 0.25L);
  const long double delta2 = (std::sqrt(1.0L + 4.0L * g2) - 1.0L) / 2.0L;
  const long double y = beta * x;
  long double h0 = 1.0L, h1 = 2.0L * y;
  long double h = j == 1 ? h0 : h1;
  for (std::size_t n = 1; n + 1 < j; ++n) {
    h = 2.0L * y * h1 - 2.0L * static_cast<long double>(n) * h0;
    h0 = h1;
    h1 = h;
  }
  long double norm = 1.0L;  // 2^(j-1) (j-1)!
  for (std::size_t n = 1; n < j; ++n) norm *= 2.0L * static_cast<long double>(n);
  return std::sqrt(beta / norm) * std::exp(-delta2 * x * x) * h;
}

TEST_CASE("eigenfunction examples") {
  const UnivariateSpectrum s(1.0);
  CHECK(s.eigenfunction(1, 0.0) == doctest::Approx(std::pow(5.0, 0.125)).epsilon(1e-15));
  CHECK(s.eigenfunction(1, 0.0) == doctest::Approx(1.2228445).epsilon(1e-7));
  for (double g : {0.3, 1.0, 4.0}) CHECK(UnivariateSpectrum(g).eigenfunction(2, 0.0) == 0.0);
  CHECK_THROWS_AS(s.eigenfunction(0, 0.0), InvalidArgument);
}

TEST_CASE("eigenfunctions match the explicit Hermite form") {
  for (double g : {0.1, 1.0, 3.0}) {
    const UnivariateSpectrum s(g);
    for (std::size_t j = 1; j <= 30; ++j) {
      for (double x : {-3.0, -1.1, 0.0, 0.4, 2.5}) {
        const double ref = static_cast<double>(phi_reference(g, j, x));
        CHECK(s.eigenfunction(j, x) == doctest::Approx(ref).epsilon(1e-11).scale(1.0));
      }
    }
  }
}

TEST_CASE("eigenfunctions batch equals pointwise") {
  const UnivariateSpectrum s(0.7);
  const auto all = s.eigenfunctions(25, 1.3);
  for (std::size_t j = 1; j <= 25; ++j) CHECK(all[j - 1] == s.eigenfunction(j, 1.3));
}

TEST_CASE("eigenfunction overflow is reported") {
  const UnivariateSpectrum s(0.01);
  CHECK_THROWS_AS(s.eigenfunction(500, 100.0), EvaluationOverflow);
  CHECK_THROWS_AS(s.eigenfunctions(500, 100.0), EvaluationOverflow);
  CHECK(std::isfinite(s.eigenfunction(500, 30.0)));
  // far out the Gaussian envelope wins and the value underflows to zero
  CHECK(s.eigenfunction(5, 1e160) == 0.0);
}

TEST_CASE("orthonormality under the 100-point rule") {
  const QuadratureRule r = gauss_hermite(100);
  const UnivariateSpectrum s(1.0);
  for (std::size_t i = 1; i <= 10; ++i) {
    for (std::size_t j = 1; j <= 10; ++j) {
      double acc = 0.0;
      for (std::size_t a = 0; a < r.size(); ++a) acc += r.weights[a] * s.eigenfunction(i, r.nodes[a]) * s.eigenfunction(j, r.nodes[a]);
      CHECK(std::abs(acc - (i == j ? 1.0 : 0.0)) <= 1e-8);
    }
  }
}

TEST_CASE("mercer_check examples") {
  const UnivariateSpectrum s(1.0);
  const auto iso = ShapeSequence::isotropic(1.0);
  CHECK(std::abs(mercer_check(s, 0.0, 0.0, 50) - 1.0) <= 1e-10);
  CHECK(std::abs(mercer_check(s, 0.0, 1.0, 50) - std::exp(-1.0)) <= 1e-8);
  for (double x : {-1.0, 0.0, 0.8}) {
    CHECK(mercer_check(s, x, x, 1) <= kernel_eval(iso, 1, {{x}}, {{x}}));
  }
}

TEST_CASE("d = 1 tensor list is the geometric sequence") {
  const auto list = top_n_tensor_eigenvalues(ShapeSequence::isotropic(1.0), 1, 4);
  const double expect[] = {0.6180340, 0.2360680, 0.0901699, 0.0344419};
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(list.entries[k].value == doctest::Approx(expect[k]).epsilon(1e-6));
    CHECK(list.entries[k].index.dense(1) == std::vector<std::size_t>{k + 1});
  }
}

TEST_CASE("d = 2 isotropic head and tie order") {
  const auto list = top_n_tensor_eigenvalues(ShapeSequence::isotropic(1.0), 2, 3);
  const double omega = UnivariateSpectrum(1.0).omega();
  CHECK(list.entries[0].value == doctest::Approx(0.3819660).epsilon(1e-6));
  CHECK(list.entries[1].value == doctest::Approx((1 - omega) * (1 - omega) * omega).epsilon(1e-14));
  CHECK(list.entries[1].value == doctest::Approx(0.1458980).epsilon(1e-6));
  CHECK(list.entries[1].log_value == list.entries[2].log_value);
  CHECK(list.entries[0].index.to_string(2) == "(1,1)");
  CHECK(list.entries[1].index.to_string(2) == "(2,1)");
  CHECK(list.entries[2].index.to_string(2) == "(1,2)");
}

// Exhaustive oracle over {1..J}^d: sort products by value; values within 1e-12
// relative are ties, ordered lexicographically larger first.
static std::vector<std::pair<double, std::vector<std::size_t>>> exhaustive(const std::vector<double>& gammas,
                                                                          std::size_t J) {
  const std::size_t d = gammas.size();
  std::vector<std::pair<double, std::vector<std::size_t>>> all;
  std::vector<std::size_t> idx(d, 1);
  while (true) {
    double v = 1.0;
    for (std::size_t l = 0; l < d; ++l) {
      const double g2 = gammas[l] * gammas[l];
      const double om = 2 * g2 / (1 + 2 * g2 + std::sqrt(1 + 4 * g2));
      v *= (1 - om) * std::pow(om, static_cast<double>(idx[l] - 1));
    }
    all.emplace_back(v, idx);
    std::size_t l = d;
    while (l > 0 && idx[l - 1] == J) idx[--l] = 1;
    if (l == 0) break;
    ++idx[l - 1];
  }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i + 1;
    while (j < all.size() && all[j - 1].first - all[j].first <= 1e-12 * all[j - 1].first) ++j;
    std::sort(all.begin() + static_cast<long>(i), all.begin() + static_cast<long>(j),
              [](const auto& a, const auto& b) { return a.second > b.second; });
    i = j;
  }
  return all;
}

TEST_CASE("enumeration equals the exhaustive sort for d <= 3, n <= 100") {
  const std::vector<std::vector<double>> cases = {
      {1.0}, {0.3}, {1.0, 1.0}, {1.0, 0.5}, {2.0, 0.1}, {1.0, 1.0, 1.0}, {1.0, 0.5, 0.25}, {0.7, 0.7, 3.0}};
  for (const auto& gammas : cases) {
    const std::size_t d = gammas.size();
    // J = 40 leaves a dropped tail far below the 100th value for these gammas
    const auto oracle = exhaustive(gammas, d == 1 ? 200 : 40);
    const auto list = top_n_tensor_eigenvalues(ShapeSequence::explicit_list(gammas), d, 100);
    for (std::size_t k = 0; k < 100; ++k) {
      CHECK(list.entries[k].value == doctest::Approx(oracle[k].first).epsilon(1e-13));
      CHECK(list.entries[k].index.dense(d) == oracle[k].second);
    }
  }
}

TEST_CASE("tensor list invariants") {
  for (const auto& shape : {ShapeSequence::isotropic(1.0), ShapeSequence::power_law(1.0, 1.0),
                            ShapeSequence::geometric(0.8)}) {
    for (std::size_t d : {1, 3, 17, 400}) {
      const auto list = top_n_tensor_eigenvalues(shape, d, 500);
      double sum = 0.0;
      std::set<std::vector<std::size_t>> seen;
      for (std::size_t k = 0; k < list.entries.size(); ++k) {
        const auto& e = list.entries[k];
        CHECK(e.value > 0.0);
        if (k) CHECK(e.log_value <= list.entries[k - 1].log_value);
        CHECK(seen.insert(e.index.dense(d)).second);
        sum += e.value;
        // entry equals the product of its univariate eigenvalues
        double lp = 0.0;
        const auto dense = e.index.dense(d);
        for (std::size_t l = 0; l < d; ++l) lp += std::log(UnivariateSpectrum(shape.gamma(l + 1)).eigenvalue(dense[l]));
        CHECK(e.log_value == doctest::Approx(lp).epsilon(1e-12));
      }
      CHECK(sum <= 1.0 + 1e-12);  // trace is 1; the top 500 may round to it
    }
  }
}

TEST_CASE("enumeration is deterministic") {
  const auto a = top_n_tensor_eigenvalues(ShapeSequence::isotropic(1.0), 6, 2000);
  const auto b = top_n_tensor_eigenvalues(ShapeSequence::isotropic(1.0), 6, 2000);
  for (std::size_t k = 0; k < 2000; ++k) {
    CHECK(a.entries[k].index == b.entries[k].index);
    CHECK(a.entries[k].log_value == b.entries[k].log_value);
  }
}

TEST_CASE("rule at d equals the explicit truncation") {
  const auto rule = ShapeSequence::power_law(1.2, 1.5);
  const std::size_t d = 5;
  const auto a = top_n_tensor_eigenvalues(rule, d, 300);
  const auto b = top_n_tensor_eigenvalues(ShapeSequence::explicit_list(rule.gammas(d)), d, 300);
  for (std::size_t k = 0; k < 300; ++k) {
    CHECK(a.entries[k].index == b.entries[k].index);
    CHECK(a.entries[k].log_value == b.entries[k].log_value);
  }
}

TEST_CASE("enumeration guard") {
  CHECK_THROWS_AS(top_n_tensor_eigenvalues(ShapeSequence::isotropic(1.0), 2, 0), InvalidArgument);
  TensorEigenEnumerator e(ShapeSequence::isotropic(1.0), 3, 5);
  for (int i = 0; i < 5; ++i) e.next();
  try {
    e.next();
    FAIL("guard not enforced");
  } catch (const ResourceLimit& err) {
    CHECK(err.partial_lower_bound() == 5);
  }
}

TEST_CASE("multi-index helpers") {
  const auto m = MultiIndex::from_dense({1, 3, 1, 2});
  CHECK(m[0] == 1);
  CHECK(m[1] == 3);
  CHECK(m[3] == 2);
  CHECK(m[99] == 1);
  CHECK(m.total_degree() == 3);
  CHECK(m.to_string(4) == "(1,3,1,2)");
  CHECK_THROWS_AS(MultiIndex::from_dense({0, 1}), InvalidArgument);
  CHECK(MultiIndex::precedes(MultiIndex::from_dense({2, 1}), MultiIndex::from_dense({1, 2})));
  CHECK_FALSE(MultiIndex::precedes(MultiIndex::from_dense({1, 2}), MultiIndex::from_dense({2, 1})));
  CHECK(MultiIndex::precedes(MultiIndex::from_dense({1, 3}), MultiIndex::from_dense({1, 2})));
}

TEST_CASE("large d stays finite in log space") {
  TensorEigenEnumerator e(ShapeSequence::isotropic(1.0), 2000);
  const auto top = e.next();
  CHECK(std::isfinite(top.log_value));
  CHECK(top.value == 0.0);  // (1 - omega)^2000 underflows
  CHECK(e.next().log_value < top.log_value);
}
