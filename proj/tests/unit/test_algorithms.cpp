#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "grkhs/error.hpp"
#include "grkhs/kernel.hpp"
#include "grkhs/projection.hpp"
#include "grkhs/quadrature.hpp"
#include "grkhs/spectrum.hpp"
#include "grkhs/spline.hpp"
#include "grkhs/tensor_spectrum.hpp"

using namespace grkhs;

namespace {

const ShapeSequence kIso = ShapeSequence::isotropic(1.0);

Design random_points(std::size_t d, std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
  Design des{d, {}};
  for (std::size_t i = 0; i < n; ++i) {
    Point p(d);
    for (auto& c : p) c = nd(rng);
    des.points.push_back(p);
  }
  return des;
}

}  // namespace

TEST_CASE("projection reproduces basis functions") {
  const std::size_t d = 2;
  const TensorSpectrum spec(kIso, d);
  const auto head = MultiIndex();
  auto f = [&](std::span<const double> x) { return tensor_eigenfunction(spec, head, x); };
  for (std::size_t n : {1, 3, 6}) {
    const EigenProjector p = eigen_projection(kIso, d, n, f, 40);
    CHECK(p.coefficients()[0] == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t k = 1; k < n; ++k) CHECK(std::abs(p.coefficients()[k]) <= 1e-12);
    for (double x : {-0.7, 0.0, 1.2}) {
      const std::vector<double> pt = {x, 0.5 * x};
      CHECK(p(pt) == doctest::Approx(f(pt)).epsilon(1e-11));
    }
  }
}

TEST_CASE("projection annihilates functions outside the top-n set") {
  const TensorSpectrum spec(kIso, 2);
  const auto far = MultiIndex::from_dense({4, 3});
  auto f = [&](std::span<const double> x) { return tensor_eigenfunction(spec, far, x); };
  const EigenProjector p = eigen_projection(kIso, 2, 5, f, 40);
  for (double c : p.coefficients()) CHECK(std::abs(c) <= 1e-12);
  CHECK(std::abs(p(std::vector<double>{0.3, -0.2})) <= 1e-12);
}

TEST_CASE("projection error of K(., 0)") {
  // f = K(., 0) has L2 coefficients lambda_j phi_j(0); the tail is the oracle
  const UnivariateSpectrum s(1.0);
  auto f = [&](std::span<const double> x) { return kernel_eval(kIso, 1, x, std::vector<double>{0.0}); };
  const std::size_t n = 3;
  const EigenProjector p = eigen_projection(kIso, 1, n, f, 120);
  double tail = 0.0;
  for (std::size_t j = 60; j > n; --j) {
    const double c = s.eigenvalue(j) * s.eigenfunction(j, 0.0);
    tail += c * c;
  }
  const double err2 = integrate(1, 120, [&](std::span<const double> x) {
    const double r = f(x) - p(x);
    return r * r;
  });
  CHECK(std::abs(err2 - tail) <= 1e-8);
}

TEST_CASE("Parseval identity for finite expansions") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  for (std::size_t d : {1, 3, 8}) {
    const auto list = top_n_tensor_eigenvalues(kIso, d, 40);
    EigenExpansion f;
    for (std::size_t k = 0; k < 40; k += 3) f.terms.push_back({list.entries[k].index, nd(rng)});
    for (std::size_t n : {0, 1, 5, 20, 39}) {
      double tail = 0.0;
      for (const auto& t : f.terms) {
        std::size_t rank = 0;
        while (!(list.entries[rank].index == t.index)) ++rank;
        if (rank >= n) tail += std::exp(list.entries[rank].log_value) * t.coefficient * t.coefficient;
      }
      CHECK(projection_error(kIso, d, n, f) == doctest::Approx(std::sqrt(tail)).epsilon(1e-10));
    }
  }
}

TEST_CASE("minimal_error_all examples") {
  CHECK(minimal_error_all(kIso, 1, 0) == initial_error(kIso, 1));
  CHECK(minimal_error_all(kIso, 4, 0) == initial_error(kIso, 4));
  CHECK(minimal_error_all(kIso, 1, 3) == doctest::Approx(0.1855853).epsilon(1e-6));
  for (const auto& shape : {kIso, ShapeSequence::power_law(1.0, 2.0), ShapeSequence::isotropic(0.2)}) {
    for (std::size_t d : {1, 2, 7}) {
      for (std::size_t n : {0, 1, 10, 100, 1000}) {
        CHECK(minimal_error_all(shape, d, n) <= 1.0 / std::sqrt(static_cast<double>(n + 1)));
      }
    }
  }
}

TEST_CASE("spline_fit examples") {
  const SplineModel one = spline_fit(kIso, 1, Design{1, {{0.0}}}, {1.0});
  CHECK(one.coefficients()(0) == doctest::Approx(1.0).epsilon(1e-15));
  for (double x : {-1.0, 0.2, 3.0}) {
    CHECK(one(std::vector<double>{x}) == doctest::Approx(kernel_eval(kIso, 1, {{x}}, {{0.0}})).epsilon(1e-15));
  }

  const SplineModel twin = spline_fit(kIso, 1, Design{1, {{0.0}, {0.0}}}, {1.0, 1.0});
  CHECK(twin.coefficients()(0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(twin.coefficients()(1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(twin(std::vector<double>{0.7}) == doctest::Approx(one(std::vector<double>{0.7})).epsilon(1e-12));

  auto f = [](double x) { return std::exp(-(x - 0.3) * (x - 0.3)); };
  const Design sites{1, {{-1.0}, {0.0}, {1.0}}};
  const SplineModel s = spline_fit(kIso, 1, sites, {f(-1.0), f(0.0), f(1.0)});
  for (const auto& p : sites.points) CHECK(std::abs(s(p) - f(p[0])) <= 1e-10);
}

TEST_CASE("spline_fit preconditions") {
  CHECK_THROWS_AS(spline_fit(kIso, 1, Design{1, {}}, {}), InvalidArgument);
  CHECK_THROWS_AS(spline_fit(kIso, 1, Design{1, {{0.0}}}, {1.0, 2.0}), InvalidArgument);
}

TEST_CASE("spline interpolates on well-conditioned designs") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 1 + static_cast<std::size_t>(trial % 3);
    const Design des = random_points(d, 2 + static_cast<std::size_t>(trial % 12), rng);
    const GramMatrix g = gram_matrix(kIso, d, des.points);
    if (g.eigenvalues().minCoeff() <= 1e-8) continue;
    std::vector<double> y;
    for (std::size_t i = 0; i < des.size(); ++i) y.push_back(u(rng));
    const SplineModel s = spline_fit(kIso, d, des, y);
    for (std::size_t i = 0; i < des.size(); ++i) CHECK(std::abs(s(des.points[i]) - y[i]) <= 1e-8);
    ++checked;
  }
  CHECK(checked > 30);
}

TEST_CASE("minimal-norm coefficients on a singular Gram matrix") {
  // oracle: complete orthogonal decomposition of the same matrix
  const Design des{1, {{0.0}, {1.0}, {0.0}, {1.0}}};
  const std::vector<double> y = {0.5, -1.0, 0.5, -1.0};
  const SplineModel s = spline_fit(kIso, 1, des, y);
  const Eigen::MatrixXd k = gram_matrix(kIso, 1, des.points).matrix();
  const Eigen::VectorXd ref = k.completeOrthogonalDecomposition().solve(Eigen::Map<const Eigen::VectorXd>(y.data(), 4));
  CHECK((s.coefficients() - ref).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK(s.clip_threshold() > 0.0);
}

TEST_CASE("power_function examples") {
  std::mt19937_64 rng(9);
  const Design des = random_points(2, 8, rng);
  for (const auto& p : des.points) CHECK(power_function(kIso, 2, des, p) <= 1e-7);
  CHECK(power_function(kIso, 2, Design{2, {}}, std::vector<double>{0.3, 0.1}) == 1.0);
  const GramPseudoInverse gram(kIso, des);
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      const std::vector<double> x = {-2.0 + 0.45 * i, -2.0 + 0.45 * j};
      const double v = power_function(gram, x);
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("spline worst-case error examples") {
  CHECK(spline_worst_case_error(kIso, 1, Design{1, {}}, 200) == doctest::Approx(0.7861514).epsilon(1e-6));
  CHECK(std::abs(spline_worst_case_error(kIso, 1, Design{1, {}}, 200) - initial_error(kIso, 1)) <= 1e-6);
  CHECK(spline_worst_case_error(kIso, 1, Design{1, {{0.0}}}, 200) < initial_error(kIso, 1));
  CHECK_THROWS_AS(spline_worst_case_error(kIso, 5, Design{5, {}}, 2), InvalidArgument);
  CHECK_THROWS_AS(spline_worst_case_error(kIso, 2, Design{2, {}}, 100), ResourceLimit);
}

TEST_CASE("trace bound dominates the spectral error") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const Design des = random_points(1, 1 + static_cast<std::size_t>(trial), rng);
    const double spectral = spline_worst_case_error(kIso, 1, des, 60);
    const double trace = spline_worst_case_error(kIso, 1, des, 60, SplineErrorMethod::kTraceBound);
    CHECK(trace >= spectral - 1e-12);
  }
}

TEST_CASE("spline error is never below the optimal all-class error") {
  std::mt19937_64 rng(20240101);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t d = 1 + static_cast<std::size_t>(trial % 2);
    const std::size_t n = 1 + static_cast<std::size_t>(rng() % 20);
    const Design des = random_points(d, n, rng);
    const double e = spline_worst_case_error(kIso, d, des, d == 1 ? 60 : 24);
    CHECK(e >= minimal_error_all(kIso, d, n) - 1e-9);
  }
}

TEST_CASE("adding a point never increases the spline error") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = 1 + static_cast<std::size_t>(trial % 2);
    Design des = random_points(d, 12, rng);
    Design grown{d, {}};
    double prev = spline_worst_case_error(kIso, d, grown, d == 1 ? 60 : 24);
    for (const auto& p : des.points) {
      grown.points.push_back(p);
      const double e = spline_worst_case_error(kIso, d, grown, d == 1 ? 60 : 24);
      CHECK(e <= prev + 1e-8);
      prev = e;
    }
  }
}
