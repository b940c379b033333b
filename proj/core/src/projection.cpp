#include "grkhs/projection.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "grkhs/error.hpp"
#include "grkhs/limits.hpp"
#include "grkhs/quadrature.hpp"

namespace grkhs {

double tensor_eigenfunction(const TensorSpectrum& spectrum, const MultiIndex& index, std::span<const double> x) {
  const std::size_t d = spectrum.dimension();
  if (x.size() != d) throw InvalidArgument("tensor_eigenfunction: point dimension mismatch");
  double v = 1.0;
  for (std::size_t l = 0; l < d; ++l) v *= spectrum.coordinate(l).eigenfunction(index[l], x[l]);
  return v;
}

EigenProjector::EigenProjector(ShapeSequence shape, std::size_t d, TensorEigenList basis)
    : shape_(std::move(shape)), d_(d), basis_(std::move(basis)), spectrum_(shape_, d) {
  coefficients_.assign(basis_.entries.size(), 0.0);
}

void EigenProjector::fit(const std::function<double(std::span<const double>)>& f, std::size_t m) {
  if (d_ > 4) {
    throw InvalidArgument("black-box projection needs d <= 4; supply an eigen-expansion instead");
  }
  const QuadratureRule rule = gauss_hermite(m);
  const TensorGrid grid = tensor_grid(rule, d_);

  // phi_j(gamma_l; node_a) for every coordinate and every j the basis uses
  std::vector<std::vector<std::vector<double>>> table(d_);
  for (std::size_t l = 0; l < d_; ++l) {
    std::size_t jmax = 1;
    for (const auto& e : basis_.entries) jmax = std::max(jmax, e.index[l]);
    table[l].assign(m, {});
    for (std::size_t a = 0; a < m; ++a) table[l][a] = spectrum_.coordinate(l).eigenfunctions(jmax, rule.nodes[a]);
  }

  std::fill(coefficients_.begin(), coefficients_.end(), 0.0);
  std::vector<std::size_t> digit(d_, 0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double w = grid.weights[i];
    if (w != 0.0) {
      const double fw = w * f(grid.point(i));
      for (std::size_t k = 0; k < basis_.entries.size(); ++k) {
        double phi = 1.0;
        for (std::size_t l = 0; l < d_; ++l) phi *= table[l][digit[l]][basis_.entries[k].index[l] - 1];
        coefficients_[k] += fw * phi;
      }
    }
    for (std::size_t l = d_; l-- > 0;) {
      if (++digit[l] < m) break;
      digit[l] = 0;
    }
  }
}

void EigenProjector::fit(const EigenExpansion& f) {
  std::unordered_map<MultiIndex, double, MultiIndexHash> rkhs;
  for (const auto& term : f.terms) rkhs[term.index] += term.coefficient;
  for (std::size_t k = 0; k < basis_.entries.size(); ++k) {
    auto it = rkhs.find(basis_.entries[k].index);
    coefficients_[k] = it == rkhs.end() ? 0.0 : std::exp(0.5 * basis_.entries[k].log_value) * it->second;
  }
}

double EigenProjector::operator()(std::span<const double> x) const {
  double s = 0.0;
  for (std::size_t k = 0; k < basis_.entries.size(); ++k) {
    if (coefficients_[k] != 0.0) s += coefficients_[k] * tensor_eigenfunction(spectrum_, basis_.entries[k].index, x);
  }
  return s;
}

EigenProjector eigen_projection(const ShapeSequence& shape, std::size_t d, std::size_t n,
                                const std::function<double(std::span<const double>)>& f, std::size_t m) {
  EigenProjector p(shape, d, n == 0 ? TensorEigenList{d, {}} : top_n_tensor_eigenvalues(shape, d, n));
  p.fit(f, m);
  return p;
}

EigenProjector eigen_projection(const ShapeSequence& shape, std::size_t d, std::size_t n, const EigenExpansion& f) {
  EigenProjector p(shape, d, n == 0 ? TensorEigenList{d, {}} : top_n_tensor_eigenvalues(shape, d, n));
  p.fit(f);
  return p;
}

double projection_error(const ShapeSequence& shape, std::size_t d, std::size_t n, const EigenExpansion& f) {
  const TensorSpectrum spectrum(shape, d);
  std::unordered_set<MultiIndex, MultiIndexHash> kept;
  if (n > 0) {
    for (auto& e : top_n_tensor_eigenvalues(shape, d, n).entries) kept.insert(std::move(e.index));
  }
  std::unordered_map<MultiIndex, double, MultiIndexHash> rkhs;
  for (const auto& term : f.terms) rkhs[term.index] += term.coefficient;
  // deterministic summation order
  std::vector<std::pair<double, double>> tail;  // (log lambda, c)
  for (const auto& [index, c] : rkhs) {
    if (!kept.contains(index)) tail.emplace_back(spectrum.log_eigenvalue(index), c);
  }
  std::sort(tail.begin(), tail.end());
  double sq = 0.0;
  for (const auto& [log_lambda, c] : tail) sq += std::exp(log_lambda) * c * c;
  return std::sqrt(sq);
}

double minimal_error_all(const ShapeSequence& shape, std::size_t d, std::size_t n) {
  if (n == 0) return initial_error(shape, d);
  if (n + 1 > max_eigs()) {
    throw ResourceLimit("minimal_error_all needs " + std::to_string(n + 1) + " eigenvalues, guard is " +
                        std::to_string(max_eigs()));
  }
  TensorEigenEnumerator e(shape, d);
  TensorEigenvalue last{};
  for (std::size_t i = 0; i <= n; ++i) last = e.next();
  return std::exp(0.5 * last.log_value);
}

}  // namespace grkhs
