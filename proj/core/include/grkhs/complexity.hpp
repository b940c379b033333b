#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "grkhs/shape.hpp"

namespace grkhs {

enum class ErrorCriterion { kAbsolute, kNormalized };
enum class InformationClass { kAll, kStd };

std::string to_string(ErrorCriterion c);
std::string to_string(InformationClass c);

/// Decay rate r(gamma) = sup{beta > 0 : sum_l gamma_l^(1/beta) < inf}, 0 for the
/// empty set.
struct DecayRate {
  double value;  // may be +infinity
  ShapeSequence shape;
};

/// Analytic r(gamma) per closed-form rule. Throws NotApplicable for explicit
/// (finite) lists.
DecayRate decay_rate_r(const ShapeSequence& shape);

struct ErrorSequence {
  enum class Provenance { kAllExact, kStdEmpirical };
  std::vector<double> values;  // e(0), e(1), ...
  Provenance provenance = Provenance::kAllExact;
};

/// e(n) = minimal_error_all(shape, d, n) for n = 0..N.
ErrorSequence error_sequence_all(const ShapeSequence& shape, std::size_t d, std::size_t N);

/// CRI_d: 1 for the absolute criterion, |I_d| for the normalised one.
double criterion_scale(const ShapeSequence& shape, std::size_t d, ErrorCriterion criterion);

/// Smallest n with minimal_error_all(shape, d, n) <= eps * CRI_d, i.e. the
/// number of product eigenvalues strictly above (eps * CRI_d)^2. Counted
/// combinatorially per block of equal omegas without materialising the
/// eigenvalues. Throws ResourceLimit (with a partial lower bound) when
/// `max_work` recursion steps or the 64-bit count range are exhausted.
std::uint64_t info_complexity(const ShapeSequence& shape, std::size_t d, double eps,
                              ErrorCriterion criterion, std::uint64_t max_work = 0 /* default */);

/// Number of product eigenvalues strictly greater than exp(log_threshold).
std::uint64_t count_eigenvalues_above(const ShapeSequence& shape, std::size_t d, double log_threshold,
                                      std::uint64_t max_work = 0);

/// t = 2 / ln(1/omega_gamma).
double quasipoly_exponent(double gamma);

struct RateEstimate {
  double rate = 0.0;
  /// Local slope in the upper half of the window is at least 1.5x the slope in
  /// the lower half: decay faster than any fixed power over the window.
  bool superpolynomial = false;
  /// All values in the window equal (rate reported as 0).
  bool degenerate = false;
};

inline constexpr double kSuperpolySlopeRatio = 1.5;

/// Least-squares slope of -ln e(n) against ln n for n in [lo, hi] (n >= 1,
/// indices into seq.values).
RateEstimate estimate_rate(const ErrorSequence& seq, std::size_t lo, std::size_t hi);

enum class TractabilityClass { kStrongPoly, kPoly, kQuasiPolyConsistent, kInconclusive };
std::string to_string(TractabilityClass c);

/// q-hat at or below this counts as d-independent.
inline constexpr double kStrongPolyMaxQ = 0.1;
/// Relative RMS residual of the least-squares ln n plane accepted as
/// polynomial.
inline constexpr double kPolyMaxRelativeResidual = 0.05;
/// t-hat over the full d range may exceed t-hat over the lower half of the d
/// range by at most this factor to count as bounded.
inline constexpr double kQuasiPolyMaxGrowth = 1.25;

struct ComplexityCell {
  std::size_t d;
  double eps;
  std::uint64_t n;
  bool lower_bound = false;  // guard hit; n is only a lower bound
};

struct PlaneFit {
  double log_c = 0.0;
  double p = 0.0;
  double q = 0.0;
};

struct ComplexityReport {
  ShapeSequence shape;
  ErrorCriterion criterion;
  InformationClass info_class = InformationClass::kAll;
  std::vector<std::size_t> d_grid;
  std::vector<double> eps_grid;
  std::vector<ComplexityCell> cells;  // d-major, eps-minor, grid order

  /// Smallest dominating plane ln n <= ln C + p ln(1/eps) + q ln d over the
  /// cells with n > 0 (minimal total slack, p, q >= 0).
  PlaneFit envelope;
  /// Ordinary least-squares plane on the same cells.
  PlaneFit least_squares;
  double relative_residual = 0.0;

  /// max ln n / ((1 + ln d)(1 + ln 1/eps)).
  double t_hat = 0.0;
  /// Same maximum restricted to d <= max(d)/2.
  double t_hat_lower_half = 0.0;

  /// ln n / (1/eps + d) at the cell with the largest 1/eps + d, and the grid
  /// maximum. Reported, never used to classify.
  double weak_trend_corner = 0.0;
  double weak_trend_max = 0.0;

  TractabilityClass classification = TractabilityClass::kInconclusive;
};

/// Plane fits of y against (x, z) = (ln 1/eps, ln d). The dominating fit
/// minimises sum(plane - y) subject to plane >= y at every point.
PlaneFit fit_dominating_plane(const std::vector<double>& x, const std::vector<double>& z,
                              const std::vector<double>& y);
PlaneFit fit_least_squares_plane(const std::vector<double>& x, const std::vector<double>& z,
                                 const std::vector<double>& y, double* relative_residual = nullptr);

struct ProbeOptions {
  std::uint64_t max_work = 0;  // per cell, 0: default
  unsigned jobs = 1;           // worker threads for independent cells
};

/// Fills the n(eps, d) table for Lambda^all and classifies it. Only the "all"
/// information class is computable exactly; kStd throws InvalidArgument.
ComplexityReport tractability_probe(const ShapeSequence& shape, const std::vector<double>& eps_grid,
                                    const std::vector<std::size_t>& d_grid, ErrorCriterion criterion,
                                    InformationClass info_class = InformationClass::kAll,
                                    const ProbeOptions& options = {});

}  // namespace grkhs
