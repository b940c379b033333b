#include "grkhs/complexity.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include <Eigen/Dense>

#include "grkhs/error.hpp"
#include "grkhs/kernel.hpp"
#include "grkhs/limits.hpp"
#include "grkhs/projection.hpp"
#include "grkhs/spectrum.hpp"
#include "grkhs/tensor_spectrum.hpp"

namespace grkhs {

std::string to_string(ErrorCriterion c) { return c == ErrorCriterion::kAbsolute ? "abs" : "nor"; }
std::string to_string(InformationClass c) { return c == InformationClass::kAll ? "all" : "std"; }

std::string to_string(TractabilityClass c) {
  switch (c) {
    case TractabilityClass::kStrongPoly: return "strong-poly";
    case TractabilityClass::kPoly: return "poly";
    case TractabilityClass::kQuasiPolyConsistent: return "quasi-poly-consistent";
    case TractabilityClass::kInconclusive: return "inconclusive";
  }
  return "inconclusive";
}

DecayRate decay_rate_r(const ShapeSequence& shape) {
  const double value = std::visit(
      [](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, ShapeSequence::Isotropic>) {
          return 0.0;
        } else if constexpr (std::is_same_v<K, ShapeSequence::PowerLaw>) {
          return k.exponent;
        } else if constexpr (std::is_same_v<K, ShapeSequence::Geometric>) {
          return std::numeric_limits<double>::infinity();
        } else {
          throw NotApplicable("a finite explicit shape list has no asymptotic decay rate");
        }
      },
      shape.kind());
  return DecayRate{value, shape};
}

ErrorSequence error_sequence_all(const ShapeSequence& shape, std::size_t d, std::size_t N) {
  if (N + 1 > max_eigs()) {
    throw ResourceLimit("error sequence of length " + std::to_string(N + 1) + " exceeds the enumeration guard");
  }
  ErrorSequence seq;
  seq.provenance = ErrorSequence::Provenance::kAllExact;
  seq.values.reserve(N + 1);
  TensorEigenEnumerator e(shape, d);
  for (std::size_t n = 0; n <= N; ++n) seq.values.push_back(std::exp(0.5 * e.next().log_value));
  return seq;
}

double criterion_scale(const ShapeSequence& shape, std::size_t d, ErrorCriterion criterion) {
  return criterion == ErrorCriterion::kAbsolute ? 1.0 : initial_error(shape, d);
}

// ------------------------------------------------------------------ counting

namespace {

using u128 = unsigned __int128;
constexpr u128 kCountCap = std::numeric_limits<std::uint64_t>::max();

struct Counter {
  std::vector<double> log_omega;    // per omega group, descending omega
  std::vector<std::size_t> size;    // group multiplicity
  double log_top;
  double log_threshold;
  std::uint64_t max_work;
  std::uint64_t work = 0;
  std::uint64_t confirmed = 0;  // lower bound available if we stop early

  [[noreturn]] void exhausted(const char* why) const { throw ResourceLimit(why, confirmed); }

  // Indices whose excess over groups >= g, added to `acc` in group order,
  // keeps log_top + excess above the threshold. Uses the same per-group
  // log(omega) as the enumerator; the summation order differs, so the two
  // routes can disagree only for a threshold within rounding of an eigenvalue.
  u128 count(std::size_t g, double acc) {
    if (++work > max_work) exhausted("eigenvalue counting work guard reached");
    u128 total = 1;  // all remaining excesses zero
    for (std::size_t h = g; h < log_omega.size(); ++h) {
      if (!(log_top + (acc + log_omega[h]) > log_threshold)) break;  // omega nonincreasing: later groups fail too
      // at least one unit of excess in group h, none in groups g..h-1
      const std::size_t m = size[h];
      u128 ways = 1;  // C(k + m - 1, k) for k = 0
      for (std::uint64_t k = 1;; ++k) {
        const double next = acc + static_cast<double>(k) * log_omega[h];
        if (!(log_top + next > log_threshold)) break;
        // ways(k) = ways(k-1) * (k + m - 1) / k; m - 1 + k fits easily
        ways = ways * static_cast<u128>(k + m - 1) / k;
        if (ways > kCountCap) exhausted("eigenvalue count exceeds 64-bit range");
        // group total k spread over its m members: C(k+m-1, k) ways
        const u128 rest = count(h + 1, next);
        total += ways * rest;
        if (total > kCountCap) exhausted("eigenvalue count exceeds 64-bit range");
        if (g == 0) confirmed = static_cast<std::uint64_t>(total);
      }
    }
    return total;
  }
};

}  // namespace

std::uint64_t count_eigenvalues_above(const ShapeSequence& shape, std::size_t d, double log_threshold,
                                      std::uint64_t max_work) {
  const TensorSpectrum spectrum(shape, d);
  Counter c;
  c.log_top = spectrum.log_top();
  c.log_threshold = log_threshold;
  c.max_work = max_work == 0 ? kDefaultCountWork : max_work;
  const auto& groups = spectrum.omega_groups();
  for (std::size_t g = 0; g < groups.size(); ++g) {
    c.log_omega.push_back(spectrum.group_log_omega(g));
    c.size.push_back(groups[g].second);
  }
  if (!(c.log_top > log_threshold)) return 0;
  return static_cast<std::uint64_t>(c.count(0, 0.0));
}

std::uint64_t info_complexity(const ShapeSequence& shape, std::size_t d, double eps, ErrorCriterion criterion,
                              std::uint64_t max_work) {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidArgument("eps must lie in (0, 1)");
  // e(0) is the initial error; compare against it directly so eps == e(0) gives 0
  if (criterion == ErrorCriterion::kAbsolute && eps >= initial_error(shape, d)) return 0;
  double log_threshold = 2.0 * std::log(eps);
  if (criterion == ErrorCriterion::kNormalized) log_threshold += TensorSpectrum(shape, d).log_top();
  return count_eigenvalues_above(shape, d, log_threshold, max_work);
}

double quasipoly_exponent(double gamma) {
  const UnivariateSpectrum s(gamma);
  return 2.0 / -s.log_omega();
}

// ---------------------------------------------------------------- rate fits

namespace {

double ls_slope(const std::vector<double>& x, const std::vector<double>& y, std::size_t lo, std::size_t hi) {
  const double n = static_cast<double>(hi - lo);
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = lo; i < hi; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = lo; i < hi; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

}  // namespace

RateEstimate estimate_rate(const ErrorSequence& seq, std::size_t lo, std::size_t hi) {
  if (lo < 1) throw InvalidArgument("rate window must start at n >= 1");
  if (hi <= lo || hi >= seq.values.size()) throw InvalidArgument("rate window outside the sequence");
  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t n = lo; n <= hi; ++n) {
    const double e = seq.values[n];
    if (!(e > 0.0) || !std::isfinite(e)) throw InvalidArgument("rate fit needs positive finite errors");
    x.push_back(std::log(static_cast<double>(n)));
    y.push_back(-std::log(e));
  }
  RateEstimate est;
  if (std::all_of(y.begin(), y.end(), [&](double v) { return v == y.front(); })) {
    est.degenerate = true;
    return est;
  }
  est.rate = ls_slope(x, y, 0, x.size());

  // split at the geometric middle of the window
  const double mid_log = 0.5 * (x.front() + x.back());
  std::size_t split = 0;
  while (split < x.size() && x[split] <= mid_log) ++split;
  if (split >= 2 && x.size() - split + 1 >= 2) {
    const double lower = ls_slope(x, y, 0, split);
    const double upper = ls_slope(x, y, split - 1, x.size());
    est.superpolynomial = lower > 0.0 && upper >= kSuperpolySlopeRatio * lower;
  }
  return est;
}

// ------------------------------------------------------------- plane fitting

PlaneFit fit_least_squares_plane(const std::vector<double>& x, const std::vector<double>& z,
                                 const std::vector<double>& y, double* relative_residual) {
  const auto n = static_cast<Eigen::Index>(y.size());
  if (n == 0 || x.size() != y.size() || z.size() != y.size()) throw InvalidArgument("plane fit: bad inputs");
  Eigen::MatrixXd a(n, 3);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto s = static_cast<std::size_t>(i);
    a(i, 0) = 1.0;
    a(i, 1) = x[s];
    a(i, 2) = z[s];
    b(i) = y[s];
  }
  const Eigen::Vector3d coef = a.completeOrthogonalDecomposition().solve(b);
  if (relative_residual != nullptr) {
    const double rms_y = std::sqrt(b.squaredNorm() / static_cast<double>(n));
    const double rms_r = std::sqrt((a * coef - b).squaredNorm() / static_cast<double>(n));
    *relative_residual = rms_y > 0.0 ? rms_r / rms_y : 0.0;
  }
  return PlaneFit{coef(0), coef(1), coef(2)};
}

namespace {

// Total slack of the lowest plane with slopes (p, q) lying above every point:
// N * max_i(y_i - p x_i - q z_i) + p sum x + q sum z - sum y.
struct SlackObjective {
  const std::vector<double>& x;
  const std::vector<double>& z;
  const std::vector<double>& y;
  double sum_x = 0.0;
  double sum_z = 0.0;
  double sum_y = 0.0;
  std::vector<double> z_values;          // distinct z, ascending
  std::vector<std::size_t> z_group;      // point -> index into z_values

  SlackObjective(const std::vector<double>& xs, const std::vector<double>& zs, const std::vector<double>& ys)
      : x(xs), z(zs), y(ys) {
    for (std::size_t i = 0; i < y.size(); ++i) {
      sum_x += x[i];
      sum_z += z[i];
      sum_y += y[i];
    }
    z_values = z;
    std::sort(z_values.begin(), z_values.end());
    z_values.erase(std::unique(z_values.begin(), z_values.end()), z_values.end());
    z_group.resize(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
      z_group[i] = static_cast<std::size_t>(std::lower_bound(z_values.begin(), z_values.end(), z[i]) - z_values.begin());
    }
  }

  // For fixed p: per distinct z the binding intercept b_z, then the exact
  // minimiser over q >= 0 among the kinks of the piecewise-linear objective.
  std::pair<double, double> best_q(double p) const {
    std::vector<double> b(z_values.size(), -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < y.size(); ++i) b[z_group[i]] = std::max(b[z_group[i]], y[i] - p * x[i]);
    const double n = static_cast<double>(y.size());
    auto value = [&](double q) {
      double top = -std::numeric_limits<double>::infinity();
      for (std::size_t g = 0; g < b.size(); ++g) top = std::max(top, b[g] - q * z_values[g]);
      return n * top + p * sum_x + q * sum_z - sum_y;
    };
    double best_q = 0.0;
    double best = value(0.0);
    for (std::size_t g = 0; g < b.size(); ++g) {
      for (std::size_t h = g + 1; h < b.size(); ++h) {
        const double q = (b[h] - b[g]) / (z_values[h] - z_values[g]);
        if (q > 0.0 && std::isfinite(q)) {
          const double v = value(q);
          if (v < best || (v == best && q < best_q)) {
            best = v;
            best_q = q;
          }
        }
      }
    }
    return {best, best_q};
  }

  double intercept(double p, double q) const {
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < y.size(); ++i) top = std::max(top, y[i] - p * x[i] - q * z[i]);
    return top;
  }
};

}  // namespace

PlaneFit fit_dominating_plane(const std::vector<double>& x, const std::vector<double>& z,
                              const std::vector<double>& y) {
  if (y.empty() || x.size() != y.size() || z.size() != y.size()) throw InvalidArgument("plane fit: bad inputs");
  const SlackObjective obj(x, z, y);

  // p beyond (y range) / (smallest positive x) cannot lower the slack
  double x_min = std::numeric_limits<double>::infinity();
  for (double v : x) {
    if (v > 0.0) x_min = std::min(x_min, v);
  }
  const auto [y_lo, y_hi] = std::minmax_element(y.begin(), y.end());
  double hi = std::isfinite(x_min) ? 1.0 + (*y_hi - *y_lo) / x_min : 1.0;
  double lo = 0.0;

  // golden-section search on the convex function p -> min_q slack(p, q)
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = hi - inv_phi * (hi - lo);
  double b = lo + inv_phi * (hi - lo);
  double fa = obj.best_q(a).first;
  double fb = obj.best_q(b).first;
  for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, hi); ++it) {
    if (fa <= fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - inv_phi * (hi - lo);
      fa = obj.best_q(a).first;
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + inv_phi * (hi - lo);
      fb = obj.best_q(b).first;
    }
  }
  double p = 0.5 * (lo + hi);
  // the boundary p = 0 is a common optimum and golden section only nears it
  if (obj.best_q(0.0).first <= obj.best_q(p).first) p = 0.0;
  const double q = obj.best_q(p).second;
  return PlaneFit{obj.intercept(p, q), p, q};
}

// ------------------------------------------------------------------- probing

ComplexityReport tractability_probe(const ShapeSequence& shape, const std::vector<double>& eps_grid,
                                    const std::vector<std::size_t>& d_grid, ErrorCriterion criterion,
                                    InformationClass info_class, const ProbeOptions& options) {
  if (info_class != InformationClass::kAll) {
    throw InvalidArgument("n(eps, d) is exactly computable only for the all-functionals class");
  }
  if (eps_grid.empty() || d_grid.empty()) throw InvalidArgument("tractability grids must be nonempty");
  for (double e : eps_grid) {
    if (!(e > 0.0 && e < 1.0)) throw InvalidArgument("eps grid values must lie in (0, 1)");
  }
  for (std::size_t d : d_grid) shape.require_dimension(d);

  ComplexityReport report{.shape = shape,
                          .criterion = criterion,
                          .info_class = info_class,
                          .d_grid = d_grid,
                          .eps_grid = eps_grid,
                          .cells = {},
                          .envelope = {},
                          .least_squares = {}};
  report.cells.resize(d_grid.size() * eps_grid.size());
  for (std::size_t i = 0; i < d_grid.size(); ++i) {
    for (std::size_t j = 0; j < eps_grid.size(); ++j) {
      report.cells[i * eps_grid.size() + j] = ComplexityCell{d_grid[i], eps_grid[j], 0, false};
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t c = next++; c < report.cells.size(); c = next++) {
      ComplexityCell& cell = report.cells[c];
      try {
        cell.n = info_complexity(shape, cell.d, cell.eps, criterion, options.max_work);
      } catch (const ResourceLimit& e) {
        cell.n = e.partial_lower_bound();
        cell.lower_bound = true;
      }
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(report.cells.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }

  std::vector<double> x;
  std::vector<double> z;
  std::vector<double> y;
  std::size_t d_max = *std::max_element(d_grid.begin(), d_grid.end());
  bool any_lower_bound = false;
  double corner_key = -1.0;
  for (const auto& cell : report.cells) {
    any_lower_bound = any_lower_bound || cell.lower_bound;
    const double inv_eps = 1.0 / cell.eps;
    const double dd = static_cast<double>(cell.d);
    const double ln_n = cell.n > 0 ? std::log(static_cast<double>(cell.n)) : 0.0;
    const double weak = ln_n / (inv_eps + dd);
    report.weak_trend_max = std::max(report.weak_trend_max, weak);
    if (inv_eps + dd > corner_key) {
      corner_key = inv_eps + dd;
      report.weak_trend_corner = weak;
    }
    if (cell.n == 0) continue;
    x.push_back(std::log(inv_eps));
    z.push_back(std::log(dd));
    y.push_back(ln_n);
    const double t = ln_n / ((1.0 + std::log(dd)) * (1.0 + std::log(inv_eps)));
    report.t_hat = std::max(report.t_hat, t);
    if (2 * cell.d <= d_max) report.t_hat_lower_half = std::max(report.t_hat_lower_half, t);
  }
  if (report.t_hat_lower_half == 0.0) report.t_hat_lower_half = report.t_hat;

  if (y.size() < 3) {
    report.classification = TractabilityClass::kInconclusive;
    return report;
  }
  report.envelope = fit_dominating_plane(x, z, y);
  report.least_squares = fit_least_squares_plane(x, z, y, &report.relative_residual);

  if (any_lower_bound) {
    report.classification = TractabilityClass::kInconclusive;
  } else if (report.envelope.q <= kStrongPolyMaxQ) {
    report.classification = TractabilityClass::kStrongPoly;
  } else if (report.relative_residual <= kPolyMaxRelativeResidual) {
    report.classification = TractabilityClass::kPoly;
  } else if (report.t_hat <= kQuasiPolyMaxGrowth * report.t_hat_lower_half) {
    report.classification = TractabilityClass::kQuasiPolyConsistent;
  } else {
    report.classification = TractabilityClass::kInconclusive;
  }
  return report;
}

}  // namespace grkhs
