#include "grkhs_cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <fmt/format.h>

#include "grkhs/complexity.hpp"
#include "grkhs/error.hpp"
#include "grkhs/kernel.hpp"
#include "grkhs/projection.hpp"
#include "grkhs/quadrature.hpp"
#include "grkhs/spectrum.hpp"
#include "grkhs/tensor_spectrum.hpp"
#include "grkhs_cli/acceptance.hpp"
#include "grkhs_cli/output.hpp"

namespace grkhs::cli {

namespace {

std::string u(std::uint64_t v) { return std::to_string(v); }

std::size_t single_d(const ExperimentConfig& cfg) {
  if (cfg.d.size() != 1) throw InvalidArgument(cfg.command + " takes a single --d value");
  return cfg.d.front();
}

}  // namespace

Design random_design(std::size_t d, std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> coord(0.0, std::sqrt(GaussianWeight::coordinate_variance()));
  Design design{d, {}};
  design.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Point p(d);
    for (auto& c : p) c = coord(rng);
    design.points.push_back(std::move(p));
  }
  return design;
}

Design read_design(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read design file '" + path + "'");
  Design design;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (char& c : line) {
      if (c == ',') c = ' ';
    }
    std::istringstream ss(line);
    ss.imbue(std::locale::classic());
    Point p;
    double v = 0.0;
    while (ss >> v) p.push_back(v);
    if (!ss.eof()) throw InvalidArgument("bad number in design file '" + path + "'");
    if (p.empty()) continue;
    if (design.points.empty()) design.dimension = p.size();
    if (p.size() != design.dimension) throw InvalidArgument("design points differ in dimension");
    design.points.push_back(std::move(p));
  }
  return design;
}

int run_spectrum(const ExperimentConfig& cfg) {
  const ShapeSequence shape = cfg.parsed_shape();
  const std::size_t d = single_d(cfg);
  shape.require_dimension(d);
  if (cfg.n < 1 || cfg.n > cfg.m) throw InvalidArgument("spectrum needs 1 <= n <= m");
  Output out(cfg, cfg.out);
  out.row({"coordinate", "gamma", "j", "lambda", "lambda_nystrom", "rel_diff"});
  for (std::size_t l = 1; l <= d; ++l) {
    const UnivariateSpectrum s(shape.gamma(l));
    const std::vector<double> ny = nystrom_eigs(s.gamma(), cfg.m, cfg.n);
    for (std::size_t j = 1; j <= cfg.n; ++j) {
      const double lam = s.eigenvalue(j);
      out.row({u(l), format_real(s.gamma()), u(j), format_real(lam), format_real(ny[j - 1]),
               format_real(std::abs(ny[j - 1] - lam) / lam)});
    }
  }
  return kExitOk;
}

int run_eigs(const ExperimentConfig& cfg) {
  const ShapeSequence shape = cfg.parsed_shape();
  const std::size_t d = single_d(cfg);
  const TensorEigenList list = top_n_tensor_eigenvalues(shape, d, cfg.n);
  Output out(cfg, cfg.out);
  out.row({"rank", "index", "log_lambda", "lambda"});
  for (std::size_t r = 0; r < list.entries.size(); ++r) {
    const auto& e = list.entries[r];
    out.row({u(r + 1), e.index.to_string(d), format_real(e.log_value), format_real(e.value)});
  }
  return kExitOk;
}

int run_decay(const ExperimentConfig& cfg) {
  const ShapeSequence shape = cfg.parsed_shape();
  for (std::size_t d : cfg.d) shape.require_dimension(d);
  const bool split_files = cfg.d.size() > 1 && !cfg.out.empty();
  std::unique_ptr<Output> shared;
  if (!split_files) shared = std::make_unique<Output>(cfg, cfg.out);
  for (std::size_t d : cfg.d) {
    const ErrorSequence seq = error_sequence_all(shape, d, cfg.N);
    std::unique_ptr<Output> own;
    if (split_files) own = std::make_unique<Output>(cfg, tagged_path(cfg.out, "d" + u(d)));
    Output& out = split_files ? *own : *shared;
    out.comment("d: " + u(d));
    out.row({"n", "e_all", "e_all_over_init"});
    const double init = seq.values.front();
    for (std::size_t n = 0; n < seq.values.size(); ++n) {
      out.row({u(n), format_real(seq.values[n]), format_real(seq.values[n] / init)});
    }
  }
  return kExitOk;
}

int run_complexity(const ExperimentConfig& cfg) {
  const ShapeSequence shape = cfg.parsed_shape();
  const ErrorCriterion criterion = cfg.parsed_criterion();
  if (cfg.parsed_class() == InformationClass::kStd) {
    throw InvalidArgument("n(eps, d) is computable only for --class all; use spline-bench for function values");
  }
  if (cfg.eps.empty()) throw InvalidArgument("complexity needs --eps");
  const ComplexityReport rep =
      tractability_probe(shape, cfg.eps, cfg.d, criterion, InformationClass::kAll, ProbeOptions{0, cfg.jobs});
  Output out(cfg, cfg.out);
  out.row({"d", "eps", "n", "criterion"});
  bool partial = false;
  for (const auto& cell : rep.cells) {
    out.row({u(cell.d), format_real(cell.eps), u(cell.n), to_string(criterion)});
    partial = partial || cell.lower_bound;
  }
  for (const auto& cell : rep.cells) {
    if (cell.lower_bound) out.comment(fmt::format("lower bound only: d={} eps={}", cell.d, format_real(cell.eps)));
  }
  out.comment(fmt::format("envelope fit: log_c={} p={} q={}", format_real(rep.envelope.log_c),
                          format_real(rep.envelope.p), format_real(rep.envelope.q)));
  out.comment(fmt::format("least-squares fit: log_c={} p={} q={} relative_residual={}",
                          format_real(rep.least_squares.log_c), format_real(rep.least_squares.p),
                          format_real(rep.least_squares.q), format_real(rep.relative_residual)));
  out.comment(fmt::format("t_hat={} t_hat_lower_half={}", format_real(rep.t_hat), format_real(rep.t_hat_lower_half)));
  out.comment(fmt::format("weak trend ln n/(1/eps+d): corner={} max={}", format_real(rep.weak_trend_corner),
                          format_real(rep.weak_trend_max)));
  out.comment("classification: " + to_string(rep.classification));
  return partial ? kExitResource : kExitOk;
}

int run_rates(const ExperimentConfig& cfg) {
  const ShapeSequence shape = cfg.parsed_shape();
  if (cfg.window.size() != 2) throw InvalidArgument("--window takes lo,hi");
  const std::size_t lo = cfg.window[0];
  const std::size_t hi = cfg.window[1];
  if (lo < 1 || hi <= lo) throw InvalidArgument("--window needs 1 <= lo < hi");
  if (cfg.parsed_class() == InformationClass::kStd) {
    throw InvalidArgument("rates are exact only for --class all");
  }
  Output out(cfg, cfg.out);
  out.row({"shape", "d", "window_lo", "window_hi", "rate", "superpoly_flag"});
  for (std::size_t d : cfg.d) {
    const ErrorSequence seq = error_sequence_all(shape, d, hi);
    const RateEstimate est = estimate_rate(seq, lo, hi);
    out.row({shape.to_string(), u(d), u(lo), u(hi), format_real(est.rate), est.superpolynomial ? "1" : "0"});
    if (est.degenerate) out.comment(fmt::format("d={}: constant errors over the window", d));
  }
  return kExitOk;
}

int run_spline_bench(const ExperimentConfig& cfg) {
  const ShapeSequence shape = cfg.parsed_shape();
  std::vector<Design> designs;
  if (!cfg.design.empty()) {
    designs.push_back(read_design(cfg.design));
    shape.require_dimension(designs.front().dimension);
  } else {
    const std::size_t d = single_d(cfg);
    shape.require_dimension(d);
    std::mt19937_64 rng(cfg.seed);
    for (std::size_t t = 0; t < cfg.trials; ++t) designs.push_back(random_design(d, cfg.n, rng));
  }
  Output out(cfg, cfg.out);
  out.row({"trial", "d", "n", "e_spline", "e_all", "ratio"});
  for (std::size_t t = 0; t < designs.size(); ++t) {
    const Design& design = designs[t];
    const std::size_t d = design.dimension;
    const double e_std = spline_worst_case_error(shape, d, design, cfg.m);
    const double e_all = minimal_error_all(shape, d, design.size());
    out.row({u(t), u(d), u(design.size()), format_real(e_std), format_real(e_all), format_real(e_std / e_all)});
  }
  return kExitOk;
}

int run_verify(const ExperimentConfig& cfg) {
  const std::vector<CriterionResult> results = run_acceptance();
  Output out(cfg, cfg.out);
  bool all = true;
  for (const auto& r : results) {
    out.stream() << render(r) << '\n';
    all = all && r.pass;
  }
  out.comment(all ? "all criteria passed" : "some criteria failed");
  return all ? kExitOk : kExitVerifyFailed;
}

int run(const ExperimentConfig& cfg) {
  if (cfg.command == "spectrum") return run_spectrum(cfg);
  if (cfg.command == "eigs") return run_eigs(cfg);
  if (cfg.command == "decay") return run_decay(cfg);
  if (cfg.command == "complexity") return run_complexity(cfg);
  if (cfg.command == "rates") return run_rates(cfg);
  if (cfg.command == "spline-bench") return run_spline_bench(cfg);
  if (cfg.command == "verify") return run_verify(cfg);
  throw InvalidArgument("unknown command '" + cfg.command + "'");
}

}  // namespace grkhs::cli
