#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "grkhs/error.hpp"
#include "grkhs/limits.hpp"
#include "grkhs_cli/commands.hpp"
#include "grkhs_cli/config.hpp"

namespace {

using grkhs::cli::ExperimentConfig;

struct RawFlags {
  std::string shape, d, eps, window, config;
};

// Flags shared by every subcommand; the ones a command ignores are harmless.
void add_common(CLI::App* sub, ExperimentConfig& cfg, RawFlags& raw) {
  sub->add_option("--shape", raw.shape, "shape rule: iso:<g>, powerlaw:<c>:<a>, geom:<q>, explicit:<g1,g2,...>");
  sub->add_option("--d", raw.d, "dimension list, e.g. 1,2,4 or 1,2,...,32");
  sub->add_option("--n", cfg.n, "count (eigenvalues, design size)");
  sub->add_option("--N", cfg.N, "largest n of an error sequence");
  sub->add_option("--eps", raw.eps, "tolerance list, e.g. 0.5,0.25,...,0.015625");
  sub->add_option("--criterion", cfg.criterion, "abs or nor");
  sub->add_option("--class", cfg.info_class, "all or std");
  sub->add_option("--m", cfg.m, "quadrature nodes per coordinate");
  sub->add_option("--seed", cfg.seed, "random seed for designs");
  sub->add_option("--design", cfg.design, "design point file");
  sub->add_option("--trials", cfg.trials, "random designs in spline-bench");
  sub->add_option("--window", raw.window, "rate window lo,hi");
  sub->add_option("--jobs", cfg.jobs, "worker threads for independent cells");
  sub->add_option("--out", cfg.out, "output path (default stdout)");
  sub->add_option("--config", raw.config, "JSON config; flags override its values");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw grkhs::InvalidArgument("cannot read config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Worst-case approximation in Gaussian RKHS"};
  app.set_version_flag("--version", std::string(grkhs::version()));
  app.require_subcommand(1);

  ExperimentConfig cfg;
  RawFlags raw;
  const std::vector<std::pair<const char*, const char*>> commands = {
      {"spectrum", "univariate eigenvalues with the Nystrom comparison"},
      {"eigs", "largest n product eigenvalues"},
      {"decay", "e_all(n) sequence per d"},
      {"complexity", "n(eps, d) table with tractability fit"},
      {"rates", "fitted convergence rates"},
      {"spline-bench", "spline worst-case errors on designs"},
      {"verify", "acceptance suite"},
  };
  std::vector<CLI::App*> subs;
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub, cfg, raw);
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? grkhs::cli::kExitOk : grkhs::cli::kExitValidation;
  }

  try {
    CLI::App* sub = nullptr;
    for (CLI::App* s : subs) {
      if (s->parsed()) sub = s;
    }
    cfg.command = sub->get_name();
    if (!raw.shape.empty()) cfg.shape = raw.shape;
    if (!raw.d.empty()) cfg.d = grkhs::cli::parse_size_list(raw.d);
    if (!raw.eps.empty()) cfg.eps = grkhs::cli::parse_real_list(raw.eps);
    if (!raw.window.empty()) cfg.window = grkhs::cli::parse_size_list(raw.window);

    if (!raw.config.empty()) {
      std::vector<std::string> locked = {"command"};
      for (const CLI::Option* opt : sub->get_options()) {
        if (opt->count() > 0 && !opt->get_lnames().empty()) {
          const std::string name = opt->get_lnames().front();
          locked.push_back(name);
        }
      }
      grkhs::cli::merge_json(cfg, read_file(raw.config), locked);
    }
    return grkhs::cli::run(cfg);
  } catch (const grkhs::ResourceLimit& e) {
    std::cerr << "grkhs: resource limit: " << e.what() << " (lower bound " << e.partial_lower_bound() << ")\n";
    return grkhs::cli::kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "grkhs: " << e.what() << '\n';
    return grkhs::cli::kExitValidation;
  }
}
