#pragma once

#include "grkhs_cli/config.hpp"

namespace grkhs::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitResource = 2;
inline constexpr int kExitVerifyFailed = 3;

/// Runs cfg.command. Library exceptions propagate; main() maps them to exit
/// codes.
int run(const ExperimentConfig& cfg);

int run_spectrum(const ExperimentConfig& cfg);
int run_eigs(const ExperimentConfig& cfg);
int run_decay(const ExperimentConfig& cfg);
int run_complexity(const ExperimentConfig& cfg);
int run_rates(const ExperimentConfig& cfg);
int run_spline_bench(const ExperimentConfig& cfg);
int run_verify(const ExperimentConfig& cfg);

}  // namespace grkhs::cli

#include <random>

#include "grkhs/spline.hpp"

namespace grkhs::cli {

/// n points drawn from the Gaussian weight, N(0, 1/2) per coordinate.
Design random_design(std::size_t d, std::size_t n, std::mt19937_64& rng);

/// One point per line, coordinates separated by commas or whitespace; '#'
/// starts a comment. All points must have the same dimension.
Design read_design(const std::string& path);

}  // namespace grkhs::cli
