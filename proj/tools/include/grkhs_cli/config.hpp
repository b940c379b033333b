#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "grkhs/complexity.hpp"
#include "grkhs/shape.hpp"

namespace grkhs::cli {

/// Everything a subcommand reads. Field names double as JSON config keys.
struct ExperimentConfig {
  std::string command;
  std::string shape = "iso:1";
  std::vector<std::size_t> d = {1};
  std::size_t n = 10;
  std::size_t N = 100;
  std::vector<double> eps;
  std::string criterion = "abs";
  std::string info_class = "all";  // JSON key "class"
  std::size_t m = 200;
  std::uint64_t seed = 1;
  std::string design;  // file of design points; empty: random from seed
  std::size_t trials = 20;
  std::vector<std::size_t> window = {100, 10000};
  unsigned jobs = 1;
  std::string out;  // empty: stdout

  ShapeSequence parsed_shape() const { return ShapeSequence::parse(shape); }
  ErrorCriterion parsed_criterion() const;
  InformationClass parsed_class() const;

  /// Compact JSON echo, keys sorted, used in output headers.
  std::string to_json() const;
};

/// Merges a JSON document into `cfg`, skipping keys listed in `locked`
/// (flags given on the command line win). Throws InvalidArgument on unknown
/// keys or wrong types.
void merge_json(ExperimentConfig& cfg, const std::string& json_text, const std::vector<std::string>& locked);

/// "0.5,0.25,...,0.015625": comma list where "..." continues the geometric
/// progression set by the two preceding values up to the value after it.
std::vector<double> parse_real_list(const std::string& text);

/// Same for integers with an arithmetic progression ("1,2,...,32").
std::vector<std::size_t> parse_size_list(const std::string& text);

}  // namespace grkhs::cli
