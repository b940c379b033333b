#pragma once

#include <fstream>
#include <iosfwd>
#include <string>
#include <vector>

#include "grkhs_cli/config.hpp"

namespace grkhs::cli {

/// Shortest round-trip decimal form of a double ("." separator, no locale).
std::string format_real(double v);

/// CSV field, quoted when it holds a comma, quote or newline.
std::string csv_field(const std::string& s);

/// Destination of one command: the --out file, or stdout. Every stream starts
/// with '#' lines echoing the config, seed and library version.
class Output {
 public:
  Output(const ExperimentConfig& cfg, const std::string& path);

  std::ostream& stream() { return *os_; }
  void comment(const std::string& text);
  void row(const std::vector<std::string>& fields);

 private:
  std::ofstream file_;
  std::ostream* os_;
};

/// `path` with ".<tag>" inserted before its extension.
std::string tagged_path(const std::string& path, const std::string& tag);

}  // namespace grkhs::cli
