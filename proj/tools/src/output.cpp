#include "grkhs_cli/output.hpp"

#include <iostream>

#include <fmt/format.h>

#include "grkhs/error.hpp"
#include "grkhs/limits.hpp"

namespace grkhs::cli {

std::string format_real(double v) { return fmt::format("{}", v); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

Output::Output(const ExperimentConfig& cfg, const std::string& path) : os_(&std::cout) {
  if (!path.empty()) {
    file_.open(path, std::ios::binary | std::ios::trunc);
    if (!file_) throw InvalidArgument("cannot open output file '" + path + "'");
    os_ = &file_;
  }
  comment(fmt::format("grkhs {} {}", version(), cfg.command));
  comment("config: " + cfg.to_json());
  comment(fmt::format("seed: {}", cfg.seed));
}

void Output::comment(const std::string& text) { *os_ << "# " << text << '\n'; }

void Output::row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) *os_ << ',';
    *os_ << csv_field(fields[i]);
  }
  *os_ << '\n';
}

std::string tagged_path(const std::string& path, const std::string& tag) {
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + "." + tag;
  return path.substr(0, dot) + "." + tag + path.substr(dot);
}

}  // namespace grkhs::cli
