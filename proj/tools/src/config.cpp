#include "grkhs_cli/config.hpp"

#include <charconv>
#include <cmath>
#include <set>

#include <json.hpp>

#include "grkhs/error.hpp"

namespace grkhs::cli {

using nlohmann::json;

namespace {

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    std::string item = text.substr(start, comma - start);
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    parts.push_back(b == std::string::npos ? std::string() : item.substr(b, e - b + 1));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return parts;
}

template <class T>
T parse_number(const std::string& s) {
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw InvalidArgument("not a number: '" + s + "'");
  return value;
}

constexpr std::size_t kMaxListLength = 100000;

}  // namespace

std::vector<double> parse_real_list(const std::string& text) {
  const auto parts = split(text);
  std::vector<double> out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] != "...") {
      out.push_back(parse_number<double>(parts[i]));
      continue;
    }
    if (out.size() < 2 || i + 1 >= parts.size() || parts[i + 1] == "...") {
      throw InvalidArgument("'...' needs two values before it and one after");
    }
    const double a = out[out.size() - 2];
    const double b = out.back();
    const double last = parse_number<double>(parts[i + 1]);
    if (!(a > 0.0 && b > 0.0 && last > 0.0) || a == b) throw InvalidArgument("'...' needs a positive geometric progression");
    const double ratio = b / a;
    // count steps to `last`, then regenerate from the anchor to avoid drift
    const double steps = std::log(last / b) / std::log(ratio);
    const double k = std::round(steps);
    if (k < 1.0 || std::abs(steps - k) > 1e-9 || k > static_cast<double>(kMaxListLength)) {
      throw InvalidArgument("'" + parts[i + 1] + "' is not reached by the progression before '...'");
    }
    for (int j = 1; j < static_cast<int>(k); ++j) out.push_back(b * std::pow(ratio, j));
    out.push_back(last);
    ++i;
  }
  if (out.empty()) throw InvalidArgument("empty list");
  return out;
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  const auto parts = split(text);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] != "...") {
      out.push_back(parse_number<std::size_t>(parts[i]));
      continue;
    }
    if (out.size() < 2 || i + 1 >= parts.size() || parts[i + 1] == "...") {
      throw InvalidArgument("'...' needs two values before it and one after");
    }
    const std::size_t a = out[out.size() - 2];
    const std::size_t b = out.back();
    const std::size_t last = parse_number<std::size_t>(parts[i + 1]);
    if (b <= a || last <= b || (last - b) % (b - a) != 0 || (last - b) / (b - a) > kMaxListLength) {
      throw InvalidArgument("'...' needs an increasing arithmetic progression ending at '" + parts[i + 1] + "'");
    }
    for (std::size_t v = b + (b - a); v <= last; v += b - a) out.push_back(v);
    ++i;
  }
  if (out.empty()) throw InvalidArgument("empty list");
  return out;
}

ErrorCriterion ExperimentConfig::parsed_criterion() const {
  if (criterion == "abs" || criterion == "absolute") return ErrorCriterion::kAbsolute;
  if (criterion == "nor" || criterion == "normalized") return ErrorCriterion::kNormalized;
  throw InvalidArgument("criterion must be abs or nor");
}

InformationClass ExperimentConfig::parsed_class() const {
  if (info_class == "all") return InformationClass::kAll;
  if (info_class == "std") return InformationClass::kStd;
  throw InvalidArgument("class must be all or std");
}

std::string ExperimentConfig::to_json() const {
  json j;
  j["command"] = command;
  j["shape"] = shape;
  j["d"] = d;
  j["n"] = n;
  j["N"] = N;
  j["eps"] = eps;
  j["criterion"] = criterion;
  j["class"] = info_class;
  j["m"] = m;
  j["seed"] = seed;
  j["design"] = design;
  j["trials"] = trials;
  j["window"] = window;
  j["jobs"] = jobs;
  j["out"] = out;
  return j.dump();  // std::map keys: sorted
}

void merge_json(ExperimentConfig& cfg, const std::string& json_text, const std::vector<std::string>& locked) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
  const std::set<std::string> skip(locked.begin(), locked.end());
  try {
    for (const auto& [key, value] : j.items()) {
      if (skip.count(key)) continue;
      if (key == "command") {
        cfg.command = value.get<std::string>();
      } else if (key == "shape") {
        cfg.shape = value.get<std::string>();
      } else if (key == "d") {
        cfg.d = value.is_string() ? parse_size_list(value.get<std::string>()) : value.get<std::vector<std::size_t>>();
      } else if (key == "n") {
        cfg.n = value.get<std::size_t>();
      } else if (key == "N") {
        cfg.N = value.get<std::size_t>();
      } else if (key == "eps") {
        cfg.eps = value.is_string() ? parse_real_list(value.get<std::string>()) : value.get<std::vector<double>>();
      } else if (key == "criterion") {
        cfg.criterion = value.get<std::string>();
      } else if (key == "class") {
        cfg.info_class = value.get<std::string>();
      } else if (key == "m") {
        cfg.m = value.get<std::size_t>();
      } else if (key == "seed") {
        cfg.seed = value.get<std::uint64_t>();
      } else if (key == "design") {
        cfg.design = value.get<std::string>();
      } else if (key == "trials") {
        cfg.trials = value.get<std::size_t>();
      } else if (key == "window") {
        cfg.window = value.get<std::vector<std::size_t>>();
      } else if (key == "jobs") {
        cfg.jobs = value.get<unsigned>();
      } else if (key == "out") {
        cfg.out = value.get<std::string>();
      } else {
        throw InvalidArgument("unknown config key '" + key + "'");
      }
    }
  } catch (const json::type_error& e) {
    throw InvalidArgument(std::string("config value has the wrong type: ") + e.what());
  } catch (const json::out_of_range& e) {
    throw InvalidArgument(std::string("config value out of range: ") + e.what());
  }
}

}  // namespace grkhs::cli
