#include "grkhs/shape.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "grkhs/error.hpp"

namespace grkhs {
namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

double parse_number(std::string_view text, const std::string& context) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw InvalidArgument("malformed number '" + std::string(text) + "' in shape '" + context + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

ShapeSequence ShapeSequence::isotropic(double gamma) {
  if (!positive_finite(gamma)) throw InvalidArgument("isotropic shape parameter must be positive");
  return ShapeSequence(Isotropic{gamma});
}

ShapeSequence ShapeSequence::power_law(double scale, double exponent) {
  if (!positive_finite(scale)) throw InvalidArgument("power-law scale must be positive");
  if (!std::isfinite(exponent) || exponent < 0.0) {
    throw InvalidArgument("power-law exponent must be nonnegative");
  }
  return ShapeSequence(PowerLaw{scale, exponent});
}

ShapeSequence ShapeSequence::geometric(double base) {
  if (!(base > 0.0 && base < 1.0)) throw InvalidArgument("geometric base must lie in (0, 1)");
  return ShapeSequence(Geometric{base});
}

ShapeSequence ShapeSequence::explicit_list(std::vector<double> gammas) {
  if (gammas.empty()) throw InvalidArgument("explicit shape list is empty");
  for (double g : gammas) {
    if (!positive_finite(g)) throw InvalidArgument("explicit shape parameters must be positive");
  }
  return ShapeSequence(Explicit{std::move(gammas)});
}

double ShapeSequence::gamma(std::size_t l) const {
  if (l == 0) throw InvalidArgument("shape coordinates are 1-based");
  const double ld = static_cast<double>(l);
  double g = std::visit(
      [&](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Isotropic>) {
          return k.gamma;
        } else if constexpr (std::is_same_v<K, PowerLaw>) {
          return k.exponent == 0.0 ? k.scale : k.scale * std::pow(ld, -k.exponent);
        } else if constexpr (std::is_same_v<K, Geometric>) {
          return std::pow(k.base, ld);
        } else {
          if (l > k.gammas.size()) {
            throw InvalidArgument("explicit shape defines " + std::to_string(k.gammas.size()) +
                                  " coordinates, requested coordinate " + std::to_string(l));
          }
          return k.gammas[l - 1];
        }
      },
      kind_);
  if (!positive_finite(g)) {
    throw InvalidArgument("shape parameter at coordinate " + std::to_string(l) + " underflows to zero");
  }
  return g;
}

std::vector<double> ShapeSequence::gammas(std::size_t d) const {
  std::vector<double> out;
  out.reserve(d);
  for (std::size_t l = 1; l <= d; ++l) out.push_back(gamma(l));
  return out;
}

std::optional<std::size_t> ShapeSequence::intrinsic_dimension() const {
  if (const auto* e = std::get_if<Explicit>(&kind_)) return e->gammas.size();
  return std::nullopt;
}

void ShapeSequence::require_dimension(std::size_t d) const {
  if (d == 0) throw InvalidArgument("dimension must be positive");
  if (auto dim = intrinsic_dimension(); dim && d > *dim) {
    throw InvalidArgument("explicit shape has " + std::to_string(*dim) + " coordinates, d = " +
                          std::to_string(d) + " requested");
  }
}

bool ShapeSequence::is_isotropic() const {
  return std::visit(
      [](const auto& k) -> bool {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Isotropic>) {
          return true;
        } else if constexpr (std::is_same_v<K, PowerLaw>) {
          return k.exponent == 0.0;
        } else if constexpr (std::is_same_v<K, Geometric>) {
          return false;
        } else {
          for (double g : k.gammas) {
            if (g != k.gammas.front()) return false;
          }
          return true;
        }
      },
      kind_);
}

std::string ShapeSequence::to_string() const {
  return std::visit(
      [](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Isotropic>) {
          return "iso:" + format_number(k.gamma);
        } else if constexpr (std::is_same_v<K, PowerLaw>) {
          return "powerlaw:" + format_number(k.scale) + ":" + format_number(k.exponent);
        } else if constexpr (std::is_same_v<K, Geometric>) {
          return "geom:" + format_number(k.base);
        } else {
          std::string s = "explicit:";
          for (std::size_t i = 0; i < k.gammas.size(); ++i) {
            if (i) s += ',';
            s += format_number(k.gammas[i]);
          }
          return s;
        }
      },
      kind_);
}

ShapeSequence ShapeSequence::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InvalidArgument("shape '" + text + "' lacks a kind prefix");
  const std::string_view kind = std::string_view(text).substr(0, colon);
  const std::string_view rest = std::string_view(text).substr(colon + 1);
  if (kind == "iso") return isotropic(parse_number(rest, text));
  if (kind == "geom") return geometric(parse_number(rest, text));
  if (kind == "powerlaw") {
    const auto parts = split(rest, ':');
    if (parts.size() != 2) throw InvalidArgument("powerlaw shape needs powerlaw:<c>:<alpha>");
    return power_law(parse_number(parts[0], text), parse_number(parts[1], text));
  }
  if (kind == "explicit") {
    std::vector<double> gammas;
    for (auto part : split(rest, ',')) gammas.push_back(parse_number(part, text));
    return explicit_list(std::move(gammas));
  }
  throw InvalidArgument("unknown shape kind '" + std::string(kind) + "'");
}

}  // namespace grkhs
