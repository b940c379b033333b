#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace grkhs {

/// Rule producing the shape parameters gamma_1, gamma_2, ... of the
/// (an)isotropic Gaussian kernel. Stored as a closed-form rule rather than an
/// array so one rule serves every dimension of a sweep.
class ShapeSequence {
 public:
  struct Isotropic {
    double gamma;
    friend bool operator==(const Isotropic&, const Isotropic&) = default;
  };
  /// gamma_l = scale * l^(-exponent)
  struct PowerLaw {
    double scale;
    double exponent;
    friend bool operator==(const PowerLaw&, const PowerLaw&) = default;
  };
  /// gamma_l = base^l
  struct Geometric {
    double base;
    friend bool operator==(const Geometric&, const Geometric&) = default;
  };
  struct Explicit {
    std::vector<double> gammas;
    friend bool operator==(const Explicit&, const Explicit&) = default;
  };
  using Kind = std::variant<Isotropic, PowerLaw, Geometric, Explicit>;

  static ShapeSequence isotropic(double gamma);
  static ShapeSequence power_law(double scale, double exponent);
  static ShapeSequence geometric(double base);
  static ShapeSequence explicit_list(std::vector<double> gammas);

  /// gamma(l) for 1-based coordinate l. Throws InvalidArgument for l == 0 or
  /// for l beyond the end of an explicit list.
  double gamma(std::size_t l) const;

  /// First d shape parameters, coordinate l at position l-1.
  std::vector<double> gammas(std::size_t d) const;

  /// Dimension fixed by the rule itself (explicit lists only).
  std::optional<std::size_t> intrinsic_dimension() const;

  /// Throws InvalidArgument unless gamma(l) is defined for all l <= d.
  void require_dimension(std::size_t d) const;

  /// True when gamma_l is the same for every l.
  bool is_isotropic() const;

  const Kind& kind() const noexcept { return kind_; }

  /// Canonical mini-grammar: iso:<g>, powerlaw:<c>:<a>, geom:<q>,
  /// explicit:<g1,g2,...>.
  std::string to_string() const;

  /// Inverse of to_string(). Throws InvalidArgument on malformed text.
  static ShapeSequence parse(const std::string& text);

  friend bool operator==(const ShapeSequence&, const ShapeSequence&) = default;

 private:
  explicit ShapeSequence(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

}  // namespace grkhs
