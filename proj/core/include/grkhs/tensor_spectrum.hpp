#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "grkhs/shape.hpp"
#include "grkhs/spectrum.hpp"

namespace grkhs {

/// Index (j_1, ..., j_d) of a product eigenfunction, j_l >= 1. Only the
/// coordinates with j_l > 1 are stored, sorted by coordinate, so very large d
/// costs nothing for indices close to (1, ..., 1). Coordinates are 0-based.
class MultiIndex {
 public:
  struct Entry {
    std::uint32_t coordinate;
    std::uint32_t value;  // >= 2
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  MultiIndex() = default;
  static MultiIndex from_dense(const std::vector<std::size_t>& dense);

  /// j at 0-based coordinate l.
  std::size_t operator[](std::size_t l) const;
  void set(std::size_t l, std::size_t value);

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  std::vector<std::size_t> dense(std::size_t d) const;
  /// Sum of (j_l - 1).
  std::size_t total_degree() const;

  /// "(j_1,...,j_d)".
  std::string to_string(std::size_t d) const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

  /// Tie-break order among equal eigenvalues: at the first coordinate where two
  /// indices differ, the larger entry comes first. Returns true when `a` is
  /// listed before `b`.
  static bool precedes(const MultiIndex& a, const MultiIndex& b);

  std::size_t hash() const noexcept;

 private:
  std::vector<Entry> entries_;
};

struct MultiIndexHash {
  std::size_t operator()(const MultiIndex& m) const noexcept { return m.hash(); }
};

struct TensorEigenvalue {
  /// log of prod_l lambda_{j_l}(gamma_l); always finite.
  double log_value;
  /// exp(log_value); underflows to zero for very large d.
  double value;
  MultiIndex index;
};

/// Largest product eigenvalues of W_d, descending, ties in MultiIndex::precedes
/// order.
struct TensorEigenList {
  std::size_t dimension = 0;
  std::vector<TensorEigenvalue> entries;
};

/// Commensurability search runs only up to this many distinct omegas (it is
/// quadratic); larger spectra treat every group as its own class.
inline constexpr std::size_t kMaxCommensurableGroups = 512;
/// Largest denominator tried for a log(omega) ratio.
inline constexpr std::uint64_t kMaxRatioDenominator = 12;

/// Per-coordinate spectra of a shape rule at fixed d, with the canonical
/// log-value computation shared by enumeration and counting.
class TensorSpectrum {
 public:
  TensorSpectrum(const ShapeSequence& shape, std::size_t d);

  std::size_t dimension() const noexcept { return spectra_.size(); }
  const UnivariateSpectrum& coordinate(std::size_t l) const { return spectra_.at(l); }

  /// sum_l log(1 - omega_l): log of the largest eigenvalue.
  double log_top() const noexcept { return log_top_; }

  /// log of the eigenvalue at `index`. Exponents are summed as integers per
  /// commensurability class before one multiplication by the class unit, so
  /// mathematically equal products get bit-identical values: permutations
  /// within an isotropic block, and cross-coordinate coincidences such as
  /// omega(1)^3 == omega(1/4).
  double log_eigenvalue(const MultiIndex& index) const;

  /// log(omega) of group g as used by log_eigenvalue (integer weight times
  /// class unit; equals log(omega_g) up to rounding).
  double group_log_omega(std::size_t g) const { return static_cast<double>(group_weight_.at(g)) * class_unit_.at(group_class_.at(g)); }

  /// Coordinates ordered by omega descending (stable in l).
  const std::vector<std::uint32_t>& order() const noexcept { return order_; }

  /// Distinct omegas, descending, with their multiplicities.
  const std::vector<std::pair<double, std::size_t>>& omega_groups() const noexcept { return groups_; }

 private:
  std::vector<UnivariateSpectrum> spectra_;
  std::vector<std::uint32_t> order_;
  std::vector<std::uint32_t> group_of_;  // coordinate -> index into groups_
  std::vector<std::pair<double, std::size_t>> groups_;
  // Groups whose log(omega) are small rational multiples of each other share
  // a class: log(omega_g) = group_weight_[g] * class_unit_[group_class_[g]].
  std::vector<std::uint32_t> group_class_;
  std::vector<std::uint64_t> group_weight_;
  std::vector<double> class_unit_;
  double log_top_ = 0.0;
};

/// Streaming best-first enumeration of product eigenvalues in descending
/// order. A max-heap is seeded with (1, ..., 1); each popped index pushes the
/// indices obtained by incrementing one of its active coordinates, opening the
/// next coordinate (in omega order), or moving a freshly opened coordinate one
/// step further. A visited set removes duplicates.
class TensorEigenEnumerator {
 public:
  TensorEigenEnumerator(const ShapeSequence& shape, std::size_t d,
                        std::uint64_t max_count = 0 /* 0: max_eigs() */);
  ~TensorEigenEnumerator();
  TensorEigenEnumerator(TensorEigenEnumerator&&) noexcept;
  TensorEigenEnumerator& operator=(TensorEigenEnumerator&&) noexcept;

  /// Next eigenvalue. Throws ResourceLimit once max_count values were produced.
  TensorEigenvalue next();

  std::uint64_t produced() const noexcept;
  const TensorSpectrum& spectrum() const noexcept;

 private:
  struct State;
  std::unique_ptr<State> state_;
};

/// The n largest product eigenvalues. Throws ResourceLimit if n exceeds the
/// enumeration guard.
TensorEigenList top_n_tensor_eigenvalues(const ShapeSequence& shape, std::size_t d, std::size_t n);

}  // namespace grkhs
