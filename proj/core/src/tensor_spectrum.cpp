#include "grkhs/tensor_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <unordered_set>

#include "grkhs/error.hpp"
#include "grkhs/limits.hpp"

namespace grkhs {

// ---------------------------------------------------------------- MultiIndex

MultiIndex MultiIndex::from_dense(const std::vector<std::size_t>& dense) {
  MultiIndex m;
  for (std::size_t l = 0; l < dense.size(); ++l) {
    if (dense[l] == 0) throw InvalidArgument("multi-index entries are 1-based");
    if (dense[l] > 1) m.entries_.push_back({static_cast<std::uint32_t>(l), static_cast<std::uint32_t>(dense[l])});
  }
  return m;
}

std::size_t MultiIndex::operator[](std::size_t l) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), l,
                             [](const Entry& e, std::size_t c) { return e.coordinate < c; });
  return (it != entries_.end() && it->coordinate == l) ? it->value : 1;
}

void MultiIndex::set(std::size_t l, std::size_t value) {
  if (value == 0) throw InvalidArgument("multi-index entries are 1-based");
  auto it = std::lower_bound(entries_.begin(), entries_.end(), l,
                             [](const Entry& e, std::size_t c) { return e.coordinate < c; });
  const bool present = it != entries_.end() && it->coordinate == l;
  if (value == 1) {
    if (present) entries_.erase(it);
  } else if (present) {
    it->value = static_cast<std::uint32_t>(value);
  } else {
    entries_.insert(it, {static_cast<std::uint32_t>(l), static_cast<std::uint32_t>(value)});
  }
}

std::vector<std::size_t> MultiIndex::dense(std::size_t d) const {
  std::vector<std::size_t> out(d, 1);
  for (const auto& e : entries_) {
    if (e.coordinate >= d) throw InvalidArgument("multi-index exceeds requested dimension");
    out[e.coordinate] = e.value;
  }
  return out;
}

std::size_t MultiIndex::total_degree() const {
  std::size_t s = 0;
  for (const auto& e : entries_) s += e.value - 1;
  return s;
}

std::string MultiIndex::to_string(std::size_t d) const {
  std::string s = "(";
  const auto values = dense(d);
  for (std::size_t l = 0; l < values.size(); ++l) {
    if (l) s += ',';
    s += std::to_string(values[l]);
  }
  return s + ")";
}

bool MultiIndex::precedes(const MultiIndex& a, const MultiIndex& b) {
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.entries_.size() && j < b.entries_.size()) {
    const Entry& ea = a.entries_[i];
    const Entry& eb = b.entries_[j];
    if (ea.coordinate == eb.coordinate) {
      if (ea.value != eb.value) return ea.value > eb.value;
      ++i;
      ++j;
    } else {
      // the index holding an entry > 1 at the smaller coordinate is larger there
      return ea.coordinate < eb.coordinate;
    }
  }
  return i < a.entries_.size();
}

std::size_t MultiIndex::hash() const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (const auto& e : entries_) {
    const std::uint64_t v = (static_cast<std::uint64_t>(e.coordinate) << 32) | e.value;
    h ^= std::hash<std::uint64_t>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

// ------------------------------------------------------------ TensorSpectrum

TensorSpectrum::TensorSpectrum(const ShapeSequence& shape, std::size_t d) {
  shape.require_dimension(d);
  if (d > std::numeric_limits<std::uint32_t>::max()) throw InvalidArgument("dimension too large");
  spectra_.reserve(d);
  for (std::size_t l = 1; l <= d; ++l) spectra_.emplace_back(shape.gamma(l));

  order_.resize(d);
  for (std::size_t l = 0; l < d; ++l) order_[l] = static_cast<std::uint32_t>(l);
  std::stable_sort(order_.begin(), order_.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return spectra_[a].omega() > spectra_[b].omega(); });

  group_of_.resize(d);
  std::vector<double> log_omega;
  for (std::uint32_t l : order_) {
    const double om = spectra_[l].omega();
    if (groups_.empty() || groups_.back().first != om) {
      groups_.emplace_back(om, 0);
      log_omega.push_back(spectra_[l].log_omega());
    }
    groups_.back().second += 1;
    group_of_[l] = static_cast<std::uint32_t>(groups_.size() - 1);
  }

  // Classes: the first group of a class is its base; a later group joins when
  // log(omega_g) / log(omega_base) is a / b with b <= kMaxRatioDenominator.
  const std::size_t n_groups = groups_.size();
  group_class_.resize(n_groups);
  std::vector<std::uint64_t> num(n_groups, 1);
  std::vector<std::uint64_t> den(n_groups, 1);
  std::vector<std::size_t> base;  // class -> base group
  for (std::size_t g = 0; g < n_groups; ++g) {
    bool joined = false;
    if (n_groups <= kMaxCommensurableGroups) {
      for (std::size_t c = 0; c < base.size() && !joined; ++c) {
        const double ratio = log_omega[g] / log_omega[base[c]];  // >= 1: omega descending
        if (ratio > 1e6) continue;
        for (std::uint64_t b = 1; b <= kMaxRatioDenominator; ++b) {
          const double scaled = ratio * static_cast<double>(b);
          const double a = std::round(scaled);
          if (a >= 1.0 && std::abs(scaled - a) <= 1e-12 * a) {
            group_class_[g] = static_cast<std::uint32_t>(c);
            num[g] = static_cast<std::uint64_t>(a);
            den[g] = b;
            joined = true;
            break;
          }
        }
      }
    }
    if (!joined) {
      group_class_[g] = static_cast<std::uint32_t>(base.size());
      base.push_back(g);
    }
  }
  std::vector<std::uint64_t> class_den(base.size(), 1);
  for (std::size_t g = 0; g < n_groups; ++g) {
    class_den[group_class_[g]] = std::lcm(class_den[group_class_[g]], den[g]);
  }
  class_unit_.resize(base.size());
  for (std::size_t c = 0; c < base.size(); ++c) {
    class_unit_[c] = log_omega[base[c]] / static_cast<double>(class_den[c]);
  }
  group_weight_.resize(n_groups);
  for (std::size_t g = 0; g < n_groups; ++g) group_weight_[g] = num[g] * (class_den[group_class_[g]] / den[g]);

  // one log(1 - omega) per group, times its multiplicity
  std::size_t offset = 0;
  for (const auto& [om, count] : groups_) {
    log_top_ += static_cast<double>(count) * spectra_[order_[offset]].log_one_minus_omega();
    offset += count;
  }
}

double TensorSpectrum::log_eigenvalue(const MultiIndex& index) const {
  const auto& entries = index.entries();
  if (entries.empty()) return log_top_;
  // (class, weighted exponent) pairs, merged per class
  std::vector<std::pair<std::uint32_t, std::uint64_t>> counts;
  counts.reserve(entries.size());
  for (const auto& e : entries) {
    if (e.coordinate >= spectra_.size()) throw InvalidArgument("multi-index exceeds dimension");
    const std::uint32_t g = group_of_[e.coordinate];
    counts.emplace_back(group_class_[g], (e.value - 1) * group_weight_[g]);
  }
  std::sort(counts.begin(), counts.end());
  double excess = 0.0;
  for (std::size_t i = 0; i < counts.size();) {
    std::uint64_t k = 0;
    const std::uint32_t c = counts[i].first;
    for (; i < counts.size() && counts[i].first == c; ++i) k += counts[i].second;
    excess += static_cast<double>(k) * class_unit_[c];
  }
  return log_top_ + excess;
}

// ---------------------------------------------------------------- enumerator

struct TensorEigenEnumerator::State {
  struct Node {
    double key;
    MultiIndex index;
  };
  struct Later {
    // priority_queue keeps the "largest" on top: larger key, then precedes()
    bool operator()(const Node& a, const Node& b) const {
      if (a.key != b.key) return a.key < b.key;
      return MultiIndex::precedes(b.index, a.index);
    }
  };

  TensorSpectrum spectrum;
  std::vector<std::uint32_t> position;  // coordinate -> rank in omega order
  std::priority_queue<Node, std::vector<Node>, Later> heap;
  std::unordered_set<MultiIndex, MultiIndexHash> visited;
  std::uint64_t produced = 0;
  std::uint64_t max_count;

  State(const ShapeSequence& shape, std::size_t d, std::uint64_t cap) : spectrum(shape, d), max_count(cap) {
    position.resize(d);
    for (std::size_t r = 0; r < d; ++r) position[spectrum.order()[r]] = static_cast<std::uint32_t>(r);
    MultiIndex root;
    visited.insert(root);
    heap.push({spectrum.log_top(), root});
  }

  void offer(MultiIndex child) {
    if (visited.insert(child).second) {
      const double key = spectrum.log_eigenvalue(child);
      heap.push({key, std::move(child)});
    }
  }

  void expand(const MultiIndex& x) {
    const std::size_t d = spectrum.dimension();
    long last = -1;
    for (const auto& e : x.entries()) {
      MultiIndex child = x;
      child.set(e.coordinate, e.value + 1);
      offer(std::move(child));
      last = std::max(last, static_cast<long>(position[e.coordinate]));
    }
    const auto next = static_cast<std::size_t>(last + 1);
    if (next < d) {
      const std::uint32_t fresh = spectrum.order()[next];
      MultiIndex opened = x;
      opened.set(fresh, 2);
      offer(std::move(opened));
      if (last >= 0) {
        const std::uint32_t tail = spectrum.order()[static_cast<std::size_t>(last)];
        if (x[tail] == 2) {
          MultiIndex moved = x;
          moved.set(tail, 1);
          moved.set(fresh, 2);
          offer(std::move(moved));
        }
      }
    }
  }
};

TensorEigenEnumerator::TensorEigenEnumerator(const ShapeSequence& shape, std::size_t d, std::uint64_t max_count)
    : state_(std::make_unique<State>(shape, d, max_count == 0 ? max_eigs() : max_count)) {}

TensorEigenEnumerator::~TensorEigenEnumerator() = default;
TensorEigenEnumerator::TensorEigenEnumerator(TensorEigenEnumerator&&) noexcept = default;
TensorEigenEnumerator& TensorEigenEnumerator::operator=(TensorEigenEnumerator&&) noexcept = default;

TensorEigenvalue TensorEigenEnumerator::next() {
  State& s = *state_;
  if (s.produced >= s.max_count) {
    throw ResourceLimit("tensor eigenvalue enumeration guard of " + std::to_string(s.max_count) + " reached",
                        s.produced);
  }
  State::Node top = s.heap.top();
  s.heap.pop();
  s.expand(top.index);
  ++s.produced;
  return TensorEigenvalue{top.key, std::exp(top.key), std::move(top.index)};
}

std::uint64_t TensorEigenEnumerator::produced() const noexcept { return state_->produced; }
const TensorSpectrum& TensorEigenEnumerator::spectrum() const noexcept { return state_->spectrum; }

TensorEigenList top_n_tensor_eigenvalues(const ShapeSequence& shape, std::size_t d, std::size_t n) {
  if (n == 0) throw InvalidArgument("top_n_tensor_eigenvalues: n must be positive");
  const std::uint64_t guard = max_eigs();
  if (n > guard) {
    throw ResourceLimit("requested " + std::to_string(n) + " tensor eigenvalues, guard is " +
                        std::to_string(guard));
  }
  TensorEigenEnumerator e(shape, d, guard);
  TensorEigenList list;
  list.dimension = d;
  list.entries.reserve(n);
  for (std::size_t i = 0; i < n; ++i) list.entries.push_back(e.next());
  return list;
}

}  // namespace grkhs
