#pragma once

#include <cstdint>
#include <string_view>

namespace grkhs {

inline constexpr std::uint64_t kDefaultMaxEigs = 10'000'000;

/// Work budget for the combinatorial eigenvalue counter (recursion nodes, not
/// counted eigenvalues; the counter needs no per-eigenvalue memory).
inline constexpr std::uint64_t kDefaultCountWork = 2'000'000'000;

/// Maximum number of tensor eigenvalues a single enumeration may produce.
/// Reads GRKHS_MAX_EIGS once per call; falls back to kDefaultMaxEigs when the
/// variable is unset or unparsable.
std::uint64_t max_eigs();

/// Library version string, embedded in every CLI artifact.
std::string_view version();

}  // namespace grkhs
