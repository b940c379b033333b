#include "grkhs/limits.hpp"

#include <charconv>
#include <cstdlib>
#include <string_view>

namespace grkhs {

std::uint64_t max_eigs() {
  const char* env = std::getenv("GRKHS_MAX_EIGS");
  if (env == nullptr) return kDefaultMaxEigs;
  const std::string_view text(env);
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value == 0) return kDefaultMaxEigs;
  return value;
}

std::string_view version() { return GRKHS_VERSION_STRING; }

}  // namespace grkhs
