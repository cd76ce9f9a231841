#pragma once

#include <charconv>
#include <string>

namespace simplex_margin::detail {

// Shortest round-trip decimal form; deterministic across runs.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace simplex_margin::detail
