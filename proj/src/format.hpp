#pragma once

#include <charconv>
#include <string>

namespace qfock::detail {

// Shortest round-trip decimal form.
inline std::string fmt_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string fmt_sci(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 6);
  return std::string(buf, res.ptr);
}

}  // namespace qfock::detail
