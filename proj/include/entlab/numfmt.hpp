#pragma once

#include <charconv>
#include <string>

namespace entlab {

// Locale-independent float formatting. CSV output pins 17 significant digits;
// scalar CLI output uses the shortest round-trip representation.
inline std::string format_sig17(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline std::string format_shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace entlab
