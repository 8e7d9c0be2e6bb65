#pragma once

#include <charconv>
#include <cstdint>
#include <ostream>
#include <string>

namespace maxte {

// Shortest representation that round-trips through double.
inline std::string fmt(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

inline std::string fmt(int v) { return std::to_string(v); }
inline std::string fmt(long v) { return std::to_string(v); }
inline std::string fmt(unsigned v) { return std::to_string(v); }
inline std::string fmt(unsigned long v) { return std::to_string(v); }
inline std::string fmt(unsigned long long v) { return std::to_string(v); }
inline const std::string& fmt(const std::string& v) { return v; }

namespace detail {
inline void put_row(std::ostream&) {}
}  // namespace detail

// csv_row(os, a, b, c) writes "a,b,c\n" with round-trip float formatting.
template <typename T, typename... Rest>
void csv_row(std::ostream& os, const T& first, const Rest&... rest) {
  os << fmt(first);
  ((os << ',' << fmt(rest)), ...);
  os << '\n';
}

}  // namespace maxte
