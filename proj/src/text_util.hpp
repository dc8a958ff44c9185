#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace selpref::detail {

inline bool is_space(char ch) {
  return ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n' || ch == '\f' || ch == '\v';
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

inline bool has_space(std::string_view s) {
  for (char ch : s)
    if (is_space(ch)) return true;
  return false;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

// Reads the data lines of a `#`-commented, blank-tolerant line format.
// The callback receives (1-based line number, line without trailing '\r').
template <class Fn>
void for_each_record(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view(line);
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    auto t = trim(view);
    if (t.empty() || t.front() == '#') continue;
    fn(lineno, view);
  }
}

}  // namespace selpref::detail
