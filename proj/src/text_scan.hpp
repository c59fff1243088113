#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>

#include "debias/errors.hpp"
#include "debias/numerics.hpp"

namespace debias::detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

inline double parse_real(std::string_view token, std::size_t line) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw ParseError(fmt::format("invalid number '{}'", token), line);
  if (!std::isfinite(value))
    throw ParseError(fmt::format("non-finite value '{}'", token), line);
  return value;
}

inline Index parse_count(std::string_view token, std::size_t line) {
  long long value = -1;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || value < 0)
    throw ParseError(fmt::format("invalid count '{}'", token), line);
  return static_cast<Index>(value);
}

inline bool blank(std::string_view line) {
  for (char c : line)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

/// Yields the non-blank lines of a stream as token lists, tracking line numbers.
class LineScanner {
 public:
  explicit LineScanner(std::istream& in) : in_(in) {}

  /// False at end of input.
  bool next(std::vector<std::string_view>& tokens) {
    while (std::getline(in_, text_)) {
      ++line_;
      if (blank(text_)) continue;
      tokens = split_ws(text_);
      return true;
    }
    return false;
  }

  /// Next line, which must have exactly `count` reals.
  std::vector<double> reals(std::size_t count, std::string_view what) {
    std::vector<std::string_view> tokens;
    if (!next(tokens))
      throw ParseError(fmt::format("unexpected end of input, expected {}", what), line_);
    if (tokens.size() != count)
      throw ParseError(fmt::format("{}: expected {} entries, found {}", what, count, tokens.size()),
                       line_);
    std::vector<double> out;
    out.reserve(count);
    for (auto t : tokens) out.push_back(parse_real(t, line_));
    return out;
  }

  void expect_end() {
    std::vector<std::string_view> tokens;
    if (next(tokens)) throw ParseError("trailing data", line_);
  }

  std::size_t line() const noexcept { return line_; }

 private:
  std::istream& in_;
  std::string text_;
  std::size_t line_ = 0;
};

}  // namespace debias::detail
